#include "prophecke/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "prophecke/parabolic.hpp"

namespace prophecke {

using nlohmann::json;

namespace {

// ------------------------------------------------------------------ plumbing

struct Params {
  int L, h, r;
  std::uint64_t seed;
  int samples;
};

// Outcome of one chunk of an instance; chunks of the same instance merge.
struct Tally {
  long long checked = 0;
  Verdict verdict = Verdict::kPass;
  std::string witness, detail;
  std::pair<int, int> dims{0, 0};  // module dimension range, when the chunk generates modules
  int generated = 0;

  // Records one check; keeps the first failure.
  bool check(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (!ok && verdict != Verdict::kFail) {
      verdict = Verdict::kFail;
      witness = what();
    }
    return ok;
  }
  void inconclusive(const std::string& why) {
    ++checked;
    if (verdict == Verdict::kPass) {
      verdict = Verdict::kInconclusive;
      witness = why;
    }
  }
  void note(const std::string& d) {
    if (!detail.empty()) detail += "; ";
    detail += d;
  }
};

struct Task {
  std::string instance;
  int chunk = 0;
  std::function<Tally()> run;
};

using TaskList = std::vector<Task>;

std::uint64_t fnv(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

std::mt19937_64 rng_for(const Params& p, const std::string& suite, const std::string& instance, int chunk = 0) {
  std::uint64_t h = fnv(suite + "/" + instance + "/" + std::to_string(chunk), p.seed * 0x9e3779b97f4a7c15ULL + 7);
  return std::mt19937_64(h);
}

int sev(Verdict v) { return v == Verdict::kFail ? 2 : v == Verdict::kInconclusive ? 1 : 0; }

std::string pad(long long i, int w = 3) {
  std::string s = std::to_string(i);
  return std::string(s.size() < static_cast<std::size_t>(w) ? w - s.size() : 0, '0') + s;
}

std::string set_name(const std::vector<int>& J) {
  std::string s = "{";
  for (std::size_t k = 0; k < J.size(); ++k) s += (k ? "," : "") + std::to_string(J[k] + 1);
  return s + "}";
}

std::string word_name(const RootSystem& R, int w) {
  if (w == 0) return "e";
  std::string s;
  for (int i : R.element(w).word) s += "s" + std::to_string(i + 1);
  return s;
}

std::vector<std::vector<int>> all_subsets(int r) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << r); ++mask) {
    std::vector<int> J;
    for (int i = 0; i < r; ++i)
      if (mask >> i & 1) J.push_back(i);
    out.push_back(J);
  }
  return out;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> delta(const RootSystem& R) {
  std::vector<int> d;
  for (int i = 0; i < R.rank_ss(); ++i) d.push_back(i);
  return d;
}

// Lambda(1) elements of length <= L whose invariant coordinates lie in [-r, r].
std::vector<W1> lambdas_by_length(const ProPWeyl& W, int L, int r, bool with_zk) {
  const RootSystem& R = W.rs();
  const int ninv = static_cast<int>(R.invariant_characters().size());
  std::vector<W1> out;
  for (const W1& lam : W.lambdas_up_to_height(L + static_cast<long long>(r) * ninv, with_zk)) {
    if (W.length(lam) > L) continue;
    bool inside = true;
    for (const Vec& chi : R.invariant_characters())
      if (std::abs(pairing(lam.mu, chi, W.n())) > r) inside = false;
    if (inside) out.push_back(lam);
  }
  return out;
}

std::vector<HeckeElement> algebra_generators(const HeckeAlgebra& H) { return FinHModule::generators(H); }

bool same_on_seeds(const FinAModule& a, const FinAModule& b) {
  for (const W1& lam : a.seeds())
    if (!(a.action(lam) == b.action(lam))) return false;
  return true;
}

bool equivariant(const FinHModule& a, const FinHModule& b, const Mat& E) {
  const Field& F = a.F();
  for (std::size_t g = 0; g < a.generator_matrices().size(); ++g)
    if (!(mat_mul(F, a.generator_matrices()[g], E) == mat_mul(F, E, b.generator_matrices()[g]))) return false;
  return true;
}

Mat random_invertible(const Field& F, int n, std::mt19937_64& rng) {
  for (;;) {
    Mat P(n, n);
    for (auto& x : P.a) x = static_cast<Fe>(rng() % F.order());
    if (inverse(F, P)) return P;
  }
}

FinHModule conjugate(const FinHModule& m, const Mat& P) {
  const Field& F = m.F();
  Mat Pi = *inverse(F, P);
  std::vector<Mat> g;
  for (const Mat& x : m.generator_matrices()) g.push_back(mat_mul(F, mat_mul(F, P, x), Pi));
  return FinHModule(m.H_ptr(), m.dim(), std::move(g));
}

// Modules with support Lambda^+(1): config modules supported there, the
// character E(lambda) -> 1, and seeded random ones.
struct CorpusModule {
  std::string name;
  FinAModule module;
};

LatticeRep trivial_rep(const ProPWeyl& W, int dim) {
  return LatticeRep{dim, std::vector<Mat>(W.n(), Mat::identity(dim)),
                    std::vector<Mat>(W.zk().generators().size(), Mat::identity(dim))};
}

std::vector<CorpusModule> corpus(const Context& ctx, const Params& p, int max_dim, int per_dim, int psi = -1) {
  const AlgebraSetup& s = ctx.s;
  std::vector<CorpusModule> out;
  for (const auto& m : ctx.a_modules)
    if (m.chamber == 0 && m.module.dim() <= max_dim) out.push_back({"config:" + m.name, m.module});
  if (psi <= 0) out.push_back({"chi", module_from_lattice_rep(s.W, s.F, 0, trivial_rep(*s.W, 1))});
  std::mt19937_64 rng(fnv("corpus", p.seed));
  for (int d = 1; d <= max_dim; ++d)
    for (int k = 0; k < per_dim; ++k)
      out.push_back({"random-d" + std::to_string(d) + "-" + std::to_string(k),
                     module_from_lattice_rep(s.W, s.F, 0, random_lattice_rep(*s.W, *s.F, d, rng, psi))});
  return out;
}

// M = M_omega for the orbit of psi.
bool in_omega(const FinAModule& m, int psi) {
  try {
    auto pieces = isotypic(m);
    for (const auto& piece : pieces)
      if (piece.basis.rows > 0 && std::find(piece.orbit.begin(), piece.orbit.end(), psi) == piece.orbit.end()) return false;
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

GroupElt random_series(const UniversalModule& U, std::mt19937_64& rng, int terms, int height) {
  const ProPWeyl& W = U.H().W();
  auto lams = W.lambdas_up_to_height(height, true);
  GroupElt f;
  for (int k = 0; k < terms; ++k)
    f.add_term(U.H().F(), lams[rng() % lams.size()], static_cast<Fe>(1 + rng() % (U.H().F().order() - 1)));
  return U.omega().project(f);
}

XElement random_in_xj(const UniversalModule& U, const std::vector<int>& J, std::mt19937_64& rng) {
  XElement x = U.zero();
  for (const XElement& g : U.free_generators(J)) x = U.add(x, U.left(random_series(U, rng, 2, 1), g));
  return x;
}

// Splits [0, n) into chunks of at most `size`.
template <class F>
void chunked(TaskList& tl, const std::string& instance, long long n, long long size, F make) {
  int c = 0;
  for (long long lo = 0; lo < n; lo += size, ++c) {
    long long hi = std::min(n, lo + size);
    tl.push_back({instance, c, [=]() { return make(lo, hi, c); }});
  }
  if (n == 0) tl.push_back({instance, 0, [] { return Tally{}; }});
}

// ------------------------------------------------------------------ suites

using Builder = std::function<TaskList(const Context&, const Params&)>;

TaskList suite_assoc(const Context& ctx, const Params& p) {
  const AlgebraSetup& s = ctx.s;
  auto els = std::make_shared<std::vector<W1>>(s.W->elements_up_to_length(p.L, p.r, true));
  const long long N = static_cast<long long>(els->size());
  TaskList tl;
  auto H = s.H;
  const std::string inst = "length<=" + std::to_string(p.L);
  // An explicit sample count forces sampling.
  if (p.samples == 0 && N * N * N <= 20000000LL) {
    // All triples; products T_b T_c are shared.
    auto table = std::make_shared<std::vector<HeckeElement>>(N * N);
    for (long long b = 0; b < N; ++b)
      for (long long c = 0; c < N; ++c) (*table)[b * N + c] = H->mul(H->T((*els)[b]), H->T((*els)[c]));
    chunked(tl, inst + " all-triples", N, 8, [=](long long lo, long long hi, int) {
      Tally t;
      for (long long a = lo; a < hi; ++a)
        for (long long b = 0; b < N; ++b) {
          const HeckeElement& ab = (*table)[a * N + b];
          for (long long c = 0; c < N; ++c) {
            HeckeElement lhs = H->right_mul_basis(ab, (*els)[c]);
            HeckeElement rhs = H->left_mul_basis((*els)[a], (*table)[b * N + c]);
            t.check(lhs == rhs, [&] {
              return "(T[" + H->W().to_string((*els)[a]) + "] T[" + H->W().to_string((*els)[b]) + "]) T[" +
                     H->W().to_string((*els)[c]) + "]";
            });
          }
        }
      return t;
    });
  } else {
    const int n = p.samples ? p.samples : 10000;
    chunked(tl, inst + " random-triples", n, 500, [=](long long lo, long long hi, int c) {
      Tally t;
      auto rng = rng_for(p, "assoc", "random", c);
      for (long long k = lo; k < hi; ++k) {
        const W1 &a = (*els)[rng() % N], &b = (*els)[rng() % N], &cc = (*els)[rng() % N];
        HeckeElement lhs = H->right_mul_basis(H->left_mul_basis(a, H->T(b)), cc);
        HeckeElement rhs = H->left_mul_basis(a, H->right_mul_basis(H->T(b), cc));
        t.check(lhs == rhs, [&] {
          return "(T[" + H->W().to_string(a) + "] T[" + H->W().to_string(b) + "]) T[" + H->W().to_string(cc) + "]";
        });
      }
      return t;
    });
  }
  return tl;
}

TaskList suite_star_braid(const Context& ctx, const Params& p) {
  auto H = ctx.s.H;
  const ProPWeyl& W = H->W();
  auto els = std::make_shared<std::vector<W1>>(W.elements_up_to_length(p.L, p.r, true));
  TaskList tl;
  tl.push_back({"quadratic", 0, [H] {
                  Tally t;
                  const ProPWeyl& W = H->W();
                  for (int s = 0; s < W.num_affine_simple(); ++s) {
                    HeckeElement x = H->T(W.affine_lift(s));
                    t.check(H->mul(x, x) == H->mul(H->c_s(s), x), [&] { return "T[" + W.affine_name(s) + "]^2"; });
                  }
                  return t;
                }});
  chunked(tl, "braid length<=" + std::to_string(p.L), static_cast<long long>(els->size()), 64,
          [H, els](long long lo, long long hi, int) {
            Tally t;
            const ProPWeyl& W = H->W();
            for (long long k = lo; k < hi; ++k) {
              const W1& x = (*els)[k];
              ProPWeyl::Peeled pe = W.peel(x);
              HeckeElement prod = H->T(pe.u);
              for (auto it = pe.word.rbegin(); it != pe.word.rend(); ++it) prod = H->mul(H->T(W.affine_lift(*it)), prod);
              t.check(prod == H->T(x), [&] { return "left word of " + W.to_string(x); });
              // Right descents give a second reduced expression.
              W1 y = x;
              std::vector<int> rword;
              while (W.length(y) > 0) {
                int found = -1;
                for (int s = 0; s < W.num_affine_simple() && found < 0; ++s)
                  if (W.length(W.mul(y, W.affine_lift_inv(s))) < W.length(y)) found = s;
                rword.push_back(found);
                y = W.mul(y, W.affine_lift_inv(found));
              }
              HeckeElement right = H->T(y);
              for (auto it = rword.rbegin(); it != rword.rend(); ++it) right = H->mul(right, H->T(W.affine_lift(*it)));
              t.check(right == H->T(x), [&] { return "right word of " + W.to_string(x); });
            }
            return t;
          });
  chunked(tl, "star length<=" + std::to_string(p.L), static_cast<long long>(els->size()), 16,
          [H, els](long long lo, long long hi, int) {
            Tally t;
            const ProPWeyl& W = H->W();
            for (long long k = lo; k < hi; ++k) {
              const W1& a = (*els)[k];
              HeckeElement sa = H->t_star(a);
              bool tri = sa.coeff(a) == 1;
              for (const auto& [v, c] : sa.terms())
                if (!(v == a) && !W.bruhat_lt(v, a)) tri = false;
              t.check(tri, [&] { return "T*[" + W.to_string(a) + "] not unitriangular"; });
              for (const W1& b : *els) {
                W1 ab = W.mul(a, b);
                if (W.length(ab) != W.length(a) + W.length(b)) continue;
                t.check(H->mul(sa, H->t_star(b)) == H->t_star(ab),
                        [&] { return "T*[" + W.to_string(a) + "] T*[" + W.to_string(b) + "]"; });
              }
            }
            return t;
          });
  return tl;
}

TaskList suite_e_basis(const Context& ctx, const Params& p) {
  auto H = ctx.s.H;
  auto lams = std::make_shared<std::vector<W1>>(lambdas_by_length(H->W(), p.L, p.r, true));
  TaskList tl;
  chunked(tl, "length<=" + std::to_string(p.L), static_cast<long long>(lams->size()), 16,
          [H, lams](long long lo, long long hi, int) {
            Tally t;
            const ProPWeyl& W = H->W();
            const RootSystem& R = W.rs();
            const int wd = R.longest();
            for (long long k = lo; k < hi; ++k) {
              const W1& lam = (*lams)[k];
              HeckeElement e = H->e_of(lam);
              bool tri = e.coeff(lam) == 1;
              for (const auto& [v, c] : e.terms())
                if (!(v == lam) && !W.bruhat_lt(v, lam)) tri = false;
              t.check(tri, [&] { return "E[" + W.to_string(lam) + "] not triangular"; });
              if (R.in_chamber(wd, lam.mu))
                t.check(e == H->T(lam), [&] { return "E[" + W.to_string(lam) + "] != T on the anti-dominant chamber"; });
              if (R.is_dominant(lam.mu))
                t.check(e == H->t_star(lam), [&] { return "E[" + W.to_string(lam) + "] != T* on the dominant chamber"; });
              for (const W1& a : *lams) {
                W1 b = W.mul(W.inv(a), lam);
                if (!R.in_chamber(wd, a.mu) || !R.is_dominant(b.mu)) continue;
                if (W.length(lam) != W.length(a) + W.length(b)) continue;
                t.check(H->e_by_decomposition(a, b) == e,
                        [&] { return "E[" + W.to_string(lam) + "] via " + W.to_string(a) + " * " + W.to_string(b); });
              }
            }
            return t;
          });
  return tl;
}

TaskList suite_a_product(const Context& ctx, const Params& p) {
  auto H = ctx.s.H;
  auto lams = std::make_shared<std::vector<W1>>(lambdas_by_length(H->W(), p.L, p.r, true));
  auto es = std::make_shared<std::vector<HeckeElement>>();
  for (const W1& l : *lams) es->push_back(H->e_of(l));
  TaskList tl;
  chunked(tl, "a_mul length<=" + std::to_string(p.L), static_cast<long long>(lams->size()), 8,
          [H, lams, es](long long lo, long long hi, int) {
            Tally t;
            const ProPWeyl& W = H->W();
            for (long long i = lo; i < hi; ++i)
              for (std::size_t j = 0; j < lams->size(); ++j) {
                const W1 &a = (*lams)[i], &b = (*lams)[j];
                AElement prod = H->a_mul(AElement::basis(a), AElement::basis(b));
                HeckeElement direct = H->mul((*es)[i], (*es)[j]);
                t.check(H->a_to_h(prod) == direct, [&] { return "E[" + W.to_string(a) + "] E[" + W.to_string(b) + "]"; });
                // Closed-chamber rule.
                W1 ab = W.mul(a, b);
                bool same = H->same_closed_chamber(a.mu, b.mu);
                t.check(same ? prod == AElement::basis(ab) : prod.is_zero(),
                        [&] { return "chamber rule for " + W.to_string(a) + ", " + W.to_string(b); });
              }
            return t;
          });
  return tl;
}

TaskList suite_center(const Context& ctx, const Params& p) {
  auto H = ctx.s.H;
  auto lams = std::make_shared<std::vector<W1>>(H->W().lambdas_up_to_height(p.h, false));
  TaskList tl;
  chunked(tl, "nu-height<=" + std::to_string(p.h), static_cast<long long>(lams->size()), 4,
          [H, lams](long long lo, long long hi, int) {
            Tally t;
            auto gens = algebra_generators(*H);
            for (long long k = lo; k < hi; ++k) {
              HeckeElement z = H->z_of((*lams)[k]);
              for (const HeckeElement& g : gens)
                t.check(H->mul(z, g) == H->mul(g, z),
                        [&] { return "z[" + H->W().to_string((*lams)[k]) + "] against " + H->to_string(g); });
            }
            return t;
          });
  return tl;
}

TaskList suite_center_mult(const Context& ctx, const Params& p) {
  auto H = ctx.s.H;
  auto lams = std::make_shared<std::vector<W1>>(H->W().lambdas_up_to_height(p.h, false));
  TaskList tl;
  chunked(tl, "nu-height<=" + std::to_string(p.h), static_cast<long long>(lams->size()), 4,
          [H, lams](long long lo, long long hi, int) {
            Tally t;
            const ProPWeyl& W = H->W();
            for (long long i = lo; i < hi; ++i) {
              const W1& a = (*lams)[i];
              if (!W.rs().is_regular(a.mu)) continue;
              HeckeElement za = H->z_of(a);
              for (const W1& b : *lams) {
                if (!H->same_closed_chamber(a.mu, b.mu)) continue;
                t.check(H->mul(za, H->z_of(b)) == H->z_of(W.mul(a, b)),
                        [&] { return "z[" + W.to_string(a) + "] z[" + W.to_string(b) + "]"; });
              }
            }
            return t;
          });
  return tl;
}

// Random H-module in C of the given dimension: an induced module M (x)_A H
// when it fits, padded with characters in C, in a random basis.
FinHModule random_c_module(const AlgebraSetup& s, const std::vector<FinHModule>& chars, int dim, std::mt19937_64& rng) {
  const int n = s.rs->order();
  std::optional<FinHModule> m;
  int rest = dim;
  if (n <= dim && rng() % 3 != 0) {
    int d = 1 + static_cast<int>(rng() % (dim / n));
    int v = static_cast<int>(rng() % n);
    m = tensor_h(module_from_lattice_rep(s.W, s.F, v, random_lattice_rep(*s.W, *s.F, d, rng)), v, s.H).module;
    rest -= n * d;
  }
  for (; rest > 0; --rest) {
    const FinHModule& c = chars[rng() % chars.size()];
    m = m ? direct_sum(*m, c) : c;
  }
  return conjugate(*m, random_invertible(*s.F, m->dim(), rng));
}

Tally check_support_decomposition(const FinHModule& N, std::mt19937_64& rng) {
  Tally t;
  const Field& F = N.F();
  auto comps = decompose_by_support(N);
  int total = 0;
  Mat all(0, N.dim());
  for (const auto& c : comps) {
    total += c.basis.rows;
    all = vstack(all, c.basis);
    if (c.basis.rows) {
      auto w = support_of(c.module);
      t.check(w && *w == c.w, [&] { return "component " + std::to_string(c.w) + " fails the support dichotomy"; });
    }
  }
  t.check(total == N.dim(), [&] { return "component dimensions sum to " + std::to_string(total); });
  t.check(rank(F, all) == N.dim(), [] { return "components are not independent"; });
  for (int trial = 0; trial < 3; ++trial) {
    Mat P = random_endomorphism(N, rng);
    for (const auto& c : comps)
      t.check(rows_in_span(F, c.basis, mat_mul(F, c.basis, P)),
              [&] { return "component " + std::to_string(c.w) + " not preserved by an endomorphism"; });
  }
  return t;
}

TaskList suite_support_decomp(const Context& ctx, const Params& p) {
  const AlgebraSetup s = ctx.s;
  TaskList tl;
  const int n = p.samples ? p.samples : 50;
  auto chars = std::make_shared<std::vector<FinHModule>>();
  for (const FinHModule& c : characters(s.H))
    if (in_category_c(c)) chars->push_back(c);
  chunked(tl, "seeded modules in C", n, 5, [=](long long lo, long long hi, int c) {
    Tally t;
    auto rng = rng_for(p, "support-decomp", "seeded", c);
    int lo_dim = 1 << 30, hi_dim = 0;
    for (long long k = lo; k < hi; ++k) {
      FinHModule N = random_c_module(s, *chars, 1 + static_cast<int>(k % 6), rng);
      lo_dim = std::min(lo_dim, N.dim());
      hi_dim = std::max(hi_dim, N.dim());
      if (!t.check(in_category_c(N), [&] { return "generated module " + std::to_string(k) + " not in C"; })) continue;
      Tally r = check_support_decomposition(N, rng);
      t.checked += r.checked;
      if (r.verdict == Verdict::kFail && t.verdict != Verdict::kFail) {
        t.verdict = Verdict::kFail;
        t.witness = "module " + std::to_string(k) + ": " + r.witness;
      }
    }
    t.dims = {lo_dim, hi_dim};
    t.generated = static_cast<int>(hi - lo);
    return t;
  });
  for (const auto& hm : ctx.h_modules) {
    FinHModule N = hm.module;
    tl.push_back({"config:" + hm.name, 0, [=] {
                    auto rng = rng_for(p, "support-decomp", hm.name);
                    if (!in_category_c(N)) {
                      Tally t;
                      bool refused = false;
                      try {
                        decompose_by_support(N);
                      } catch (const std::invalid_argument&) {
                        refused = true;
                      }
                      t.check(refused, [] { return "module outside C was decomposed"; });
                      t.note("outside C, refused");
                      return t;
                    }
                    return check_support_decomposition(N, rng);
                  }});
  }
  return tl;
}

TaskList suite_twist(const Context& ctx, const Params& p) {
  const AlgebraSetup s = ctx.s;
  TaskList tl;
  for (const auto& cm : corpus(ctx, p, 2, 2)) {
    FinAModule m = cm.module;
    tl.push_back({cm.name, 0, [s, m] {
                    Tally t;
                    const RootSystem& R = *s.rs;
                    for (int w = 0; w < R.order(); ++w) {
                      FinAModule tw = twist(m, w);
                      auto v = support_of(tw);
                      t.check(v && *v == w, [&] { return "supp n_w M for w = " + word_name(R, w); });
                    }
                    for (int a = 0; a < R.order(); ++a)
                      for (int b = 0; b < R.order(); ++b) {
                        int ba = R.mul(b, a);
                        if (R.length(ba) != R.length(a) + R.length(b)) continue;
                        t.check(same_on_seeds(twist(twist(m, a), b), twist(m, ba)),
                                [&] { return "n_" + word_name(R, b) + " n_" + word_name(R, a) + " M"; });
                      }
                    // Equal Delta_w give isomorphic induced and coinduced modules.
                    int pairs = 0;
                    for (int a = 0; a < R.order(); ++a)
                      for (int b = a + 1; b < R.order(); ++b) {
                        if (R.delta_w(a) != R.delta_w(b)) continue;
                        ++pairs;
                        FinAModule ma = twist(m, a), mb = twist(m, b);
                        t.check(find_isomorphism(tensor_h(ma, a, s.H).module, tensor_h(mb, b, s.H).module).found,
                                [&] { return "n_w M (x) H for w = " + word_name(R, a) + ", " + word_name(R, b); });
                        t.check(find_isomorphism(hom_from_h(ma, a, s.H), hom_from_h(mb, b, s.H)).found,
                                [&] { return "Hom(H, n_w M) for w = " + word_name(R, a) + ", " + word_name(R, b); });
                      }
                    t.note(std::to_string(pairs) + " pairs with equal Delta_w");
                    return t;
                  }});
  }
  return tl;
}

TaskList suite_isotypic(const Context& ctx, const Params& p) {
  const AlgebraSetup s = ctx.s;
  std::vector<CorpusModule> mods = corpus(ctx, p, 3, 2);
  for (const auto& m : ctx.a_modules)
    if (m.chamber != 0) mods.push_back({"config:" + m.name, m.module});
  for (const auto& hm : ctx.h_modules) mods.push_back({"config:" + hm.name + "|A", restrict_to_a(hm.module)});
  TaskList tl;
  for (const auto& cm : mods) {
    FinAModule m = cm.module;
    tl.push_back({cm.name, 0, [s, m] {
                    Tally t;
                    const Field& F = *s.F;
                    const ZKappa& zk = s.W->zk();
                    std::vector<IsotypicComponent> pieces;
                    try {
                      pieces = isotypic(m);
                    } catch (const std::invalid_argument& e) {
                      t.check(false, [&] { return std::string("Z_kappa action: ") + e.what(); });
                      return t;
                    }
                    int total = 0;
                    for (const auto& pc : pieces) {
                      total += pc.basis.rows;
                      for (const W1& lam : m.seeds())
                        t.check(rows_in_span(F, pc.basis, mat_mul(F, pc.basis, m.action(lam))),
                                [&] { return "piece not stable under E[" + s.W->to_string(lam) + "]"; });
                      // Z_kappa acts on the piece through the characters of its orbit.
                      for (int g : zk.generators()) {
                        const Mat& At = m.action(s.W->from_t(g));
                        std::vector<Fe> vals;
                        for (int psi : pc.orbit) vals.push_back(zk.character(F, psi, g));
                        std::sort(vals.begin(), vals.end());
                        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
                        Mat B = pc.basis;
                        for (Fe v : vals) B = mat_mul(F, B, mat_sub(F, At, mat_scale(F, v, Mat::identity(m.dim()))));
                        t.check(B.is_zero(), [&] { return "Z_kappa eigenvalues outside the orbit"; });
                      }
                    }
                    t.check(total == m.dim(), [&] { return "pieces sum to " + std::to_string(total); });
                    return t;
                  }});
  }
  return tl;
}

TaskList suite_hom_tensor(const Context& ctx, const Params& p) {
  const AlgebraSetup s = ctx.s;
  TaskList tl;
  for (const auto& cm : corpus(ctx, p, 2, 3)) {
    FinAModule m = cm.module;
    tl.push_back({cm.name, 0, [s, m] {
                    Tally t;
                    const int n = s.rs->order();
                    InducedModule ind = tensor_h(m, 0, s.H);
                    t.check(ind.module.dim() == n * m.dim(), [&] { return "dim M (x) H = " + std::to_string(ind.module.dim()); });
                    t.check(rank(*s.F, ind.unit) == m.dim(), [] { return "unit not injective"; });
                    FinHModule hm = hom_from_h(twist(m, s.rs->longest()), s.rs->longest(), s.H);
                    t.check(hm.dim() == n * m.dim(), [&] { return "dim Hom(H, n M) = " + std::to_string(hm.dim()); });
                    IsoResult iso = check_iso_hom_tensor(m, s.H);
                    t.check(iso.found, [&] { return "no invertible intertwiner: " + iso.diagnostic; });
                    if (iso.found) t.check(equivariant(ind.module, hm, iso.P), [] { return "intertwiner not equivariant"; });
                    t.note("intertwiner space dim " + std::to_string(iso.space_dim));
                    return t;
                  }});
  }
  tl.push_back({"characters:hom-embedding", 0, [s] {
                  Tally t;
                  for (const FinHModule& c : characters(s.H)) {
                    if (!in_category_c(c)) continue;
                    FinAModule a = restrict_to_a(c);
                    auto v = support_of(a);
                    if (!t.check(v.has_value(), [] { return "character in C without support"; })) continue;
                    FinHModule h = hom_from_h(a, *v, s.H);
                    Mat E = hom_embedding(c, *v);
                    t.check(rank(*s.F, E) == c.dim() && equivariant(c, h, E), [] { return "M -> Hom(H, M) not an embedding"; });
                  }
                  return t;
                }});
  return tl;
}

TaskList suite_switch(const Context& ctx, const Params& p) {
  const AlgebraSetup s = ctx.s;
  TaskList tl;
  const int L = p.L, h = std::min(p.h, 2);
  for (const auto& cm : corpus(ctx, p, 2, 1)) {
    for (int v : {0, s.rs->longest()}) {
      FinAModule m = v == 0 ? cm.module : twist(cm.module, v);
      tl.push_back({cm.name + " chamber " + word_name(*s.rs, v), 0, [s, m, v, L, h] {
                      Tally t;
                      SwitchResult r = switch_check(m, v, *s.H, L, h);
                      t.check(r.coincide(), [&] {
                        return "A_w-system rank " + std::to_string(r.rank_chamber) + " != A-system rank " +
                               std::to_string(r.rank_full);
                      });
                      if (t.verdict == Verdict::kPass && r.extra_equations == 0)
                        t.inconclusive("no A-equation outside the chamber fits in max_length " + std::to_string(L));
                      t.note(std::to_string(r.unknowns) + " unknowns, " + std::to_string(r.extra_equations) +
                             " extra equations");
                      return t;
                    }});
    }
  }
  return tl;
}

TaskList suite_extend(const Context& ctx, const Params& p) {
  const AlgebraSetup s = ctx.s;
  TaskList tl;
  auto mods = corpus(ctx, p, 2, 1);
  for (const auto& J : all_subsets(s.rs->rank_ss())) {
    tl.push_back({"J=" + set_name(J), 0, [s, J, mods] {
                    Tally t;
                    const RootSystem& R = *s.rs;
                    LeviData ld = levi_algebra(*s.H, J);
                    int wJ = R.longest_element(J);
                    W1 l0 = levi_central_element(*s.W, J, 0);
                    W1 l1 = static_cast<int>(J.size()) < R.rank_ss() ? levi_central_element(*s.W, J, 1)
                                                                     : W1{vec_scale(3, l0.mu), 0, 0};
                    for (const auto& cm : mods) {
                      FinAModule m = twist(cm.module, wJ);
                      FinAModule e0 = extend_to_levi(m, wJ, J, ld.W, l0), e1 = extend_to_levi(m, wJ, J, ld.W, l1);
                      auto d = e0.validate();
                      t.check(!d, [&] { return cm.name + ": extension invalid: " + *d; });
                      t.check(same_on_seeds(e0, e1), [&] { return cm.name + ": two choices of lambda_0 disagree"; });
                      bool agree = true;
                      for (const W1& lam : m.seeds())
                        if (R.in_chamber(wJ, lam.mu) && !(e0.action(lam) == m.action(lam))) agree = false;
                      t.check(agree, [&] { return cm.name + ": extension differs on the chamber"; });
                      if (static_cast<int>(J.size()) == R.rank_ss())
                        t.check(same_on_seeds(e0, m), [&] { return cm.name + ": J = Delta extension differs from M"; });
                    }
                    return t;
                  }});
  }
  return tl;
}

TaskList suite_j_maps(const Context& ctx, const Params& p) {
  const AlgebraSetup s = ctx.s;
  TaskList tl;
  const int h = p.h;
  for (const auto& J : all_subsets(s.rs->rank_ss())) {
    tl.push_back({"J=" + set_name(J), 0, [s, J, h] {
                    Tally t;
                    const RootSystem& R = *s.rs;
                    LeviData ld = levi_algebra(*s.H, J);
                    auto els = ld.W->elements_up_to_length(3, 1, true);
                    for (const W1& a : els)
                      for (const W1& b : els)
                        t.check(ld.to_ambient_elem(ld.W->mul(a, b)) == s.W->mul(ld.to_ambient_elem(a), ld.to_ambient_elem(b)),
                                [&] { return "Levi embedding at " + ld.W->to_string(a) + ", " + ld.W->to_string(b); });
                    const JVariant variants[] = {JVariant::kPlus, JVariant::kPlusStar, JVariant::kMinus, JVariant::kMinusStar};
                    const char* names[] = {"+", "+*", "-", "-*"};
                    for (int vi = 0; vi < 4; ++vi) {
                      JVariant v = variants[vi];
                      const int sign = variant_is_plus(v) ? 1 : -1;
                      std::vector<W1> reg;
                      for (const W1& a : els)
                        if (plus_minus_membership(ld, a, sign)) reg.push_back(a);
                      auto basis = [&](const W1& w) { return variant_is_star(v) ? ld.H->t_star(w) : ld.H->T(w); };
                      for (std::size_t i = 0; i < reg.size(); i += 3)
                        for (std::size_t j = 0; j < reg.size(); j += 3) {
                          HeckeElement x = basis(reg[i]), y = basis(reg[j]);
                          t.check(j_map(ld, *s.H, v, ld.H->mul(x, y)) ==
                                      s.H->mul(j_map(ld, *s.H, v, x), j_map(ld, *s.H, v, y)),
                                  [&] { return std::string("j^") + names[vi] + " not multiplicative at " +
                                               ld.W->to_string(reg[i]) + ", " + ld.W->to_string(reg[j]); });
                        }
                    }
                    const int wJ = R.longest_element(J);
                    for (const W1& lam : s.W->lambdas_up_to_height(h, true)) {
                      if (R.in_chamber(wJ, lam.mu))
                        t.check(j_map(ld, *s.H, JVariant::kMinusStar, ld.H->e_of(lam)) == s.H->e_of(lam),
                                [&] { return "j^-*(E_J) != E at " + s.W->to_string(lam); });
                      if (!J.empty()) continue;
                      // Empty Levi: H_0^+ -> A_{w_Delta} and H_0^- -> A_1 on the basis.
                      const bool anti = R.in_chamber(R.longest(), lam.mu), dom = R.in_chamber(0, lam.mu);
                      t.check(plus_minus_membership(ld, lam, 1) == anti, [&] { return "H_0^+ membership at " + s.W->to_string(lam); });
                      t.check(plus_minus_membership(ld, lam, -1) == dom, [&] { return "H_0^- membership at " + s.W->to_string(lam); });
                      if (anti)
                        t.check(j_map(ld, *s.H, JVariant::kPlus, ld.H->T(lam)) == s.H->e_of(lam),
                                [&] { return "j^+(T) != E at " + s.W->to_string(lam); });
                      if (dom)
                        t.check(j_map(ld, *s.H, JVariant::kMinusStar, ld.H->t_star(lam)) == s.H->e_of(lam),
                                [&] { return "j^-*(T*) != E at " + s.W->to_string(lam); });
                    }
                    return t;
                  }});
  }
  return tl;
}

TaskList suite_levi_localization(const Context& ctx, const Params& p) {
  const AlgebraSetup s = ctx.s;
  TaskList tl;
  const int L = p.L;
  for (const auto& J : all_subsets(s.rs->rank_ss())) {
    tl.push_back({"J=" + set_name(J), 0, [s, J, L] {
                    Tally t;
                    LeviData ld = levi_algebra(*s.H, J);
                    LocalizationCheck lc = levi_localization_check(ld, levi_central_element(*s.W, J), L);
                    t.checked = lc.checked - 1;
                    t.check(lc.ok, [&] { return lc.witness + " never reaches H_J^-"; });
                    t.note("max power " + std::to_string(lc.max_power));
                    return t;
                  }});
  }
  return tl;
}

Tally hypothesis_gate(const UniversalModule& U) {
  Tally t;
  if (auto i = U.hypothesis_violation())
    t.inconclusive("the character is nontrivial on Z_kappa n Lambda'_alpha(1) for alpha_" + std::to_string(*i + 1) +
                   "; tau_alpha is undefined");
  return t;
}

TaskList suite_xj_chain(const Context& ctx, const Params& p) {
  auto U = std::make_shared<UniversalModule>(ctx.s.H, ctx.psi);
  TaskList tl;
  const int h = p.h;
  const RootSystem& R = ctx.s.H->rs();
  for (const auto& J : all_subsets(R.rank_ss())) {
    tl.push_back({"X_J J=" + set_name(J), 0, [U, J, h, p] {
                    Tally t;
                    const RootSystem& R = U->H().rs();
                    auto rng = rng_for(p, "xj-chain", set_name(J));
                    for (const auto& J2 : all_subsets(R.rank_ss())) {
                      const bool expect = subset(J, J2);
                      Membership m = U->member(U->generator(J2), J, h);
                      if (m.verdict == Verdict::kInconclusive) {
                        t.inconclusive("generator of X_" + set_name(J2) + ": " + m.witness);
                        continue;
                      }
                      t.check((m.verdict == Verdict::kPass) == expect, [&] {
                        return "generator of X_" + set_name(J2) + (expect ? " not in " : " certified in ") + "X_" +
                               set_name(J) + (m.witness.empty() ? "" : ": " + m.witness);
                      });
                      if (!expect) continue;
                      XElement x = random_in_xj(*U, J2, rng);
                      Membership mx = U->member(x, J, h);
                      if (mx.verdict == Verdict::kInconclusive) t.inconclusive("random element of X_" + set_name(J2) + ": " + mx.witness);
                      else t.check(mx.verdict == Verdict::kPass, [&] { return "random element of X_" + set_name(J2) + " outside X_" + set_name(J); });
                    }
                    return t;
                  }});
  }
  return tl;
}

TaskList suite_xj_center(const Context& ctx, const Params& p) {
  auto U = std::make_shared<UniversalModule>(ctx.s.H, ctx.psi);
  TaskList tl;
  const int h = p.h;
  for (const auto& J : all_subsets(ctx.s.rs->rank_ss())) {
    tl.push_back({"X_J J=" + set_name(J), 0, [U, J, h] {
                    Tally t;
                    const HeckeAlgebra& H = U->H();
                    const ProPWeyl& W = H.W();
                    const RootSystem& R = W.rs();
                    for (const W1& lam : W.lambdas_up_to_height(h, false)) {
                      if (!R.is_regular(lam.mu) || !R.is_dominant(lam.mu)) continue;
                      HeckeElement z = H.z_of(lam);
                      GroupElt tau = U->omega().tau(lam), tau_inv = U->omega().tau(W.inv(lam));
                      t.check(U->omega().mul(tau, tau_inv) == U->omega().tau(W.identity()),
                              [&] { return "tau not a unit at " + W.to_string(lam); });
                      for (const XElement& g : U->free_generators(J)) {
                        XElement zg = U->act(g, z);
                        t.check(zg == U->left(tau, g), [&] { return "z[" + W.to_string(lam) + "] is not the shift by tau"; });
                        // The inverse shift stays in X_J, so z acts invertibly.
                        t.check(U->act(U->left(tau_inv, g), z) == g, [&] { return "z[" + W.to_string(lam) + "] not inverted"; });
                      }
                    }
                    if (t.checked == 0) t.inconclusive("no regular dominant lambda with nu-height <= " + std::to_string(h));
                    return t;
                  }});
  }
  return tl;
}

TaskList suite_tau_cw(const Context& ctx, const Params&) {
  auto U = std::make_shared<UniversalModule>(ctx.s.H, ctx.psi);
  TaskList tl;
  tl.push_back({"tau_alpha and c_w", 0, [U] {
                  Tally t = hypothesis_gate(*U);
                  if (t.verdict != Verdict::kPass) return t;
                  const RootSystem& R = U->H().rs();
                  const OmegaAlgebra& C = U->omega();
                  for (int i = 0; i < R.rank_ss(); ++i)
                    for (int k = 0; k < U->num_lifts(i); ++k)
                      t.check(U->tau_alpha(i, k) == U->tau_alpha(i, 0),
                              [&] { return "tau_alpha_" + std::to_string(i + 1) + " depends on lift " + std::to_string(k); });
                  t.check(U->c_factors_commute(), [] { return "the factors 1 - tau_alpha do not commute"; });
                  t.check(U->c_w(R.longest()) == C.one(), [] { return "c_{w_Delta} != 1"; });
                  for (int w = 0; w < R.order(); ++w) {
                    // Reverse index order gives the same product.
                    GroupElt prod = C.one();
                    auto dw = R.delta_w(R.inv(w));
                    for (auto it = dw.rbegin(); it != dw.rend(); ++it) prod = C.mul(prod, C.sub(C.one(), U->tau_alpha(*it)));
                    t.check(prod == U->c_w(w), [&] { return "c_w for w = " + word_name(R, w); });
                  }
                  return t;
                }});
  return tl;
}

TaskList suite_cw_regular(const Context& ctx, const Params& p) {
  auto U = std::make_shared<UniversalModule>(ctx.s.H, ctx.psi);
  TaskList tl;
  const int n = p.samples ? p.samples : 1000;
  if (U->hypothesis_violation()) {
    tl.push_back({"seeded series", 0, [U] { return hypothesis_gate(*U); }});
    return tl;
  }
  chunked(tl, "seeded series", n, 100, [U, p](long long lo, long long hi, int c) {
    Tally t;
    auto rng = rng_for(p, "cw-regular", "series", c);
    const RootSystem& R = U->H().rs();
    for (long long k = lo; k < hi; ++k) {
      GroupElt f;
      while (f.is_zero()) f = random_series(*U, rng, 5, 2);
      int w = static_cast<int>(rng() % R.order());
      RegularCheck rc = c_w_regular_check(*U, w, f);
      t.check(rc.nonzero && rc.leading_matches, [&] {
        return "c_w f vanishes or loses its leading term for w = " + word_name(R, w) + ", series " + std::to_string(k);
      });
    }
    return t;
  });
  return tl;
}

TaskList suite_filtration(const Context& ctx, const Params& p) {
  auto U = std::make_shared<UniversalModule>(ctx.s.H, ctx.psi);
  TaskList tl;
  const int h = p.h;
  if (U->hypothesis_violation()) {
    tl.push_back({"chain", 0, [U] { return hypothesis_gate(*U); }});
    return tl;
  }
  const RootSystem& R = ctx.s.H->rs();
  auto chain = filtration_chain(R);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    auto A = chain[k];
    tl.push_back({"step " + pad(static_cast<long long>(k + 1), 2) + " |A|=" + std::to_string(A.size()), 0, [U, A, h] {
                    Tally t;
                    const RootSystem& R = U->H().rs();
                    QuotientCheck qc = U->quotient_identity_check(A, h);
                    t.note("w = " + word_name(R, qc.w) + ", truncated dim " + std::to_string(qc.truncated_elements));
                    if (qc.verdict == Verdict::kInconclusive) {
                      t.inconclusive("nu_height " + std::to_string(h) + " exhausted: " + qc.witness);
                      return t;
                    }
                    t.check(qc.verdict == Verdict::kPass, [&] { return qc.witness; });
                    if (qc.verdict != Verdict::kPass) return t;
                    auto idx = U->filtration_indices(A);
                    bool outside_zero = true;
                    for (int v = 0; v < R.order(); ++v)
                      if (!std::binary_search(idx.begin(), idx.end(), v) && !qc.section.comps[v].is_zero()) outside_zero = false;
                    t.check(outside_zero, [] { return "section not in X_{Delta,A}"; });
                    Membership m = U->member(qc.section, delta(R), h);
                    if (m.verdict == Verdict::kInconclusive) t.inconclusive("section membership in X_Delta: " + m.witness);
                    else t.check(m.verdict == Verdict::kPass, [] { return "section outside X_Delta"; });
                    return t;
                  }});
  }
  return tl;
}

TaskList suite_unit_injectivity(const Context& ctx, const Params& p) {
  auto U = std::make_shared<UniversalModule>(ctx.s.H, ctx.psi);
  TaskList tl;
  const int h = p.h;
  for (const auto& cm : corpus(ctx, p, 2, 2, ctx.psi)) {
    if (!in_omega(cm.module, ctx.psi)) continue;
    FinAModule m = cm.module;
    tl.push_back({cm.name, 0, [U, m, h] {
                    Tally t;
                    std::optional<TensorWithModule> res;
                    try {
                      res.emplace(tensor_with_module(m, *U, h));
                    } catch (const std::invalid_argument& e) {
                      t.inconclusive(std::string("certificate failed at nu_height ") + std::to_string(h) + ": " + e.what());
                      return t;
                    }
                    const TensorWithModule& r = *res;
                    const int n = U->H().rs().order();
                    t.check(r.module.dim() == n * m.dim(), [&] { return "dim " + std::to_string(r.module.dim()); });
                    t.check(rank(U->H().F(), r.unit) == m.dim(), [] { return "unit M -> M (x) X_Delta not injective"; });
                    t.check(r.iso.found, [&] { return "not isomorphic to M (x)_A H: " + r.iso.diagnostic; });
                    if (U->hypothesis_violation()) {
                      t.note("filtration check skipped: " + r.diagnostic);
                    } else if (!r.filtration_checked) {
                      t.inconclusive(r.diagnostic);
                    } else {
                      t.check(r.filtration_injective, [&] { return "filtration sections dependent: " + r.diagnostic; });
                    }
                    return t;
                  }});
  }
  return tl;
}

TaskList suite_involutions(const Context& ctx, const Params& p) {
  auto H = ctx.s.H;
  auto els = std::make_shared<std::vector<W1>>(H->W().elements_up_to_length(p.L, p.r, true));
  auto lams = std::make_shared<std::vector<W1>>(lambdas_by_length(H->W(), p.L, p.r, true));
  TaskList tl;
  chunked(tl, "f^2 and iota^2 length<=" + std::to_string(p.L), static_cast<long long>(els->size()), 64,
          [H, els](long long lo, long long hi, int) {
            Tally t;
            for (long long k = lo; k < hi; ++k) {
              HeckeElement x = H->T((*els)[k]);
              t.check(H->f_inv(H->f_inv(x)) == x, [&] { return "f^2 at T[" + H->W().to_string((*els)[k]) + "]"; });
              t.check(H->iota(H->iota(x)) == x, [&] { return "iota^2 at T[" + H->W().to_string((*els)[k]) + "]"; });
            }
            return t;
          });
  tl.push_back({"iota on simples", 0, [H] {
                  Tally t;
                  const ProPWeyl& W = H->W();
                  for (int s = 0; s < W.num_affine_simple(); ++s) {
                    HeckeElement x = H->T(W.affine_lift(s));
                    t.check(H->iota(x) == H->sub(H->c_s(s), x), [&] { return "iota(T[" + W.affine_name(s) + "])"; });
                  }
                  return t;
                }});
  chunked(tl, "f(E) length<=" + std::to_string(p.L), static_cast<long long>(lams->size()), 32,
          [H, lams](long long lo, long long hi, int) {
            Tally t;
            const ProPWeyl& W = H->W();
            for (long long k = lo; k < hi; ++k) {
              const W1& lam = (*lams)[k];
              HeckeElement rhs = H->e_of(W.inv(lam));
              if (W.length(lam) % 2) rhs = H->scale(H->F().neg(1), rhs);
              t.check(H->f_inv(H->e_of(lam)) == rhs, [&] { return "f(E[" + W.to_string(lam) + "])"; });
            }
            return t;
          });
  const int n = p.samples ? p.samples : 5000;
  chunked(tl, "zeta and iota on seeded pairs", n, 250, [H, els, p](long long lo, long long hi, int c) {
    Tally t;
    auto rng = rng_for(p, "involutions", "pairs", c);
    const long long N = static_cast<long long>(els->size());
    for (long long k = lo; k < hi; ++k) {
      const W1 &a = (*els)[rng() % N], &b = (*els)[rng() % N];
      HeckeElement x = H->T(a), y = H->T(b), xy = H->mul(x, y);
      t.check(H->zeta(xy) == H->mul(H->zeta(y), H->zeta(x)),
              [&] { return "zeta at " + H->W().to_string(a) + ", " + H->W().to_string(b); });
      t.check(H->iota(xy) == H->mul(H->iota(x), H->iota(y)),
              [&] { return "iota at " + H->W().to_string(a) + ", " + H->W().to_string(b); });
    }
    return t;
  });
  return tl;
}

TaskList suite_dual(const Context& ctx, const Params& p) {
  const AlgebraSetup s = ctx.s;
  TaskList tl;
  std::vector<CorpusModule> amods;
  {
    std::mt19937_64 rng(fnv("dual", p.seed));
    for (int k = 0; k < 6; ++k) {
      int v = static_cast<int>(rng() % s.rs->order());
      amods.push_back({"random-v" + word_name(*s.rs, v) + "-" + std::to_string(k),
                       module_from_lattice_rep(s.W, s.F, v, random_lattice_rep(*s.W, *s.F, 1 + k % 3, rng))});
    }
    for (const auto& m : ctx.a_modules) amods.push_back({"config:" + m.name, m.module});
  }
  for (const auto& cm : amods) {
    FinAModule m = cm.module;
    tl.push_back({"A:" + cm.name, 0, [s, m] {
                    Tally t;
                    FinAModule d = dual(m);
                    auto diag = d.validate();
                    t.check(!diag, [&] { return "dual invalid: " + *diag; });
                    auto v = support_of(m), dv = support_of(d);
                    if (v) t.check(dv && *dv == opposite_chamber(*s.rs, *v), [] { return "support of the dual"; });
                    t.check(same_on_seeds(dual(d), m), [] { return "double dual differs"; });
                    return t;
                  }});
  }
  std::vector<NamedHModule> hmods;
  {
    int k = 0;
    for (const FinHModule& c : characters(s.H)) hmods.push_back({"character-" + pad(k++, 2), c});
    std::mt19937_64 rng(fnv("dual-h", p.seed));
    FinAModule m = module_from_lattice_rep(s.W, s.F, 0, random_lattice_rep(*s.W, *s.F, 1, rng));
    hmods.push_back({"induced", tensor_h(m, 0, s.H).module});
    for (const auto& hm : ctx.h_modules) hmods.push_back({"config:" + hm.name, hm.module});
  }
  for (const auto& hm : hmods) {
    FinHModule N = hm.module;
    tl.push_back({"H:" + hm.name, 0, [N] {
                    Tally t;
                    FinHModule d = dual(N);
                    auto diag = d.validate(2);
                    t.check(!diag, [&] { return "dual invalid: " + *diag; });
                    t.check(dual(d).generator_matrices() == N.generator_matrices(), [] { return "double dual differs"; });
                    t.check(same_on_seeds(restrict_to_a(d), dual(restrict_to_a(N))),
                            [] { return "restriction to A does not commute with the dual"; });
                    return t;
                  }});
  }
  return tl;
}

struct Entry {
  SuiteInfo info;
  Builder build;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"assoc", "(ab)c = a(bc) on Iwahori-Matsumoto basis triples of bounded length"}, suite_assoc},
      {{"star-braid", "quadratic and braid relations; T* unitriangular with T*_a T*_b = T*_ab when lengths add"},
       suite_star_braid},
      {{"e-basis", "E(lambda) unitriangular, independent of the decomposition, T on the anti-dominant and T* on the dominant chamber"},
       suite_e_basis},
      {{"a-product", "a_mul agrees with the product of E(lambda) in H; closed-chamber product rule"}, suite_a_product},
      {{"center", "z_lambda commutes with every algebra generator"}, suite_center},
      {{"center-mult", "z_lambda z_mu = z_{lambda mu} for lambda regular and mu in the same closed chamber"},
       suite_center_mult},
      {{"support-decomp", "decomposition along support: dimensions, support dichotomy, functoriality"},
       suite_support_decomp},
      {{"twist", "supp n_w M = w(Lambda^+(1)); double twists; isomorphisms for equal Delta_w"}, suite_twist},
      {{"isotypic", "Z_kappa-isotypic pieces are A-stable and exhaust M"}, suite_isotypic},
      {{"hom-tensor", "M (x)_A H has dimension |W_0| dim M, injective unit, and is isomorphic to Hom_A(H, n_{w_Delta} M)"},
       suite_hom_tensor},
      {{"switch-aw", "A- and A_w-equivariant maps H -> M coincide when supp M = w(Lambda^+(1))"}, suite_switch},
      {{"extend-aj", "unique extension of an A-module supported on w_J(Lambda^+(1)) to A_J"}, suite_extend},
      {{"j-maps", "j maps are multiplicative; j^+(H_0^+) = A_{w_Delta}, j^-*(H_0^-) = A_1"}, suite_j_maps},
      {{"levi-localization", "H_J is the localization of H_J^- at the central element E^J(lambda_0)"},
       suite_levi_localization},
      {{"xj-chain", "X_{J'} is contained in X_J exactly when J is contained in J'"}, suite_xj_chain},
      {{"xj-center", "z_lambda acts on X_J as the unit tau_lambda"}, suite_xj_center},
      {{"tau-cw", "tau_alpha is independent of the lift; the factors of c_w commute"}, suite_tau_cw},
      {{"cw-regular", "c_w f != 0 for nonzero f, with the expected leading term"}, suite_cw_regular},
      {{"filtration-quotient", "each Bruhat filtration quotient of X_Delta is c_{w w_Delta} X_{emptyset}-shaped"},
       suite_filtration},
      {{"unit-injectivity", "M -> M (x) X_Delta is injective and M (x) X_Delta = M (x)_A H"}, suite_unit_injectivity},
      {{"involutions", "f^2 = iota^2 = id, f(E(lambda)) = (-1)^l E(lambda^-1), zeta anti- and iota multiplicative"},
       suite_involutions},
      {{"dual", "duals of A- and H-modules: validity, supports, double duals"}, suite_dual},
  };
  return r;
}

}  // namespace

const std::vector<SuiteInfo>& suite_list() {
  static const std::vector<SuiteInfo> v = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return v;
}

bool suite_exists(const std::string& name) {
  for (const auto& e : registry())
    if (e.info.name == name) return true;
  return false;
}

int pool_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PROPHECKE_THREADS")) {
      char* end = nullptr;
      long cap = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n > 0 ? n : cap, cap);
    }
  }
  return std::max(1, n);
}

std::vector<Report> run_suite(const Context& ctx, const std::string& suite, const SuiteOptions& opt) {
  std::vector<const Entry*> chosen;
  for (const auto& e : registry())
    if (suite == "all" || e.info.name == suite) chosen.push_back(&e);
  if (chosen.empty()) throw std::invalid_argument("unknown suite '" + suite + "' (see --list-suites)");
  Params p{opt.max_length.value_or(ctx.cfg.bounds.max_length), opt.nu_height.value_or(ctx.cfg.bounds.nu_height),
           opt.box_radius.value_or(ctx.cfg.bounds.box_radius), opt.seed.value_or(ctx.cfg.seed), opt.samples};

  struct Job {
    std::string suite;
    Task task;
    Tally out;
    double millis = 0;
  };
  std::vector<Job> jobs;
  for (const Entry* e : chosen)
    for (Task& t : e->build(ctx, p)) jobs.push_back({e->info.name, std::move(t), {}, 0});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        jobs[i].out = jobs[i].task.run();
      } catch (const std::exception& ex) {
        jobs[i].out = Tally{};
        jobs[i].out.check(false, [&] { return std::string("exception: ") + ex.what(); });
      }
      jobs[i].millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const int n = std::min<int>(pool_threads(opt.threads), static_cast<int>(std::max<std::size_t>(1, jobs.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Merge chunks in chunk order so the first witness is deterministic.
  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    if (a.task.instance != b.task.instance) return a.task.instance < b.task.instance;
    return a.task.chunk < b.task.chunk;
  });
  std::vector<Report> out;
  std::map<std::size_t, std::pair<int, int>> dims;
  std::map<std::size_t, int> generated;
  for (const Job& j : jobs) {
    if (out.empty() || out.back().suite != j.suite || out.back().instance != j.task.instance)
      out.push_back(Report{j.suite, j.task.instance, Verdict::kPass, 0, "", "", 0});
    Report& r = out.back();
    r.checked += j.out.checked;
    r.millis += j.millis;
    if (!j.out.detail.empty() && r.detail.find(j.out.detail) == std::string::npos)
      r.detail += (r.detail.empty() ? "" : "; ") + j.out.detail;
    if (j.out.dims.second > 0) {
      auto& d = dims[out.size() - 1];
      d = d.second == 0 ? j.out.dims : std::pair{std::min(d.first, j.out.dims.first), std::max(d.second, j.out.dims.second)};
      generated[out.size() - 1] += j.out.generated;
    }
    if (sev(j.out.verdict) > sev(r.verdict)) {
      r.verdict = j.out.verdict;
      r.witness = j.out.witness;
    }
  }
  for (const auto& [i, d] : dims)
    out[i].detail += (out[i].detail.empty() ? "" : "; ") + std::to_string(generated[i]) + " modules, dims " +
                     std::to_string(d.first) + "-" + std::to_string(d.second);
  for (Report& r : out)
    if (r.verdict != Verdict::kPass && r.witness.empty()) r.witness = "no witness recorded";
  return out;
}

int exit_code(const std::vector<Report>& reports) {
  bool fail = false, inc = false;
  for (const Report& r : reports) {
    fail |= r.verdict == Verdict::kFail;
    inc |= r.verdict == Verdict::kInconclusive;
  }
  return fail ? 2 : inc ? 3 : 0;
}

json reports_json(const Context& ctx, const std::vector<Report>& reports, bool timing) {
  json j;
  j["config"] = to_json(ctx.cfg);
  json arr = json::array();
  int counts[3] = {0, 0, 0};
  for (const Report& r : reports) {
    json o;
    o["suite"] = r.suite;
    o["instance"] = r.instance;
    o["verdict"] = verdict_name(r.verdict);
    o["checked"] = r.checked;
    if (!r.witness.empty()) o["witness"] = r.witness;
    if (!r.detail.empty()) o["detail"] = r.detail;
    if (timing) o["millis"] = r.millis;
    arr.push_back(o);
    ++counts[sev(r.verdict)];
  }
  j["reports"] = arr;
  j["summary"] = {{"pass", counts[0]}, {"inconclusive", counts[1]}, {"fail", counts[2]}};
  j["exit_code"] = exit_code(reports);
  return j;
}

std::string reports_text(const std::vector<Report>& reports, bool timing) {
  std::ostringstream os;
  for (const Report& r : reports) {
    std::string v = verdict_name(r.verdict);
    for (char& c : v) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    os << v << "  " << r.suite << "  " << r.instance << "  checked=" << r.checked;
    if (timing) os << "  ms=" << static_cast<long long>(r.millis);
    if (!r.detail.empty()) os << "  (" << r.detail << ")";
    if (!r.witness.empty()) os << "\n    witness: " << r.witness;
    os << "\n";
  }
  return os.str();
}

}  // namespace prophecke
