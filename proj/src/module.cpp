#include "prophecke/module.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace prophecke {

namespace {

Mat zero_mat(int r, int c) { return Mat(r, c); }

bool invertible(const Field& F, const Mat& A) { return A.rows == A.cols && rank(F, A) == A.rows; }

void set_block(Mat& A, int bi, int bj, const Mat& B) {
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.cols; ++j) A(bi * B.rows + i, bj * B.cols + j) = B(i, j);
}

bool common_closed_chamber(const RootSystem& R, const Vec& a, const Vec& b) {
  for (int w = 0; w < R.order(); ++w)
    if (R.in_chamber(w, a) && R.in_chamber(w, b)) return true;
  return false;
}

}  // namespace

// ---------------------------------------------------------------- FinAModule

FinAModule::FinAModule(std::shared_ptr<const ProPWeyl> W, std::shared_ptr<const Field> F, int dim, Action act)
    : impl_(std::make_shared<Impl>()) {
  impl_->W = std::move(W);
  impl_->F = std::move(F);
  impl_->dim = dim;
  impl_->act = std::move(act);
}

const Mat& FinAModule::action(const W1& lam) const {
  if (lam.w != 0) throw std::invalid_argument("FinAModule::action: element outside Lambda(1)");
  {
    std::lock_guard<std::mutex> lk(impl_->mu);
    auto it = impl_->cache.find(lam);
    if (it != impl_->cache.end()) return it->second;
  }
  Mat a = impl_->act(lam);
  if (a.rows != dim() || a.cols != dim()) throw std::logic_error("FinAModule::action: wrong matrix size");
  std::lock_guard<std::mutex> lk(impl_->mu);
  return impl_->cache.try_emplace(lam, std::move(a)).first->second;
}

Mat FinAModule::tau(const W1& nu, int chamber) const {
  const ProPWeyl& Wp = W();
  const RootSystem& R = Wp.rs();
  W1 lam0 = Wp.lambda(R.act(chamber, R.regular_dominant()));
  int k = 0;
  W1 x = nu;
  while (!R.in_chamber(chamber, x.mu)) {
    x = Wp.mul(lam0, x);
    if (++k > 10000) throw std::logic_error("tau: no power of lambda_0 reaches the chamber");
  }
  auto inv0 = inverse(F(), action(lam0));
  if (!inv0) throw std::invalid_argument("tau: E(lambda_0) is not invertible on the module");
  return mat_mul(F(), mat_pow(F(), *inv0, k), action(x));
}

Mat FinAModule::tau(const AElement& a, int chamber) const {
  Mat r(dim(), dim());
  for (const auto& [nu, c] : a.terms()) r = mat_add(F(), r, mat_scale(F(), c, tau(nu, chamber)));
  return r;
}

std::vector<W1> FinAModule::seeds() const {
  const ProPWeyl& Wp = W();
  const RootSystem& R = Wp.rs();
  std::vector<W1> s = Wp.lambdas_up_to_height(2, true);
  for (int w = 0; w < R.order(); ++w)
    for (int t = 0; t < Wp.zk().size(); ++t) s.push_back(Wp.lambda(R.act(w, R.regular_dominant()), t));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::optional<std::string> FinAModule::validate() const {
  const ProPWeyl& Wp = W();
  if (!(action(Wp.identity()) == Mat::identity(dim()))) return "E(1) does not act as the identity";
  std::vector<W1> s = seeds();
  for (const W1& a : s)
    for (const W1& b : s) {
      Mat lhs = mat_mul(F(), action(a), action(b));
      bool together = common_closed_chamber(Wp.rs(), a.mu, b.mu);
      if (together ? !(lhs == action(Wp.mul(a, b))) : !lhs.is_zero())
        return "product rule fails for E(" + Wp.to_string(a) + ") E(" + Wp.to_string(b) + ")";
    }
  return std::nullopt;
}

Mat lattice_rep_action(const ProPWeyl& W, const Field& F, const LatticeRep& rep, const W1& lam) {
  Mat r = Mat::identity(rep.dim);
  for (int i = 0; i < W.n(); ++i)
    if (lam.mu[i] != 0) r = mat_mul(F, r, mat_pow(F, rep.lattice[i], lam.mu[i]));
  std::vector<int> c = W.zk().coords(lam.t);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) r = mat_mul(F, r, mat_pow(F, rep.zk[j], c[j]));
  return r;
}

FinAModule module_from_lattice_rep(std::shared_ptr<const ProPWeyl> W, std::shared_ptr<const Field> F, int chamber,
                                   const LatticeRep& rep) {
  if (static_cast<int>(rep.lattice.size()) != W->n() || rep.zk.size() != W->zk().generators().size())
    throw std::invalid_argument("lattice rep: wrong number of matrices");
  const ProPWeyl* Wp = W.get();
  const Field* Fp = F.get();
  return FinAModule(W, F, rep.dim, [Wp, Fp, rep, chamber](const W1& lam) {
    if (!Wp->rs().in_chamber(chamber, lam.mu)) return zero_mat(rep.dim, rep.dim);
    return lattice_rep_action(*Wp, *Fp, rep, lam);
  });
}

FinAModule twist(const FinAModule& m, int w) {
  const ProPWeyl& W = m.W();
  W1 ninv = W.inv(W.canonical_lift(w));
  return FinAModule(m.W_ptr(), m.F_ptr(), m.dim(), [m, ninv](const W1& lam) {
    return m.action(m.W().conjugate(ninv, lam));
  });
}

FinAModule direct_sum(const FinAModule& a, const FinAModule& b) {
  return FinAModule(a.W_ptr(), a.F_ptr(), a.dim() + b.dim(),
                    [a, b](const W1& lam) { return prophecke::direct_sum(a.action(lam), b.action(lam)); });
}

FinAModule submodule(const FinAModule& m, const Mat& B) {
  return FinAModule(m.W_ptr(), m.F_ptr(), B.rows,
                    [m, B](const W1& lam) { return restrict_to_rows(m.F(), B, m.action(lam)); });
}

FinAModule dual(const FinAModule& m) {
  return FinAModule(m.W_ptr(), m.F_ptr(), m.dim(), [m](const W1& lam) {
    const Field& F = m.F();
    Mat a = transpose(m.action(m.W().inv(lam)));
    return m.W().length(lam) % 2 ? mat_scale(F, F.neg(1), a) : a;
  });
}

std::optional<int> support_of(const FinAModule& m) {
  const RootSystem& R = m.W().rs();
  std::vector<W1> s = m.seeds();
  for (int w = 0; w < R.order(); ++w) {
    bool ok = true;
    for (const W1& lam : s) {
      const Mat& a = m.action(lam);
      if (R.in_chamber(w, lam.mu) ? !invertible(m.F(), a) : !a.is_zero()) {
        ok = false;
        break;
      }
    }
    if (ok) return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- FinHModule

std::vector<HeckeElement> FinHModule::generators(const HeckeAlgebra& H) {
  const ProPWeyl& W = H.W();
  std::vector<HeckeElement> g;
  for (int s = 0; s < W.num_affine_simple(); ++s) g.push_back(H.T(W.affine_lift(s)));
  for (const auto& og : W.omega_generators()) {
    g.push_back(H.T(og.lift));
    g.push_back(H.T(W.inv(og.lift)));
  }
  for (int t : W.zk().generators()) g.push_back(H.T(W.from_t(t)));
  return g;
}

FinHModule::FinHModule(std::shared_ptr<const HeckeAlgebra> H, int dim, std::vector<Mat> gens)
    : impl_(std::make_shared<Impl>()) {
  if (gens.size() != generators(*H).size()) throw std::invalid_argument("FinHModule: wrong number of generators");
  for (const Mat& g : gens)
    if (g.rows != dim || g.cols != dim) throw std::invalid_argument("FinHModule: generator matrix of wrong size");
  impl_->H = std::move(H);
  impl_->dim = dim;
  impl_->gens = std::move(gens);
}

FinHModule FinHModule::from_action(std::shared_ptr<const HeckeAlgebra> H, int dim,
                                   const std::function<Mat(const HeckeElement&)>& act) {
  std::vector<Mat> g;
  for (const HeckeElement& x : generators(*H)) g.push_back(act(x));
  return FinHModule(std::move(H), dim, std::move(g));
}

const Mat& FinHModule::act_basis(const W1& w) const {
  {
    std::lock_guard<std::mutex> lk(impl_->mu);
    auto it = impl_->cache.find(w);
    if (it != impl_->cache.end()) return it->second;
  }
  const ProPWeyl& W = H().W();
  const Field& F = this->F();
  const auto& g = impl_->gens;
  const int ns = W.num_affine_simple();
  const int no = static_cast<int>(W.omega_generators().size());
  ProPWeyl::Peeled p = W.peel(w);
  Mat r = Mat::identity(dim());
  for (int s : p.word) r = mat_mul(F, r, g[s]);
  ProPWeyl::OmegaWord ow = W.omega_decompose(p.u);
  for (int j = 0; j < no; ++j) {
    long long e = ow.exps[j];
    if (e > 0) r = mat_mul(F, r, mat_pow(F, g[ns + 2 * j], e));
    if (e < 0) r = mat_mul(F, r, mat_pow(F, g[ns + 2 * j + 1], -e));
  }
  std::vector<int> c = W.zk().coords(ow.t);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) r = mat_mul(F, r, mat_pow(F, g[ns + 2 * no + j], c[j]));
  std::lock_guard<std::mutex> lk(impl_->mu);
  return impl_->cache.try_emplace(w, std::move(r)).first->second;
}

Mat FinHModule::act(const HeckeElement& x) const {
  Mat r(dim(), dim());
  for (const auto& [w, c] : x.terms()) r = mat_add(F(), r, mat_scale(F(), c, act_basis(w)));
  return r;
}

std::optional<std::string> FinHModule::validate(int max_length) const {
  const HeckeAlgebra& Hh = H();
  const ProPWeyl& W = Hh.W();
  if (max_length < 0) max_length = 3;
  std::vector<HeckeElement> gens = generators(Hh);
  for (const W1& y : W.elements_up_to_length(max_length, 1, true)) {
    const Mat& ay = act_basis(y);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Mat lhs = mat_mul(F(), impl_->gens[i], ay);
      if (!(lhs == act(Hh.mul(gens[i], Hh.T(y)))))
        return "relation fails for generator " + Hh.to_string(gens[i]) + " against T[" + W.to_string(y) + "]";
    }
  }
  return std::nullopt;
}

FinAModule restrict_to_a(const FinHModule& m) {
  return FinAModule(m.H().W_ptr(), m.H().F_ptr(), m.dim(),
                    [m](const W1& lam) { return m.act(m.H().e_of(lam)); });
}

FinHModule direct_sum(const FinHModule& a, const FinHModule& b) {
  std::vector<Mat> g;
  for (std::size_t i = 0; i < a.generator_matrices().size(); ++i)
    g.push_back(direct_sum(a.generator_matrices()[i], b.generator_matrices()[i]));
  return FinHModule(a.H_ptr(), a.dim() + b.dim(), std::move(g));
}

FinHModule submodule(const FinHModule& m, const Mat& B) {
  std::vector<Mat> g;
  for (const Mat& x : m.generator_matrices()) g.push_back(restrict_to_rows(m.F(), B, x));
  return FinHModule(m.H_ptr(), B.rows, std::move(g));
}

FinHModule dual(const FinHModule& m) {
  const HeckeAlgebra& H = m.H();
  return FinHModule::from_action(m.H_ptr(), m.dim(),
                                 [&](const HeckeElement& x) { return transpose(m.act(H.f_inv(x))); });
}

bool in_category_c(const FinHModule& m) {
  const HeckeAlgebra& H = m.H();
  W1 lam0 = H.W().lambda(H.rs().regular_dominant());
  return invertible(m.F(), m.act(H.z_of(lam0)));
}

std::vector<SupportComponent> decompose_by_support(const FinHModule& m) {
  if (!in_category_c(m)) throw std::invalid_argument("decompose_by_support: module is not in C");
  const HeckeAlgebra& H = m.H();
  const ProPWeyl& W = H.W();
  const RootSystem& R = W.rs();
  W1 lam0 = W.lambda(R.regular_dominant());
  FinAModule res = restrict_to_a(m);
  std::vector<SupportComponent> out;
  int total = 0;
  for (int w = 0; w < R.order(); ++w) {
    W1 lw = W.conjugate(W.canonical_lift(w), lam0);
    Mat B = row_space(m.F(), res.action(lw));
    total += B.rows;
    out.push_back({w, B, submodule(res, B)});
  }
  if (total != m.dim()) throw std::logic_error("decompose_by_support: components do not fill the module");
  return out;
}

std::vector<int> character_orbit(const ProPWeyl& W, int psi) {
  const ZKappa& zk = W.zk();
  std::vector<W1> gens;
  for (int i = 0; i < W.n(); ++i) {
    Vec e{};
    e[i] = 1;
    gens.push_back(W.lambda(e));
  }
  // psi_k(t) = exp(2 pi i sum_j k_j t_j / d_j); compare exponents mod L = lcm(d_j).
  const std::vector<int>& d = zk.orders();
  long long L = 1;
  for (int x : d) L = std::lcm(L, static_cast<long long>(x));
  auto expo = [&](int k, int t) {
    std::vector<int> kc = zk.coords(k), tc = zk.coords(t);
    long long e = 0;
    for (std::size_t j = 0; j < d.size(); ++j) e += static_cast<long long>(kc[j]) * tc[j] * (L / d[j]);
    return ((e % L) + L) % L;
  };
  // (lambda psi)(t) = psi(lambda^{-1} t lambda).
  auto image = [&](const W1& g, int ps) {
    for (int cand = 0; cand < zk.size(); ++cand) {
      bool ok = true;
      for (int t = 0; t < zk.size() && ok; ++t) ok = expo(cand, t) == expo(ps, W.conjugate(W.inv(g), W.from_t(t)).t);
      if (ok) return cand;
    }
    throw std::logic_error("character_orbit: conjugation is not an automorphism of Z_kappa");
  };
  std::set<int> orbit{psi};
  std::vector<int> todo{psi};
  while (!todo.empty()) {
    int ps = todo.back();
    todo.pop_back();
    for (const W1& g : gens)
      for (const W1& h : {g, W.inv(g)}) {
        int img = image(h, ps);
        if (orbit.insert(img).second) todo.push_back(img);
      }
  }
  return {orbit.begin(), orbit.end()};
}

std::vector<IsotypicComponent> isotypic(const FinAModule& m) {
  const ProPWeyl& W = m.W();
  const ZKappa& zk = W.zk();
  const Field& F = m.F();
  const int d = m.dim();
  std::vector<int> gens = zk.generators();
  std::vector<Mat> eig(zk.size());
  int total = 0;
  for (int psi = 0; psi < zk.size(); ++psi) {
    // Rows v with v (A_t - psi(t)) = 0 for every generator t.
    Mat S(0, d);
    for (int t : gens) {
      Mat A = m.action(W.from_t(t));
      Fe c = zk.character(F, psi, t);
      for (int i = 0; i < d; ++i) A(i, i) = F.sub(A(i, i), c);
      S = vstack(S, transpose(A));
    }
    eig[psi] = gens.empty() ? Mat::identity(d) : nullspace(F, S);
    total += eig[psi].rows;
  }
  if (total != d) throw std::invalid_argument("isotypic: Z_kappa does not act diagonalizably");
  std::vector<IsotypicComponent> out;
  std::set<int> seen;
  for (int psi = 0; psi < zk.size(); ++psi) {
    if (seen.count(psi)) continue;
    IsotypicComponent c{character_orbit(W, psi), Mat(0, d)};
    for (int x : c.orbit) {
      seen.insert(x);
      c.basis = vstack(c.basis, eig[x]);
    }
    if (c.basis.rows > 0) out.push_back(std::move(c));
  }
  return out;
}

InducedModule tensor_h(const FinAModule& m, int chamber, std::shared_ptr<const HeckeAlgebra> H) {
  ChamberLocalization L(H, chamber, Side::kLeft);
  const int n = H->rs().order(), d = m.dim();
  auto block_row = [&](const HeckeElement& x, Mat& G, int row) {
    std::vector<AElement> c = L.coords(x);
    for (int u = 0; u < n; ++u) set_block(G, row, u, m.tau(c[u], chamber));
  };
  FinHModule mod = FinHModule::from_action(H, n * d, [&](const HeckeElement& X) {
    Mat G(n * d, n * d);
    for (int w = 0; w < n; ++w) block_row(H->mul(L.basis(w), X), G, w);
    return G;
  });
  Mat unit(d, n * d);
  block_row(H->one(), unit, 0);
  return {mod, unit};
}

FinHModule hom_from_h(const FinAModule& m, int chamber, std::shared_ptr<const HeckeAlgebra> H) {
  ChamberLocalization R(H, chamber, Side::kRight);
  const int n = H->rs().order(), d = m.dim();
  // (phi X)(b_w) = phi(X b_w) = sum_u phi(b_u) tau(a_u).
  return FinHModule::from_action(H, n * d, [&](const HeckeElement& X) {
    Mat G(n * d, n * d);
    for (int w = 0; w < n; ++w) {
      std::vector<AElement> c = R.coords(H->mul(X, R.basis(w)));
      for (int u = 0; u < n; ++u) set_block(G, u, w, m.tau(c[u], chamber));
    }
    return G;
  });
}

Mat hom_embedding(const FinHModule& nmod, int chamber) {
  ChamberLocalization R(nmod.H_ptr(), chamber, Side::kRight);
  const int n = nmod.H().rs().order(), d = nmod.dim();
  Mat E(d, n * d);
  for (int w = 0; w < n; ++w) set_block(E, 0, w, nmod.act(R.basis(w)));
  return E;
}

Mat intertwiner_space(const FinHModule& a, const FinHModule& b) {
  const Field& F = a.F();
  const int d1 = a.dim(), d2 = b.dim();
  const auto& ga = a.generator_matrices();
  const auto& gb = b.generator_matrices();
  Mat S(static_cast<int>(ga.size()) * d1 * d2, d1 * d2);
  int row = 0;
  for (std::size_t g = 0; g < ga.size(); ++g)
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d2; ++j, ++row) {
        // (A P)_{ij} - (P B)_{ij}
        for (int k = 0; k < d1; ++k) S(row, k * d2 + j) = F.add(S(row, k * d2 + j), ga[g](i, k));
        for (int k = 0; k < d2; ++k) S(row, i * d2 + k) = F.sub(S(row, i * d2 + k), gb[g](k, j));
      }
  return nullspace(F, S);
}

namespace {

Mat unflatten(const Mat& rows, int r, int d1, int d2) {
  Mat P(d1, d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) P(i, j) = rows(r, i * d2 + j);
  return P;
}

Mat random_combination(const Field& F, const Mat& basis, int d1, int d2, std::mt19937_64& rng) {
  Mat P(d1, d2);
  for (int r = 0; r < basis.rows; ++r)
    P = mat_add(F, P, mat_scale(F, static_cast<Fe>(rng() % F.order()), unflatten(basis, r, d1, d2)));
  return P;
}

}  // namespace

IsoResult find_isomorphism(const FinHModule& a, const FinHModule& b, std::uint64_t seed) {
  IsoResult res;
  if (a.dim() != b.dim()) {
    res.diagnostic = "dimensions differ";
    return res;
  }
  const Field& F = a.F();
  const int d = a.dim();
  Mat S = intertwiner_space(a, b);
  res.space_dim = S.rows;
  for (int r = 0; r < S.rows; ++r) {
    Mat P = unflatten(S, r, d, d);
    if (invertible(F, P)) {
      res.found = true;
      res.P = P;
      return res;
    }
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 256 && S.rows > 0; ++attempt) {
    Mat P = random_combination(F, S, d, d, rng);
    if (invertible(F, P)) {
      res.found = true;
      res.P = P;
      return res;
    }
  }
  res.diagnostic = "no invertible intertwiner in a space of dimension " + std::to_string(S.rows);
  return res;
}

IsoResult check_iso_hom_tensor(const FinAModule& m, std::shared_ptr<const HeckeAlgebra> H) {
  const int wd = H->rs().longest();
  FinHModule t = tensor_h(m, H->rs().identity(), H).module;
  FinHModule h = hom_from_h(twist(m, wd), wd, H);
  return find_isomorphism(t, h);
}

SwitchResult switch_check(const FinAModule& m, int chamber, const HeckeAlgebra& H, int max_length, int nu_height) {
  const ProPWeyl& W = H.W();
  const RootSystem& R = W.rs();
  const Field& F = H.F();
  const int d = m.dim();
  std::vector<W1> X = W.elements_up_to_length(max_length, 1, true);
  std::unordered_map<W1, int, W1Hash> idx;
  for (std::size_t i = 0; i < X.size(); ++i) idx.emplace(X[i], static_cast<int>(i));
  auto inside = [&](const HeckeElement& y) {
    for (const auto& [w, c] : y.terms())
      if (!idx.count(w)) return false;
    return true;
  };
  W1 lam0 = W.lambda(R.act(chamber, R.regular_dominant()));
  std::vector<W1> lams = W.lambdas_up_to_height(nu_height, true);
  if (std::find(lams.begin(), lams.end(), lam0) == lams.end()) lams.push_back(lam0);

  SwitchResult res;
  res.unknowns = static_cast<int>(X.size()) * d;
  std::vector<Fe> chamber_rows, extra_rows;
  // phi(T_x E(lam)) - phi(T_x) E(lam) = 0, one row per output coordinate.
  auto equations = [&](const W1& x, const HeckeElement& y, const W1& lam, std::vector<Fe>& out) {
    const Mat& A = m.action(lam);
    std::size_t start = out.size();
    out.resize(start + static_cast<std::size_t>(d) * res.unknowns, 0);
    auto at = [&](int j, int col) -> Fe& { return out[start + static_cast<std::size_t>(j) * res.unknowns + col]; };
    for (const auto& [w, c] : y.terms())
      for (int j = 0; j < d; ++j) at(j, idx.at(w) * d + j) = F.add(at(j, idx.at(w) * d + j), c);
    int base = idx.at(x) * d;
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) at(j, base + i) = F.sub(at(j, base + i), A(i, j));
  };
  for (const W1& lam : lams) {
    bool in = R.in_chamber(chamber, lam.mu);
    HeckeElement e = H.e_of(lam);
    for (const W1& x : X) {
      HeckeElement y = H.mul(H.T(x), e);
      if (!inside(y)) continue;
      if (in) {
        equations(x, y, lam, chamber_rows);
        continue;
      }
      bool covered = true;
      for (const auto& [w, c] : y.terms())
        if (!inside(H.mul(H.T(w), H.e_of(lam0)))) covered = false;
      if (!covered) continue;
      equations(x, y, lam, extra_rows);
      ++res.extra_equations;
    }
  }
  auto as_mat = [&](const std::vector<Fe>& rows) {
    Mat M(static_cast<int>(rows.size() / std::max(res.unknowns, 1)), res.unknowns);
    M.a = rows;
    return M;
  };
  res.rank_chamber = rank(F, as_mat(chamber_rows));
  chamber_rows.insert(chamber_rows.end(), extra_rows.begin(), extra_rows.end());
  res.rank_full = rank(F, as_mat(chamber_rows));
  return res;
}

W1 levi_central_element(const ProPWeyl& W, const std::vector<int>& J, int index) {
  const RootSystem& R = W.rs();
  std::set<int> inJ(J.begin(), J.end());
  int found = 0;
  for (long long h = 0; h <= 40; ++h)
    for (const Vec& mu : R.cochars_up_to_height(h)) {
      if (R.nu_height(mu) != h) continue;
      bool ok = true;
      for (int i = 0; i < R.rank_ss() && ok; ++i) {
        long long p = pairing(mu, R.datum().simple_roots[i], R.lattice_rank());
        ok = inJ.count(i) ? p == 0 : p > 0;
      }
      if (ok && found++ == index) return W.lambda(mu);
    }
  throw std::invalid_argument("levi_central_element: no such element within the search bound");
}

FinAModule extend_to_levi(const FinAModule& m, int w, const std::vector<int>& J, std::shared_ptr<const ProPWeyl> levi,
                          const W1& lambda0) {
  const RootSystem& R = m.W().rs();
  if (!R.in_parabolic(w, J)) throw std::invalid_argument("extend_to_levi: chamber element outside W_{0,J}");
  auto inv0 = inverse(m.F(), m.action(lambda0));
  if (!inv0) throw std::invalid_argument("extend_to_levi: E(lambda_0) is not invertible on the module");
  Mat lam0_inv = *inv0;
  return FinAModule(std::move(levi), m.F_ptr(), m.dim(), [m, w, J, lambda0, lam0_inv](const W1& mu) {
    const ProPWeyl& W = m.W();
    const RootSystem& R = W.rs();
    Vec v = R.act(R.inv(w), mu.mu);
    for (int j : J)
      if (pairing(v, R.datum().simple_roots[j], R.lattice_rank()) < 0) return Mat(m.dim(), m.dim());
    int n = 0;
    W1 x = mu;
    while (!R.in_chamber(w, x.mu)) {
      x = W.mul(lambda0, x);
      if (++n > 10000) throw std::logic_error("extend_to_levi: lambda_0 does not push into the chamber");
    }
    return mat_mul(m.F(), m.action(x), mat_pow(m.F(), lam0_inv, n));
  });
}

namespace {

Mat random_mat(const Field& F, int r, int c, std::mt19937_64& rng) {
  Mat A(r, c);
  for (auto& x : A.a) x = static_cast<Fe>(rng() % F.order());
  return A;
}

Mat random_invertible(const Field& F, int n, std::mt19937_64& rng) {
  for (;;) {
    Mat A = random_mat(F, n, n, rng);
    if (invertible(F, A)) return A;
  }
}

}  // namespace

LatticeRep random_lattice_rep(const ProPWeyl& W, const Field& F, int dim, std::mt19937_64& rng, int psi) {
  const ZKappa& zk = W.zk();
  std::vector<int> zgens = zk.generators();
  LatticeRep rep{dim, std::vector<Mat>(W.n(), Mat(dim, dim)), std::vector<Mat>(zgens.size(), Mat(dim, dim))};
  int off = 0;
  while (off < dim) {
    int b = 1 + static_cast<int>(rng() % (dim - off));
    int ps = psi >= 0 ? psi : static_cast<int>(rng() % zk.size());
    Mat X = random_mat(F, b, b, rng);
    for (int i = 0; i < W.n(); ++i) {
      Mat P;
      do {
        P = Mat(b, b);
        Mat Xk = Mat::identity(b);
        for (int k = 0; k < b; ++k) {
          P = mat_add(F, P, mat_scale(F, static_cast<Fe>(rng() % F.order()), Xk));
          Xk = mat_mul(F, Xk, X);
        }
      } while (!invertible(F, P));
      for (int r = 0; r < b; ++r)
        for (int c = 0; c < b; ++c) rep.lattice[i](off + r, off + c) = P(r, c);
    }
    for (std::size_t j = 0; j < zgens.size(); ++j)
      for (int r = 0; r < b; ++r) rep.zk[j](off + r, off + r) = zk.character(F, ps, zgens[j]);
    off += b;
  }
  Mat P = random_invertible(F, dim, rng);
  Mat Pi = *inverse(F, P);
  for (auto& A : rep.lattice) A = mat_mul(F, mat_mul(F, Pi, A), P);
  for (auto& A : rep.zk) A = mat_mul(F, mat_mul(F, Pi, A), P);
  return rep;
}

Mat random_endomorphism(const FinHModule& m, std::mt19937_64& rng) {
  return random_combination(m.F(), intertwiner_space(m, m), m.dim(), m.dim(), rng);
}

std::vector<FinHModule> characters(std::shared_ptr<const HeckeAlgebra> H) {
  const ProPWeyl& W = H->W();
  const ZKappa& zk = W.zk();
  const Field& F = H->F();
  const int ns = W.num_affine_simple();
  const int no = static_cast<int>(W.omega_generators().size());
  std::vector<int> zgens = zk.generators();
  auto scalar = [](Fe c) {
    Mat m(1, 1);
    m(0, 0) = c;
    return m;
  };
  std::vector<FinHModule> out;
  for (int psi = 0; psi < zk.size(); ++psi) {
    std::vector<Fe> cs(ns);
    for (int s = 0; s < ns; ++s) {
      Fe v = 0;
      for (const auto& [w, c] : H->c_s(s).terms()) v = F.add(v, F.mul(c, zk.character(F, psi, w.t)));
      cs[s] = v;
    }
    const long long nunits = F.order() - 1;
    long long combos = 1LL << ns;
    for (int j = 0; j < no; ++j) combos *= nunits;
    for (long long code = 0; code < combos; ++code) {
      long long c = code;
      std::vector<Mat> g;
      for (int s = 0; s < ns; ++s, c >>= 1) g.push_back(scalar((c & 1) ? cs[s] : 0));
      for (int j = 0; j < no; ++j) {
        Fe b = static_cast<Fe>(1 + c % nunits);
        c /= nunits;
        g.push_back(scalar(b));
        g.push_back(scalar(F.inv(b)));
      }
      for (int t : zgens) g.push_back(scalar(zk.character(F, psi, t)));
      // Skip duplicates produced when psi(c_s) = 0.
      bool dup = false;
      for (int s = 0; s < ns; ++s)
        if (((code >> s) & 1) && cs[s] == 0) dup = true;
      if (dup) continue;
      FinHModule m(H, 1, std::move(g));
      if (!m.validate()) out.push_back(m);
    }
  }
  return out;
}

}  // namespace prophecke
