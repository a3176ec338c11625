#include "prophecke/prop_weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "prophecke/intmath.hpp"

namespace prophecke {

namespace {

long long mod(long long a, long long m) {
  if (m == 0) return a;
  long long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

// ------------------------------------------------------------------ ZKappa

ZKappa::ZKappa(const RootSystem& rs, int q, const std::optional<ZKappaSpec>& spec) : q_(q) {
  if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
  const int n = rs.lattice_rank(), r = rs.rank_ss(), N = rs.order();
  std::vector<IntMatrix> refl;
  std::vector<std::vector<long long>> gens;
  if (spec) {
    orders_ = spec->orders;
    if (static_cast<int>(spec->reflections.size()) != r)
      throw std::invalid_argument("zkappa.reflections: expected one matrix per simple root");
    if (static_cast<int>(spec->coroot_images.size()) != r)
      throw std::invalid_argument("zkappa.coroot_images: expected one vector per simple root");
    refl = spec->reflections;
    gens = spec->coroot_images;
  } else {
    orders_.assign(n, q - 1);
    for (int i = 0; i < r; ++i) {
      refl.push_back(rs.element(rs.simple(i)).matrix);
      std::vector<long long> g(n);
      for (int j = 0; j < n; ++j) g[j] = rs.datum().simple_coroots[i][j];
      gens.push_back(g);
    }
  }
  const int k = static_cast<int>(orders_.size());
  for (int d : orders_) {
    if (d < 1) throw std::invalid_argument("zkappa.orders: entries must be >= 1");
    size_ *= d;
    if (size_ > 4096) throw std::invalid_argument("zkappa: group too large");
  }
  for (const auto& m : refl)
    if (static_cast<int>(m.size()) != k) throw std::invalid_argument("zkappa.reflections: wrong dimension");
  for (const auto& g : gens)
    if (static_cast<int>(g.size()) != k) throw std::invalid_argument("zkappa.coroot_images: wrong dimension");

  add_.resize(static_cast<std::size_t>(size_) * size_);
  neg_.resize(size_);
  for (int a = 0; a < size_; ++a) {
    auto ca = coords(a);
    std::vector<long long> na(k);
    for (int i = 0; i < k; ++i) na[i] = -ca[i];
    neg_[a] = from_coords(na);
    for (int b = 0; b < size_; ++b) {
      auto cb = coords(b);
      std::vector<long long> s(k);
      for (int i = 0; i < k; ++i) s[i] = ca[i] + cb[i];
      add_[static_cast<std::size_t>(a) * size_ + b] = from_coords(s);
    }
  }
  auto apply = [&](const IntMatrix& m, int t) {
    auto c = coords(t);
    std::vector<long long> out(k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) out[i] += m[i][j] * c[j];
    return from_coords(out);
  };
  // Action of W_0 along stored words, then a check that it is well defined.
  act_.assign(static_cast<std::size_t>(N) * size_, 0);
  for (int w = 0; w < N; ++w)
    for (int t = 0; t < size_; ++t) {
      int x = t;
      const auto& word = rs.element(w).word;
      for (auto it = word.rbegin(); it != word.rend(); ++it) x = apply(refl[*it], x);
      act_[static_cast<std::size_t>(w) * size_ + t] = x;
    }
  for (int i = 0; i < r; ++i)
    for (int w = 0; w < N; ++w)
      for (int t = 0; t < size_; ++t)
        if (act(rs.mul(rs.simple(i), w), t) != act(rs.simple(i), act(w, t)))
          throw std::invalid_argument("zkappa.reflections do not define a W_0 action");
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < size_; ++t)
      if (act(rs.simple(i), act(rs.simple(i), t)) != t)
        throw std::invalid_argument("zkappa.reflections: s_" + std::to_string(i + 1) + " is not an involution");

  // beta^vee(g) for every root, transported from the simple coroots.
  coroot_gen_.assign(rs.num_roots(), -1);
  for (int w = 0; w < N; ++w)
    for (int i = 0; i < r; ++i) {
      int kk = rs.root_image(w, i);
      int img = act(w, from_coords(gens[i]));
      if (coroot_gen_[kk] < 0) coroot_gen_[kk] = img;
      else if (coroot_gen_[kk] != img)
        throw std::invalid_argument("zkappa.coroot_images not W_0-equivariant");
    }
  for (int kk = 0; kk < rs.num_roots(); ++kk)
    if (coroot_gen_[kk] != neg(coroot_gen_[rs.negate(kk)]))
      throw std::invalid_argument("zkappa.coroot_images: (-beta)^vee(g) != beta^vee(g)^{-1}");

  // Characters act through the dual action.
  int L = 1;
  for (int d : orders_) L = std::lcm(L, d);
  auto exponent = [&](int psi, int t) {
    auto a = coords(psi), b = coords(t);
    long long e = 0;
    for (int i = 0; i < k; ++i) e += a[i] * b[i] * (L / orders_[i]);
    return mod(e, L);
  };
  char_act_.assign(static_cast<std::size_t>(N) * size_, -1);
  for (int w = 0; w < N; ++w) {
    int winv = rs.inv(w);
    for (int psi = 0; psi < size_; ++psi)
      for (int cand = 0; cand < size_; ++cand) {
        bool ok = true;
        for (int t = 0; t < size_ && ok; ++t)
          if (exponent(cand, t) != exponent(psi, act(winv, t))) ok = false;
        if (ok) {
          char_act_[static_cast<std::size_t>(w) * size_ + psi] = cand;
          break;
        }
      }
  }
}

std::vector<int> ZKappa::coords(int t) const {
  std::vector<int> c(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    c[i] = t % orders_[i];
    t /= orders_[i];
  }
  return c;
}

int ZKappa::from_coords(const std::vector<long long>& c) const {
  int t = 0;
  for (int i = static_cast<int>(orders_.size()) - 1; i >= 0; --i)
    t = t * orders_[i] + static_cast<int>(mod(c[i], orders_[i]));
  return t;
}

int ZKappa::mul_int(long long k, int a) const {
  auto c = coords(a);
  std::vector<long long> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = mod(k * c[i], orders_[i]);
  return from_coords(out);
}

int ZKappa::coroot_image(int k, long long c) const { return mul_int(c, coroot_gen_[k]); }

std::vector<int> ZKappa::coroot_values(int k) const {
  std::vector<int> v;
  for (int c = 0; c <= q_ - 2; ++c) v.push_back(coroot_image(k, c));
  return v;
}

int ZKappa::coroot_minus_one(int k) const { return q_ % 2 == 1 ? coroot_image(k, (q_ - 1) / 2) : 0; }

std::vector<int> ZKappa::generators() const {
  std::vector<int> g;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (orders_[i] == 1) continue;
    std::vector<long long> c(orders_.size(), 0);
    c[i] = 1;
    g.push_back(from_coords(c));
  }
  return g;
}

Fe ZKappa::character(const Field& F, int psi, int t) const {
  int L = 1;
  for (int d : orders_) L = std::lcm(L, d);
  auto a = coords(psi), b = coords(t);
  long long e = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) e += static_cast<long long>(a[i]) * b[i] * (L / orders_[i]);
  return F.pow(F.root_of_unity(static_cast<std::uint32_t>(L)), mod(e, L));
}

int ZKappa::act_character(int w, int psi) const { return char_act_[static_cast<std::size_t>(w) * size_ + psi]; }

// ---------------------------------------------------------------- ProPWeyl

ProPWeyl::ProPWeyl(std::shared_ptr<const RootSystem> rs, int q, std::optional<ZKappaSpec> zk,
                   std::vector<std::optional<int>> ns_squares, int alcove_sign)
    : rs_(std::move(rs)), zk_(*rs_, q, zk), q_(q), alcove_sign_(alcove_sign) {
  if (alcove_sign != 1 && alcove_sign != -1) throw std::invalid_argument("alcove_sign must be +1 or -1");
  const RootSystem& R = *rs_;
  const int r = R.rank_ss(), N = R.order();
  if (!ns_squares.empty() && static_cast<int>(ns_squares.size()) != r)
    throw std::invalid_argument("ns_squares: expected one entry per simple root");
  for (int i = 0; i < r; ++i) {
    int h = (!ns_squares.empty() && ns_squares[i]) ? *ns_squares[i] : zk_.coroot_minus_one(i);
    if (h < 0 || h >= zk_.size()) throw std::invalid_argument("ns_squares[" + std::to_string(i) + "] out of range");
    if (zk_.act(R.simple(i), h) != h)
      throw std::invalid_argument("ns_squares[" + std::to_string(i) + "] is not fixed by s_" + std::to_string(i + 1));
    ns_sq_.push_back(h);
  }

  // n_u n_v = kappa(u, v) n_{uv}, by induction on l(u) along u = s u'.
  kappa_.assign(static_cast<std::size_t>(N) * N, 0);
  for (int u = 1; u < N; ++u) {
    int s = R.element(u).word.front();
    int sw = R.simple(s);
    int up = R.mul(sw, u);
    for (int v = 0; v < N; ++v) {
      int upv = R.mul(up, v);
      int k = zk_.act(sw, kappa(up, v));
      if (R.length(R.mul(sw, upv)) < R.length(upv)) k = zk_.add(k, ns_sq_[s]);
      kappa_[static_cast<std::size_t>(u) * N + v] = k;
    }
  }

  neg_under_inv_.assign(N, std::vector<char>(R.num_positive(), 0));
  for (int w = 0; w < N; ++w)
    for (int k = 0; k < R.num_positive(); ++k) neg_under_inv_[w][k] = !R.positive(R.root_image(R.inv(w), k));

  for (int i = 0; i < r; ++i) {
    Affine a;
    a.lift = W1{Vec{}, 0, R.simple(i)};
    a.lift_inv = inv(a.lift);
    a.root = i;
    a.c_terms = zk_.coroot_values(i);
    aff_.push_back(a);
  }
  for (std::size_t c = 0; c < R.components().size(); ++c) {
    int theta = R.highest_root(static_cast<int>(c));
    int ww = -1, ii = -1;
    for (int w = 0; w < N && ww < 0; ++w)
      for (int i : R.components()[c])
        if (R.root_image(w, i) == theta) {
          ww = w;
          ii = i;
          break;
        }
    W1 nw = canonical_lift(ww);
    W1 refl = mul(mul(nw, canonical_lift(R.simple(ii))), inv(nw));
    Affine a;
    a.lift = mul(lambda(vec_scale(alcove_sign_, R.coroot(theta))), refl);
    a.lift_inv = inv(a.lift);
    a.root = theta;
    a.c_terms = zk_.coroot_values(theta);
    if (length(a.lift) != 1) throw std::logic_error("affine simple reflection does not have length one");
    aff_.push_back(a);
  }

  // Omega = X_* / Q^vee through the Smith form of the coroot matrix.
  const int n = R.lattice_rank();
  IMat A(n, std::vector<long long>(r, 0));
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < r; ++j) A[a][j] = R.datum().simple_coroots[j][a];
  SmithForm sf = smith_form(A, n, r);
  omega_U_ = sf.U;
  omega_d_.assign(n, 0);
  for (int a = 0; a < n; ++a) omega_d_[a] = a < static_cast<int>(sf.d.size()) ? sf.d[a] : 0;
  IMat Uinv = unimodular_inverse(sf.U);
  for (int a = 0; a < n; ++a) {
    if (omega_d_[a] == 1) continue;
    Vec mu{};
    for (int b = 0; b < n; ++b) mu[b] = static_cast<std::int32_t>(Uinv[b][a]);
    W1 u = peel(lambda(mu)).u;
    omega_gens_.push_back({u, omega_d_[a]});
  }
}

W1 ProPWeyl::mul(const W1& a, const W1& b) const {
  W1 c;
  c.mu = vec_add(a.mu, rs_->act(a.w, b.mu));
  c.t = zk_.add(zk_.add(a.t, zk_.act(a.w, b.t)), kappa(a.w, b.w));
  c.w = rs_->mul(a.w, b.w);
  return c;
}

W1 ProPWeyl::inv(const W1& a) const {
  int wi = rs_->inv(a.w);
  W1 c;
  c.mu = vec_neg(rs_->act(wi, a.mu));
  c.t = zk_.act(wi, zk_.neg(zk_.add(kappa(a.w, wi), a.t)));
  c.w = wi;
  return c;
}

W1 ProPWeyl::pow(const W1& a, long long e) const {
  W1 base = e < 0 ? inv(a) : a;
  if (e < 0) e = -e;
  W1 r = identity();
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return r;
}

W1 ProPWeyl::conjugate(const W1& g, const W1& lam) const { return mul(mul(g, lam), inv(g)); }

int ProPWeyl::length(const Vec& mu, int w) const {
  const int n = rs_->lattice_rank();
  const auto& neg = neg_under_inv_[w];
  int l = 0;
  for (int k = 0; k < rs_->num_positive(); ++k) {
    long long m = pairing(mu, rs_->root(k), n);
    if (neg[k]) m -= alcove_sign_;
    l += static_cast<int>(std::llabs(m));
  }
  return l;
}

int ProPWeyl::length(const W1& a) const { return length(a.mu, a.w); }

std::string ProPWeyl::affine_name(int s) const {
  if (affine_is_finite(s)) return "s" + std::to_string(s + 1);
  if (rs_->components().size() == 1) return "s0";
  return "s0_" + std::to_string(s - rs_->rank_ss() + 1);
}

int ProPWeyl::left_descent(const W1& a) const {
  const int l = length(a);
  if (l == 0) return -1;
  for (int s = 0; s < num_affine_simple(); ++s) {
    const W1& g = aff_[s].lift;  // image in W is an involution
    Vec mu = vec_add(g.mu, rs_->act(g.w, a.mu));
    if (length(mu, rs_->mul(g.w, a.w)) < l) return s;
  }
  throw std::logic_error("element of positive length without a left descent");
}

ProPWeyl::Peeled ProPWeyl::peel(const W1& a) const {
  Peeled p;
  W1 x = a;
  for (int s = left_descent(x); s >= 0; s = left_descent(x)) {
    p.word.push_back(s);
    x = mul(aff_[s].lift_inv, x);
  }
  p.u = x;
  return p;
}

W1 ProPWeyl::omega_part(const W1& a) const {
  W1 x = a;
  x.t = 0;
  for (int s = left_descent(x); s >= 0; s = left_descent(x)) {
    x = mul(aff_[s].lift, x);
    x.t = 0;
  }
  return x;
}

bool ProPWeyl::bruhat_leq(const W1& a0, const W1& b0) const {
  W1 a = a0, b = b0;
  a.t = b.t = 0;
  while (true) {
    int la = length(a), lb = length(b);
    if (la > lb) return false;
    if (lb == 0) return a == b;
    if (la == lb) {
      if (a == b) return true;
      // Equal lengths: comparable only when equal.
      return false;
    }
    int s = left_descent(b);
    W1 sb = mul(aff_[s].lift, b);
    sb.t = 0;
    W1 sa = mul(aff_[s].lift, a);
    sa.t = 0;
    if (length(sa) < la) a = sa;
    b = sb;
  }
}

bool ProPWeyl::bruhat_lt(const W1& a, const W1& b) const {
  W1 x = a, y = b;
  x.t = y.t = 0;
  return !(x == y) && bruhat_leq(x, y);
}

std::vector<W1> ProPWeyl::orbit(const W1& lam) const {
  if (lam.w != 0) throw std::invalid_argument("orbit: element is not in Lambda(1)");
  std::set<W1> s;
  for (int w = 0; w < rs_->order(); ++w) s.insert(W1{rs_->act(w, lam.mu), zk_.act(w, lam.t), 0});
  return {s.begin(), s.end()};
}

LambdaPrimeAlpha ProPWeyl::lambda_prime_alpha(int i) const {
  if (i < 0 || i >= rs_->rank_ss()) throw std::invalid_argument("lambda_prime_alpha: not a simple root");
  LambdaPrimeAlpha l;
  l.translation = lambda(rs_->coroot(i));
  auto v = zk_.coroot_values(i);
  std::set<int> s(v.begin(), v.end());
  s.insert(0);
  l.finite.assign(s.begin(), s.end());
  return l;
}

ProPWeyl::OmegaWord ProPWeyl::omega_decompose(const W1& u) const {
  if (length(u) != 0) throw std::invalid_argument("omega_decompose: element has positive length");
  const int n = rs_->lattice_rank();
  OmegaWord ow;
  W1 g = identity();
  std::size_t j = 0;
  for (int a = 0; a < n; ++a) {
    if (omega_d_[a] == 1) continue;
    long long c = 0;
    for (int b = 0; b < n; ++b) c += omega_U_[a][b] * u.mu[b];
    if (omega_d_[a] != 0) c = mod(c, omega_d_[a]);
    ow.exps.push_back(c);
    g = mul(g, pow(omega_gens_[j++].lift, c));
  }
  W1 rest = mul(inv(g), u);
  if (rest.w != 0 || rest.mu != Vec{}) throw std::logic_error("omega_decompose: residual outside Z_kappa");
  ow.t = rest.t;
  return ow;
}

std::vector<W1> ProPWeyl::elements_up_to_length(int L, int omega_radius, bool with_zk) const {
  std::vector<W1> base{identity()};
  for (const auto& g : omega_gens_) {
    std::vector<W1> next;
    long long lo = g.order == 0 ? -omega_radius : 0, hi = g.order == 0 ? omega_radius : g.order - 1;
    for (const W1& b : base)
      for (long long e = lo; e <= hi; ++e) next.push_back(mul(b, pow(g.lift, e)));
    base = next;
  }
  std::set<W1> all;
  std::vector<W1> frontier;
  for (const W1& b : base)
    for (int t = 0; t < zk_.size(); ++t) {
      W1 x = mul(from_t(t), b);
      if (all.insert(x).second) frontier.push_back(x);
    }
  for (int l = 1; l <= L; ++l) {
    std::vector<W1> next;
    for (const W1& x : frontier)
      for (int s = 0; s < num_affine_simple(); ++s) {
        W1 y = mul(aff_[s].lift, x);
        if (length(y) == l && all.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<W1> out;
  for (const W1& x : all)
    if (with_zk || x.t == 0) out.push_back(x);
  std::stable_sort(out.begin(), out.end(), [&](const W1& a, const W1& b) { return length(a) < length(b); });
  return out;
}

std::vector<W1> ProPWeyl::lambdas_up_to_height(long long h, bool with_zk) const {
  std::vector<W1> out;
  for (const Vec& mu : rs_->cochars_up_to_height(h))
    for (int t = 0; t < (with_zk ? zk_.size() : 1); ++t) out.push_back(lambda(mu, t));
  return out;
}

std::string ProPWeyl::to_string(const W1& a) const {
  std::string s = "(";
  for (int i = 0; i < n(); ++i) s += (i ? "," : "") + std::to_string(a.mu[i]);
  s += ")";
  if (zk_.size() > 1) {
    s += "t(";
    auto c = zk_.coords(a.t);
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    s += ")";
  }
  if (a.w != 0) {
    s += "n";
    for (int i : rs_->element(a.w).word) s += "s" + std::to_string(i + 1);
  }
  return s;
}

}  // namespace prophecke
