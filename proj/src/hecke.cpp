#include "prophecke/hecke.hpp"

#include <algorithm>
#include <stdexcept>

namespace prophecke {

void HeckeElement::add_term(const Field& F, const W1& w, Fe c) {
  if (c == 0) return;
  auto [it, inserted] = m_.try_emplace(w, c);
  if (inserted) return;
  it->second = F.add(it->second, c);
  if (it->second == 0) m_.erase(it);
}

void HeckeElement::add(const Field& F, const HeckeElement& o, Fe scale) {
  if (scale == 0) return;
  for (const auto& [w, c] : o.m_) add_term(F, w, F.mul(c, scale));
}

HeckeAlgebra::HeckeAlgebra(std::shared_ptr<const ProPWeyl> W, std::shared_ptr<const Field> F, HeckeOptions opt)
    : W_(std::move(W)), F_(std::move(F)) {
  const ZKappa& zk = W_->zk();
  for (int d : zk.orders())
    if (d % static_cast<int>(F_->p()) == 0)
      throw std::invalid_argument("Z_kappa order divisible by the characteristic");
  for (int s = 0; s < W_->num_affine_simple(); ++s) {
    HeckeElement c;
    auto it = opt.c_s.find(s);
    if (it != opt.c_s.end()) {
      for (auto [t, v] : it->second) {
        if (t < 0 || t >= zk.size()) throw std::invalid_argument("c_s override: support outside Z_kappa");
        c.add_term(*F_, W_->from_t(t), v);
      }
    } else {
      for (int t : W_->c_s_terms(s)) c.add_term(*F_, W_->from_t(t), 1);
    }
    std::vector<std::pair<int, Fe>> terms;
    for (const auto& [w, v] : c.terms()) terms.emplace_back(w.t, v);
    std::sort(terms.begin(), terms.end());
    cs_.push_back(c);
    cs_terms_.push_back(terms);
  }
}

HeckeElement HeckeAlgebra::add(const HeckeElement& a, const HeckeElement& b) const {
  HeckeElement r = a;
  r.add(*F_, b);
  return r;
}

HeckeElement HeckeAlgebra::sub(const HeckeElement& a, const HeckeElement& b) const {
  HeckeElement r = a;
  r.add(*F_, b, F_->neg(1));
  return r;
}

HeckeElement HeckeAlgebra::scale(Fe c, const HeckeElement& a) const {
  HeckeElement r;
  r.add(*F_, a, c);
  return r;
}

const ProPWeyl::Peeled& HeckeAlgebra::peeled(const W1& w) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = peel_cache_.find(w);
    if (it != peel_cache_.end()) return it->second;
  }
  ProPWeyl::Peeled p = W_->peel(w);
  std::lock_guard<std::mutex> lk(mu_);
  return peel_cache_.try_emplace(w, std::move(p)).first->second;
}

HeckeElement HeckeAlgebra::shift_left(const W1& u, const HeckeElement& x) const {
  HeckeElement r;
  for (const auto& [w, c] : x.terms()) r.add_term(*F_, W_->mul(u, w), c);
  return r;
}

HeckeElement HeckeAlgebra::shift_right(const HeckeElement& x, const W1& u) const {
  HeckeElement r;
  for (const auto& [w, c] : x.terms()) r.add_term(*F_, W_->mul(w, u), c);
  return r;
}

HeckeElement HeckeAlgebra::c_times(int s, const HeckeElement& x) const {
  HeckeElement r;
  for (const auto& [t, v] : cs_terms_[s])
    for (const auto& [w, c] : x.terms()) r.add_term(*F_, W_->mul(W_->from_t(t), w), F_->mul(v, c));
  return r;
}

HeckeElement HeckeAlgebra::left_mul_simple(int s, const HeckeElement& x) const {
  HeckeElement r;
  const W1& g = W_->affine_lift(s);
  for (const auto& [w, c] : x.terms()) {
    W1 gw = W_->mul(g, w);
    if (W_->length(gw) > W_->length(w)) {
      r.add_term(*F_, gw, c);
    } else {
      for (const auto& [t, v] : cs_terms_[s]) r.add_term(*F_, W_->mul(W_->from_t(t), w), F_->mul(v, c));
    }
  }
  return r;
}

HeckeElement HeckeAlgebra::star_left(int s, const HeckeElement& x) const {
  HeckeElement r = left_mul_simple(s, x);
  r.add(*F_, c_times(s, x), F_->neg(1));
  return r;
}

HeckeElement HeckeAlgebra::left_mul_basis(const W1& v, const HeckeElement& x) const {
  const auto& p = peeled(v);
  HeckeElement y = shift_left(p.u, x);
  for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) y = left_mul_simple(*it, y);
  return y;
}

HeckeElement HeckeAlgebra::right_mul_basis(const HeckeElement& x, const W1& v) const {
  const auto& p = peeled(v);
  HeckeElement y = x;
  for (int s : p.word) {
    HeckeElement r;
    const W1& g = W_->affine_lift(s);
    for (const auto& [w, c] : y.terms()) {
      W1 wg = W_->mul(w, g);
      if (W_->length(wg) > W_->length(w)) {
        r.add_term(*F_, wg, c);
      } else {
        for (const auto& [t, val] : cs_terms_[s]) r.add_term(*F_, W_->mul(w, W_->from_t(t)), F_->mul(val, c));
      }
    }
    y = std::move(r);
  }
  return shift_right(y, p.u);
}

HeckeElement HeckeAlgebra::mul(const HeckeElement& a, const HeckeElement& b) const {
  HeckeElement r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [v, c] : a.terms()) r.add(*F_, left_mul_basis(v, b), c);
  return r;
}

HeckeElement HeckeAlgebra::t_star(const W1& w) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = star_cache_.find(w);
    if (it != star_cache_.end()) return it->second;
  }
  const auto& p = peeled(w);
  HeckeElement y = T(p.u);
  for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) y = star_left(*it, y);
  std::lock_guard<std::mutex> lk(mu_);
  return star_cache_.try_emplace(w, y).first->second;
}

HeckeElement HeckeAlgebra::e_of(const W1& w) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = e_cache_.find(w);
    if (it != e_cache_.end()) return it->second;
  }
  // Alcove walk A_0 -> w A_0 along w = n~_{s_1} ... n~_{s_k} u.  A crossing
  // that moves towards the anti-dominant chamber contributes T, the others T*.
  const auto& p = peeled(w);
  const RootSystem& R = rs();
  std::vector<char> star(p.word.size(), 0);
  int lin = R.identity();
  for (std::size_t i = 0; i < p.word.size(); ++i) {
    int s = p.word[i];
    int gamma = R.root_image(lin, W_->affine_root(s));
    int dir = W_->affine_is_finite(s) ? -W_->alcove_sign() : W_->alcove_sign();
    if (!R.positive(gamma)) dir = -dir;
    star[i] = dir > 0;
    lin = R.mul(lin, W_->affine_lift(s).w);
  }
  HeckeElement y = T(p.u);
  for (std::size_t i = p.word.size(); i-- > 0;) y = star[i] ? star_left(p.word[i], y) : left_mul_simple(p.word[i], y);
  std::lock_guard<std::mutex> lk(mu_);
  return e_cache_.try_emplace(w, y).first->second;
}

HeckeElement HeckeAlgebra::e_by_decomposition(const W1& lam1, const W1& lam2) const {
  return mul(T(lam1), t_star(lam2));
}

bool HeckeAlgebra::same_closed_chamber(const Vec& mu1, const Vec& mu2) const {
  const RootSystem& R = rs();
  for (int w = 0; w < R.order(); ++w)
    if (R.in_chamber(w, mu1) && R.in_chamber(w, mu2)) return true;
  return false;
}

AElement HeckeAlgebra::a_mul(const AElement& x, const AElement& y) const {
  AElement r;
  for (const auto& [l1, c1] : x.terms())
    for (const auto& [l2, c2] : y.terms()) {
      if (l1.w != 0 || l2.w != 0) throw std::invalid_argument("a_mul: argument outside Lambda(1)");
      if (!same_closed_chamber(l1.mu, l2.mu)) continue;
      r.add_term(*F_, W_->mul(l1, l2), F_->mul(c1, c2));
    }
  return r;
}

HeckeElement HeckeAlgebra::a_to_h(const AElement& x) const {
  HeckeElement r;
  for (const auto& [l, c] : x.terms()) r.add(*F_, e_of(l), c);
  return r;
}

AElement HeckeAlgebra::z_of_a(const W1& lam) const {
  if (lam.w != 0 || lam.t != 0) throw std::invalid_argument("z_of: element is not in Lambda_S(1)");
  AElement z;
  for (const W1& l : W_->orbit(lam)) z.add_term(*F_, l, 1);
  return z;
}

HeckeElement HeckeAlgebra::z_of(const W1& lam) const { return a_to_h(z_of_a(lam)); }

HeckeElement HeckeAlgebra::zeta(const HeckeElement& x) const {
  HeckeElement r;
  for (const auto& [w, c] : x.terms()) r.add_term(*F_, W_->inv(w), c);
  return r;
}

HeckeElement HeckeAlgebra::iota(const HeckeElement& x) const {
  HeckeElement r;
  for (const auto& [w, c] : x.terms()) r.add(*F_, t_star(w), W_->length(w) % 2 ? F_->neg(c) : c);
  return r;
}

HeckeElement HeckeAlgebra::f_inv(const HeckeElement& x) const { return iota(zeta(x)); }

namespace {

// Deterministic choice of a maximal-length term.
W1 leading_term(const ProPWeyl& W, const HeckeElement& x) {
  W1 best{};
  int bl = -1;
  for (const auto& [w, c] : x.terms()) {
    int l = W.length(w);
    if (l > bl || (l == bl && w < best)) {
      bl = l;
      best = w;
    }
  }
  return best;
}

}  // namespace

HeckeElement HeckeAlgebra::e_coords(const HeckeElement& x0) const {
  HeckeElement out, x = x0;
  while (!x.is_zero()) {
    W1 y = leading_term(*W_, x);
    Fe c = x.coeff(y);
    out.add_term(*F_, y, c);
    x.add(*F_, e_of(y), F_->neg(c));
  }
  return out;
}

HeckeElement HeckeAlgebra::star_coords(const HeckeElement& x0) const {
  HeckeElement out, x = x0;
  while (!x.is_zero()) {
    W1 y = leading_term(*W_, x);
    Fe c = x.coeff(y);
    out.add_term(*F_, y, c);
    x.add(*F_, t_star(y), F_->neg(c));
  }
  return out;
}

std::vector<std::pair<W1, Fe>> HeckeAlgebra::sorted_terms(const HeckeElement& x) const {
  std::vector<std::pair<W1, Fe>> v(x.terms().begin(), x.terms().end());
  std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
    int la = W_->length(a.first), lb = W_->length(b.first);
    if (la != lb) return la < lb;
    const auto& wa = rs().element(a.first.w).word;
    const auto& wb = rs().element(b.first.w).word;
    if (wa != wb) return wa < wb;
    if (a.first.mu != b.first.mu) return a.first.mu < b.first.mu;
    return a.first.t < b.first.t;
  });
  return v;
}

std::string HeckeAlgebra::to_string(const HeckeElement& x, const std::string& letter) const {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [w, c] : sorted_terms(x)) {
    if (!s.empty()) s += " + ";
    if (c != 1) s += F_->to_string(c) + "*";
    s += letter + "[" + W_->to_string(w) + "]";
  }
  return s;
}

}  // namespace prophecke
