#ifndef PROPHECKE_HECKE_HPP_
#define PROPHECKE_HECKE_HPP_

// The pro-p Iwahori-Hecke algebra at q = 0 over a finite field: the
// Iwahori-Matsumoto basis T_w, the star basis T*_w, the Bernstein-type basis
// E(w) for the anti-dominant orientation, the commutative subalgebra A, the
// central elements z_lambda and the involutions zeta, iota, f.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "prophecke/field.hpp"
#include "prophecke/prop_weyl.hpp"

namespace prophecke {

// Finitely supported W(1) -> F; zero coefficients are never stored.
class HeckeElement {
 public:
  using Map = std::unordered_map<W1, Fe, W1Hash>;

  HeckeElement() = default;
  static HeckeElement basis(const W1& w) {
    HeckeElement h;
    h.m_[w] = 1;
    return h;
  }

  const Map& terms() const { return m_; }
  bool is_zero() const { return m_.empty(); }
  std::size_t size() const { return m_.size(); }
  Fe coeff(const W1& w) const {
    auto it = m_.find(w);
    return it == m_.end() ? 0 : it->second;
  }
  void add_term(const Field& F, const W1& w, Fe c);
  void add(const Field& F, const HeckeElement& o, Fe scale = 1);
  bool operator==(const HeckeElement& o) const { return m_ == o.m_; }

 private:
  Map m_;
};

// Element of A in E-coordinates: Lambda(1) -> F (stored as W1 with w = e).
using AElement = HeckeElement;

struct HeckeOptions {
  // Override of c_s as a map Z_kappa -> F per simple affine reflection.
  std::map<int, std::map<int, Fe>> c_s;
};

class HeckeAlgebra {
 public:
  HeckeAlgebra(std::shared_ptr<const ProPWeyl> W, std::shared_ptr<const Field> F, HeckeOptions opt = {});

  const ProPWeyl& W() const { return *W_; }
  std::shared_ptr<const ProPWeyl> W_ptr() const { return W_; }
  const Field& F() const { return *F_; }
  std::shared_ptr<const Field> F_ptr() const { return F_; }
  const RootSystem& rs() const { return W_->rs(); }

  HeckeElement one() const { return HeckeElement::basis(W_->identity()); }
  HeckeElement T(const W1& w) const { return HeckeElement::basis(w); }
  // c_s as an element of C[Z_kappa].
  const HeckeElement& c_s(int s) const { return cs_[s]; }

  HeckeElement add(const HeckeElement& a, const HeckeElement& b) const;
  HeckeElement sub(const HeckeElement& a, const HeckeElement& b) const;
  HeckeElement scale(Fe c, const HeckeElement& a) const;
  HeckeElement mul(const HeckeElement& a, const HeckeElement& b) const;

  // T_v * x for a single basis element v.
  HeckeElement left_mul_basis(const W1& v, const HeckeElement& x) const;
  // T_{n~_s} * x.
  HeckeElement left_mul_simple(int s, const HeckeElement& x) const;
  // x * T_v.
  HeckeElement right_mul_basis(const HeckeElement& x, const W1& v) const;

  HeckeElement t_star(const W1& w) const;
  HeckeElement e_of(const W1& w) const;
  // T_{lam1} T*_{lam2}; the caller supplies the splitting.
  HeckeElement e_by_decomposition(const W1& lam1, const W1& lam2) const;

  // A in E-coordinates.
  AElement a_mul(const AElement& x, const AElement& y) const;
  HeckeElement a_to_h(const AElement& x) const;
  // True iff nu(mu1), nu(mu2) lie in a common closed Weyl chamber.
  bool same_closed_chamber(const Vec& mu1, const Vec& mu2) const;

  // z_lambda for lam in Lambda_S(1) (trivial Z_kappa part).
  HeckeElement z_of(const W1& lam) const;
  AElement z_of_a(const W1& lam) const;

  HeckeElement zeta(const HeckeElement& x) const;
  HeckeElement iota(const HeckeElement& x) const;
  HeckeElement f_inv(const HeckeElement& x) const;

  // Coordinates of x in the bases E(w) and T*_w (both unitriangular over T).
  HeckeElement e_coords(const HeckeElement& x) const;
  HeckeElement star_coords(const HeckeElement& x) const;

  // Terms sorted by (length, W_0 word, mu, t).
  std::vector<std::pair<W1, Fe>> sorted_terms(const HeckeElement& x) const;
  std::string to_string(const HeckeElement& x, const std::string& letter = "T") const;

 private:
  const ProPWeyl::Peeled& peeled(const W1& w) const;
  HeckeElement shift_left(const W1& u, const HeckeElement& x) const;   // T_u x, l(u) = 0
  HeckeElement shift_right(const HeckeElement& x, const W1& u) const;  // x T_u, l(u) = 0
  HeckeElement c_times(int s, const HeckeElement& x) const;            // c_s x
  HeckeElement star_left(int s, const HeckeElement& x) const;         // T*_{n~_s} x

  std::shared_ptr<const ProPWeyl> W_;
  std::shared_ptr<const Field> F_;
  std::vector<HeckeElement> cs_;
  std::vector<std::vector<std::pair<int, Fe>>> cs_terms_;

  mutable std::mutex mu_;
  mutable std::unordered_map<W1, ProPWeyl::Peeled, W1Hash> peel_cache_;
  mutable std::unordered_map<W1, HeckeElement, W1Hash> star_cache_, e_cache_;
};

}  // namespace prophecke

#endif  // PROPHECKE_HECKE_HPP_
