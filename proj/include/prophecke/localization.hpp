#ifndef PROPHECKE_LOCALIZATION_HPP_
#define PROPHECKE_LOCALIZATION_HPP_

// H localized at E(lambda_0), lambda_0 regular in the closed chamber
// C = v(Lambda^+(1)).
//
// After inverting E(lambda_0) the algebra A becomes the group algebra
// C[Lambda(1)] through tau_nu = E(lambda_0)^{-k} E(lambda_0^k nu) (k large), and
// H becomes free of rank |W_0| over it.  At q = 0 the set {T_{n_w}} is not an
// A-basis of H itself: E(lambda) T_{n_w} can vanish or collapse for lambda in
// the wrong chamber, so every module-level construction goes through this
// localization.
//
// Left side: E(lambda_0) E(y) = E(lambda_0 y) if lengths add and 0 otherwise,
// so E(y) = tau_nu E(y_w) with y = nu y_w when y is C-positive and E(y) = 0 in
// the localization otherwise.  Right side: transported through the
// anti-involution f, which maps E(lambda) to (-1)^{l(lambda)} E(lambda^{-1}).

#include <memory>
#include <vector>

#include "prophecke/hecke.hpp"

namespace prophecke {

enum class Side { kLeft, kRight };

class ChamberLocalization {
 public:
  ChamberLocalization(std::shared_ptr<const HeckeAlgebra> H, int chamber, Side side);

  const HeckeAlgebra& H() const { return *H_; }
  int chamber() const { return chamber_; }
  Side side() const { return side_; }
  // The regular element lambda_0 of C (trivial Z_kappa part).
  const W1& lambda0() const { return lambda0_; }
  // Basis element b_w: E(y_w) on the left, f(E(y'_w)) on the right.
  const HeckeElement& basis(int w) const { return basis_[w]; }
  const W1& basis_index(int w) const { return index_[w]; }

  // Left: x = sum_w tau(a_w) b_w.  Right: x = sum_w b_w tau(a_w).
  // a_w in C[Lambda(1)], stored as Lambda(1) -> F.
  std::vector<AElement> coords(const HeckeElement& x) const;

  // Left side only: l(lambda_0 y) = l(lambda_0) + l(y).
  bool positive(const W1& y) const;

 private:
  std::vector<AElement> left_coords(const HeckeElement& x) const;

  std::shared_ptr<const HeckeAlgebra> H_;
  int chamber_;
  Side side_;
  W1 lambda0_;
  std::vector<W1> index_;
  std::vector<HeckeElement> basis_;
  std::unique_ptr<ChamberLocalization> mirror_;  // left localization at -C
};

// Chamber index of -C when C = v(Lambda^+(1)).
int opposite_chamber(const RootSystem& rs, int v);

}  // namespace prophecke

#endif  // PROPHECKE_LOCALIZATION_HPP_
