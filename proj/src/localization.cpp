#include "prophecke/localization.hpp"

#include <stdexcept>

namespace prophecke {

int opposite_chamber(const RootSystem& rs, int v) { return rs.mul(v, rs.longest()); }

ChamberLocalization::ChamberLocalization(std::shared_ptr<const HeckeAlgebra> H, int chamber, Side side)
    : H_(std::move(H)), chamber_(chamber), side_(side) {
  const ProPWeyl& W = H_->W();
  const RootSystem& R = W.rs();
  if (chamber < 0 || chamber >= R.order()) throw std::invalid_argument("localization: chamber out of range");
  lambda0_ = W.lambda(R.act(chamber, R.regular_dominant()));
  if (side == Side::kRight) {
    mirror_ = std::make_unique<ChamberLocalization>(H_, opposite_chamber(R, chamber), Side::kLeft);
    for (int w = 0; w < R.order(); ++w) {
      index_.push_back(mirror_->basis_index(w));
      basis_.push_back(H_->f_inv(mirror_->basis(w)));
    }
    return;
  }
  for (int w = 0; w < R.order(); ++w) {
    W1 y = W.canonical_lift(w);
    if (!positive(y)) y = W.mul(lambda0_, y);
    if (!positive(y)) throw std::logic_error("localization: no positive lift");
    index_.push_back(y);
    basis_.push_back(H_->e_of(y));
  }
}

bool ChamberLocalization::positive(const W1& y) const {
  const ProPWeyl& W = H_->W();
  return W.length(W.mul(lambda0_, y)) == W.length(lambda0_) + W.length(y);
}

std::vector<AElement> ChamberLocalization::left_coords(const HeckeElement& x) const {
  const ProPWeyl& W = H_->W();
  const Field& F = H_->F();
  std::vector<AElement> out(W.rs().order());
  HeckeElement e = H_->e_coords(x);
  for (const auto& [y, c] : e.terms()) {
    if (!positive(y)) continue;
    W1 nu = W.mul(y, W.inv(index_[y.w]));
    out[y.w].add_term(F, nu, c);
  }
  return out;
}

std::vector<AElement> ChamberLocalization::coords(const HeckeElement& x) const {
  if (side_ == Side::kLeft) return left_coords(x);
  // f(x) = sum_w tau'(a_w) b'_w at -C, and f(tau'_nu) = (-1)^{l(nu)} tau_{nu^{-1}}.
  const ProPWeyl& W = H_->W();
  const Field& F = H_->F();
  std::vector<AElement> m = mirror_->left_coords(H_->f_inv(x));
  std::vector<AElement> out(m.size());
  for (std::size_t w = 0; w < m.size(); ++w)
    for (const auto& [nu, c] : m[w].terms()) out[w].add_term(F, W.inv(nu), W.length(nu) % 2 ? F.neg(c) : c);
  return out;
}

}  // namespace prophecke
