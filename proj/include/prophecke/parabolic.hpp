#ifndef PROPHECKE_PARABOLIC_HPP_
#define PROPHECKE_PARABOLIC_HPP_

// Levi Hecke algebras H_J, the subalgebras H_J^+ and H_J^- and the maps
// j_J^{+}, j_J^{+*}, j_J^{-}, j_J^{-*} into H.
//
// H_J^+ is spanned by the T^J_w whose Lambda(1)-part pairs <= 0 with every
// root of Sigma^+ outside Sigma_J, H_J^- by those pairing >= 0.  With this
// orientation j_emptyset^+(H_emptyset^+) = A_{w_Delta} and
// j_emptyset^{-*}(H_emptyset^-) = A_1.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prophecke/hecke.hpp"

namespace prophecke {

struct LeviData {
  std::vector<int> J;  // sorted simple indices
  std::shared_ptr<const RootSystem> rs;
  std::shared_ptr<const ProPWeyl> W;
  std::shared_ptr<const HeckeAlgebra> H;
  std::vector<int> to_ambient;  // Levi W_0 index -> ambient W_0 index
  std::vector<Vec> outside_roots;  // Sigma^+ minus Sigma_J^+, as covectors

  W1 to_ambient_elem(const W1& x) const { return W1{x.mu, x.t, to_ambient[x.w]}; }
};

// Root datum spanned by the simple roots in J on the same lattice.
RootDatum levi_datum(const RootDatum& rd, const std::vector<int>& J);

// zk and ns_squares are the ambient overrides; they are restricted to J.
LeviData levi_algebra(const HeckeAlgebra& H, std::vector<int> J, const std::optional<ZKappaSpec>& zk = std::nullopt,
                      const std::vector<std::optional<int>>& ns_squares = {});

enum class JVariant { kPlus, kPlusStar, kMinus, kMinusStar };
bool variant_is_plus(JVariant v);
bool variant_is_star(JVariant v);
JVariant parse_variant(const std::string& s);

// x is a Levi W(1) element; sign > 0 tests H_J^+, sign < 0 tests H_J^-.
bool plus_minus_membership(const LeviData& ld, const W1& x, int sign);

// j(T^J_w) = T_w, or j(T^{J*}_w) = T*_w for the starred variants.  Throws
// std::invalid_argument if the support leaves the region.
HeckeElement j_map(const LeviData& ld, const HeckeAlgebra& H, JVariant v, const HeckeElement& x);

struct LocalizationCheck {
  bool ok = true;
  int checked = 0;
  int max_power = 0;
  std::string witness;
};
// Every T^J_w with l_J(w) <= bound lands in H_J^- after multiplying by a power
// of E^J(lambda_0).
LocalizationCheck levi_localization_check(const LeviData& ld, const W1& lambda0, int bound, int max_power = 16);

}  // namespace prophecke

#endif  // PROPHECKE_PARABOLIC_HPP_
