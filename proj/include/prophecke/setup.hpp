#ifndef PROPHECKE_SETUP_HPP_
#define PROPHECKE_SETUP_HPP_

// One algebra instance: root system, W(1), coefficient field and H.

#include <memory>
#include <optional>
#include <vector>

#include "prophecke/hecke.hpp"

namespace prophecke {

struct AlgebraSetup {
  std::shared_ptr<const RootSystem> rs;
  std::shared_ptr<const ProPWeyl> W;
  std::shared_ptr<const Field> F;
  std::shared_ptr<const HeckeAlgebra> H;
  std::optional<ZKappaSpec> zk;
  std::vector<std::optional<int>> ns_squares;
};

// Smallest p^m, p the characteristic of F_q, with (q - 1) | p^m - 1.
std::uint32_t default_field_order(std::uint32_t q);

// field_order 0 selects the default.  Throws std::invalid_argument if the
// field has the wrong characteristic or lacks the (q-1)-th roots of unity.
AlgebraSetup make_setup(RootDatum rd, std::uint32_t q, std::uint32_t field_order = 0,
                        std::optional<ZKappaSpec> zk = std::nullopt,
                        std::vector<std::optional<int>> ns_squares = {}, HeckeOptions opt = {});
AlgebraSetup make_setup(const std::string& preset, std::uint32_t q, std::uint32_t field_order = 0);

}  // namespace prophecke

#endif  // PROPHECKE_SETUP_HPP_
