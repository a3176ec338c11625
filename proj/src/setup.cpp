#include "prophecke/setup.hpp"

#include <stdexcept>

namespace prophecke {

std::uint32_t default_field_order(std::uint32_t q) {
  std::uint32_t p = 0, f = 0;
  if (!prime_power(q, p, f)) throw std::invalid_argument("q is not a prime power");
  std::uint32_t m = Field::minimal_degree(p, q - 1);
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < m; ++i) order *= p;
  return static_cast<std::uint32_t>(order);
}

AlgebraSetup make_setup(RootDatum rd, std::uint32_t q, std::uint32_t field_order, std::optional<ZKappaSpec> zk,
                        std::vector<std::optional<int>> ns_squares, HeckeOptions opt) {
  std::uint32_t p = 0, f = 0, fp = 0, fm = 0;
  if (!prime_power(q, p, f)) throw std::invalid_argument("q is not a prime power");
  if (field_order == 0) field_order = default_field_order(q);
  if (!prime_power(field_order, fp, fm)) throw std::invalid_argument("field_order is not a prime power");
  if (fp != p) throw std::invalid_argument("field_order must be a power of the characteristic of q");
  if ((field_order - 1) % (q - 1) != 0) throw std::invalid_argument("field_order - 1 must be divisible by q - 1");
  rd.validate();
  AlgebraSetup s;
  s.rs = std::make_shared<RootSystem>(std::move(rd));
  s.W = std::make_shared<ProPWeyl>(s.rs, static_cast<int>(q), zk, ns_squares);
  s.F = std::make_shared<Field>(field_order);
  s.H = std::make_shared<HeckeAlgebra>(s.W, s.F, std::move(opt));
  s.zk = std::move(zk);
  s.ns_squares = std::move(ns_squares);
  return s;
}

AlgebraSetup make_setup(const std::string& preset, std::uint32_t q, std::uint32_t field_order) {
  return make_setup(RootDatum::preset(preset), q, field_order);
}

}  // namespace prophecke
