#ifndef PROPHECKE_CONFIG_HPP_
#define PROPHECKE_CONFIG_HPP_

// JSON run configuration: the group, q, the coefficient field, Z_kappa and
// lift overrides, the character omega, named modules and truncation bounds.
//
// Field elements are integers 0 <= a < field_order in the digit encoding of
// Field (base-p digits of a polynomial in the fixed generator).  Z_kappa
// elements and characters are coordinate vectors on the cyclic factors.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "prophecke/module.hpp"
#include "prophecke/setup.hpp"

namespace prophecke {

// Schema or consistency violation; the message starts with the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModuleSpec {
  enum class Kind { kA, kH };
  std::string name;
  Kind kind = Kind::kA;
  int dim = 0;
  // kA: support chamber as a reduced word, the lattice basis and Z_kappa
  // generator matrices (a LatticeRep).
  std::vector<int> support;
  std::vector<Mat> lattice, zkappa;
  // kH: matrices of FinHModule::generators in order.
  std::vector<Mat> generators;
  bool operator==(const ModuleSpec&) const = default;
};

struct Bounds {
  int max_length = 4;
  int nu_height = 3;
  int box_radius = 1;  // Omega-exponent box for length enumerations
  bool operator==(const Bounds&) const = default;
};

struct Config {
  std::string preset;               // empty when datum is explicit
  std::optional<RootDatum> datum;
  std::uint32_t q = 0;
  std::optional<std::uint32_t> field_order;
  std::optional<ZKappaSpec> zkappa;
  std::vector<std::optional<std::vector<long long>>> ns_squares;
  std::vector<long long> omega;     // character coordinates; empty is trivial
  std::vector<ModuleSpec> modules;
  Bounds bounds;
  std::uint64_t seed = 0;
  bool operator==(const Config&) const = default;
};

Config parse_config(const nlohmann::json& j);
Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);
nlohmann::json to_json(const Config& c);

struct NamedAModule {
  std::string name;
  int chamber;
  FinAModule module;
};
struct NamedHModule {
  std::string name;
  FinHModule module;
};

// A config resolved against its algebra.
struct Context {
  Config cfg;
  AlgebraSetup s;
  int psi = 0;
  std::vector<NamedAModule> a_modules;
  std::vector<NamedHModule> h_modules;
};

// Builds the algebra and validates the modules; throws ConfigError.
Context build_context(const Config& c);

}  // namespace prophecke

#endif  // PROPHECKE_CONFIG_HPP_
