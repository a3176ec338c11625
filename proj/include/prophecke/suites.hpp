#ifndef PROPHECKE_SUITES_HPP_
#define PROPHECKE_SUITES_HPP_

// Verification suites.  A suite expands into independent instances that run
// on a work pool; reports come back sorted by (suite, instance) so identical
// config and seed give identical output.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prophecke/config.hpp"
#include "prophecke/universal.hpp"

namespace prophecke {

struct SuiteInfo {
  std::string name;
  std::string statement;  // what the suite verifies
};
const std::vector<SuiteInfo>& suite_list();
bool suite_exists(const std::string& name);

struct SuiteOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  std::optional<int> max_length, nu_height, box_radius;
  // Sample count for randomized parts; 0 keeps the suite default.
  int samples = 0;
  // 0 reads PROPHECKE_THREADS, else the hardware concurrency.
  int threads = 0;
};

struct Report {
  std::string suite;
  std::string instance;
  Verdict verdict = Verdict::kPass;
  long long checked = 0;
  std::string witness;  // counterexample, certificate failure or exceeded bound
  std::string detail;
  double millis = 0;
};

// Throws std::invalid_argument for an unknown suite name; "all" runs every suite.
std::vector<Report> run_suite(const Context& ctx, const std::string& suite, const SuiteOptions& opt);

// 0 all pass, 2 any fail, 3 inconclusive without fail.
int exit_code(const std::vector<Report>& reports);

nlohmann::json reports_json(const Context& ctx, const std::vector<Report>& reports, bool timing);
std::string reports_text(const std::vector<Report>& reports, bool timing);

int pool_threads(int requested);

}  // namespace prophecke

#endif  // PROPHECKE_SUITES_HPP_
