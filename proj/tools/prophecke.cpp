// Command-line front end: verify suites, evaluate expressions, list presets.
//
// Exit codes: 0 all pass, 2 any fail, 3 inconclusive without fail, 1 usage
// or configuration error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "prophecke/config.hpp"
#include "prophecke/expr.hpp"
#include "prophecke/suites.hpp"

using namespace prophecke;

namespace {

int usage_error(const std::string& msg) {
  std::cerr << "prophecke: " << msg << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations and lemma verification for pro-p Iwahori-Hecke algebras at q = 0"};
  app.require_subcommand(0, 1);

  std::string config_top;
  app.add_option("--config", config_top, "JSON configuration file");
  bool list_suites = false;
  app.add_flag("--list-suites", list_suites, "List the verification suites and exit");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string config_verify, suite, format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<int> max_length, nu_height, box_radius;
  int samples = 0, threads = 0;
  bool timing = false;
  verify->add_option("--config", config_verify, "JSON configuration file");
  verify->add_option("--suite", suite, "Suite name, or 'all'")->required();
  verify->add_option("--seed", seed, "Override the config seed");
  verify->add_option("--max-length", max_length, "Override bounds.max_length")->check(CLI::Range(0, 64));
  verify->add_option("--nu-height", nu_height, "Override bounds.nu_height")->check(CLI::Range(0, 64));
  verify->add_option("--box-radius", box_radius, "Override bounds.box_radius")->check(CLI::Range(0, 16));
  verify->add_option("--samples", samples, "Sample count for randomized checks (0 keeps the default)")
      ->check(CLI::Range(0, 100000000));
  verify->add_option("--threads", threads, "Worker threads (0: PROPHECKE_THREADS or hardware)")->check(CLI::Range(0, 1024));
  verify->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  verify->add_flag("--timing", timing, "Include per-instance timings (breaks byte-identical output)");

  auto* compute = app.add_subcommand("compute", "Evaluate an expression in H");
  std::string config_compute, expression, basis = "T";
  compute->add_option("--config", config_compute, "JSON configuration file");
  compute->add_option("expression", expression, "Expression, e.g. \"T[s1]*T[s1]\"")->required();
  compute->add_option("--basis", basis, "Output basis")->check(CLI::IsMember({"T", "Tstar", "E"}));

  auto* presets = app.add_subcommand("presets", "List the built-in root data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (list_suites) {
    for (const SuiteInfo& s : suite_list()) std::cout << s.name << "\t" << s.statement << "\n";
    return 0;
  }
  if (*presets) {
    for (const std::string& name : RootDatum::preset_names()) {
      RootDatum d = RootDatum::preset(name);
      std::cout << name << "\tsemisimple rank " << d.rank_ss << ", lattice rank " << d.lattice_rank << "\n";
    }
    return 0;
  }

  auto load = [&](const std::string& sub) -> std::optional<Context> {
    const std::string& path = sub.empty() ? config_top : sub;
    if (path.empty()) {
      usage_error("--config is required");
      return std::nullopt;
    }
    try {
      return build_context(load_config(path));
    } catch (const ConfigError& e) {
      usage_error(path + ": " + e.what());
      return std::nullopt;
    }
  };

  if (*verify) {
    if (suite != "all" && !suite_exists(suite)) return usage_error("unknown suite '" + suite + "' (see --list-suites)");
    auto ctx = load(config_verify);
    if (!ctx) return 1;
    SuiteOptions opt;
    opt.seed = seed;
    opt.max_length = max_length;
    opt.nu_height = nu_height;
    opt.box_radius = box_radius;
    opt.samples = samples;
    opt.threads = threads;
    std::vector<Report> reports;
    try {
      reports = run_suite(*ctx, suite, opt);
    } catch (const std::invalid_argument& e) {
      return usage_error(e.what());
    }
    if (format == "json") std::cout << reports_json(*ctx, reports, timing).dump(2) << "\n";
    else std::cout << reports_text(reports, timing);
    return exit_code(reports);
  }

  if (*compute) {
    auto ctx = load(config_compute);
    if (!ctx) return 1;
    try {
      HeckeElement x = evaluate_expression(*ctx->s.H, expression);
      PrintBasis b = basis == "Tstar" ? PrintBasis::kTstar : basis == "E" ? PrintBasis::kE : PrintBasis::kT;
      std::cout << print_element(*ctx->s.H, x, b) << "\n";
    } catch (const ParseError& e) {
      std::cerr << expression << "\n" << std::string(e.pos(), ' ') << "^\n";
      return usage_error(e.what());
    } catch (const std::exception& e) {
      return usage_error(e.what());
    }
    return 0;
  }

  std::cout << app.help();
  return 1;
}
