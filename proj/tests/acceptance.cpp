// Acceptance run: one PASS/FAIL line per criterion.  Runtime limits are part
// of the criteria and are enforced on wall-clock time.
//
//   acceptance [--corpus DIR] [--only N] [--verbose]

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "prophecke/config.hpp"
#include "prophecke/suites.hpp"

using namespace prophecke;

namespace {

std::string corpus_dir = PROPHECKE_CORPUS_DIR;
bool verbose = false;

struct Run {
  std::string label;  // group and options, for messages
  std::vector<Report> reports;
};

class Criterion {
 public:
  Criterion(int id, std::string title, double limit_s) : id_(id), title_(std::move(title)), limit_(limit_s) {}

  // Runs a suite and records its reports.
  const std::vector<Report>& run(const Context& ctx, const std::string& label, const std::string& suite,
                                 const SuiteOptions& opt = {}) {
    runs_.push_back({label + " " + suite, run_suite(ctx, suite, opt)});
    return runs_.back().reports;
  }
  // Extra requirement on top of all reports passing.
  void require(bool ok, const std::string& what) {
    if (!ok) problems_.push_back(what);
  }

  bool finish(double seconds) {
    long long reports = 0, checked = 0;
    for (const Run& r : runs_)
      for (const Report& rep : r.reports) {
        ++reports;
        checked += rep.checked;
        if (rep.verdict != Verdict::kPass)
          problems_.push_back(r.label + " / " + rep.instance + ": " + verdict_name(rep.verdict) + " (" + rep.witness + ")");
      }
    if (limit_ > 0 && seconds > limit_)
      problems_.push_back("runtime " + std::to_string(seconds) + " s exceeds " + std::to_string(limit_) + " s");
    const bool ok = problems_.empty();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f s", seconds);
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id_ << ": " << title_ << "  [" << reports << " reports, "
              << checked << " checks, " << buf << "]\n";
    for (const std::string& p : problems_) std::cout << "    " << p << "\n";
    if (verbose)
      for (const Run& r : runs_) std::cout << "    ran " << r.label << ": " << r.reports.size() << " reports\n";
    std::cout.flush();
    return ok;
  }

 private:
  int id_;
  std::string title_;
  double limit_;
  std::vector<Run> runs_;
  std::vector<std::string> problems_;
};

std::map<std::string, Context> cache;

// Corpus configs carry the named modules; other q values use the bare preset.
const Context& group(const std::string& name, int q = 3) {
  std::string key = name + "/" + std::to_string(q);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Config cfg;
  if (q == 3) {
    std::string file = name;
    for (char& c : file) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    cfg = load_config(corpus_dir + "/" + file + "_q3.json");
  } else {
    cfg = parse_config_text("{\"group\": \"" + name + "\", \"q\": " + std::to_string(q) + ", \"seed\": 1}");
  }
  return cache.emplace(key, build_context(cfg)).first->second;
}

std::string label(const std::string& g, int q = 3) { return g + " q=" + std::to_string(q); }

SuiteOptions with(std::optional<int> L, std::optional<int> h = std::nullopt, int samples = 0) {
  SuiteOptions o;
  o.max_length = L;
  o.nu_height = h;
  o.samples = samples;
  return o;
}

long long total_checked(const std::vector<Report>& rs) {
  long long n = 0;
  for (const Report& r : rs) n += r.checked;
  return n;
}

const std::vector<std::string> kAll = {"SL2", "GL2", "SL3", "Sp4"};

void c1(Criterion& c) {
  for (int q : {2, 3, 4})
    for (const char* g : {"SL2", "GL2"}) {
      const auto& rs = c.run(group(g, q), label(g, q), "assoc", with(4));
      for (const Report& r : rs) c.require(r.instance.find("all-triples") != std::string::npos, label(g, q) + ": not exhaustive");
      c.run(group(g, q), label(g, q), "star-braid", with(4));
    }
  for (const char* g : {"SL3", "Sp4"}) {
    const auto& rs = c.run(group(g), label(g), "assoc", with(6, std::nullopt, 10000));
    c.require(total_checked(rs) == 10000, label(g) + ": expected 10000 random triples");
    c.run(group(g), label(g), "star-braid", with(4));
  }
}

void c2(Criterion& c) {
  for (const char* g : {"SL2", "GL2", "SL3"}) {
    c.run(group(g), label(g), "e-basis", with(6));
    c.run(group(g), label(g), "a-product", with(6));
  }
}

void c3(Criterion& c) {
  for (const auto& g : kAll) {
    c.run(group(g), label(g), "center", with(std::nullopt, 3));
    c.run(group(g), label(g), "center-mult", with(std::nullopt, 3));
  }
}

void c4(Criterion& c) {
  for (const auto& g : kAll) {
    const auto& rs = c.run(group(g), label(g), "support-decomp", with(std::nullopt, std::nullopt, 50));
    bool seeded = false;
    for (const Report& r : rs)
      if (r.instance == "seeded modules in C") {
        seeded = true;
        c.require(std::atoi(r.detail.c_str()) >= 50, label(g) + ": fewer than 50 modules (" + r.detail + ")");
        c.require(r.detail.find("dims 1-") != std::string::npos, label(g) + ": dimension range " + r.detail);
        const auto at = r.detail.find("dims 1-");
        if (at != std::string::npos) c.require(std::atoi(r.detail.c_str() + at + 7) <= 6, label(g) + ": dimension above 6");
      }
    c.require(seeded, label(g) + ": no seeded modules");
  }
}

void c5(Criterion& c) {
  for (const auto& g : kAll) {
    auto t0 = std::chrono::steady_clock::now();
    const auto& rs = c.run(group(g), label(g), "hom-tensor");
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(s <= 60, label(g) + ": " + std::to_string(s) + " s exceeds 60 s");
    int modules = 0;
    for (const Report& r : rs) modules += r.instance.rfind("characters:", 0) != 0;
    c.require(modules >= 4, label(g) + ": corpus too small");
  }
}

void c6(Criterion& c) {
  for (const auto& g : kAll) {
    c.run(group(g), label(g), "switch-aw");
    c.run(group(g), label(g), "extend-aj");
  }
}

void c7(Criterion& c) {
  for (const auto& g : kAll) c.run(group(g), label(g), "j-maps", with(std::nullopt, 4));
  const auto& rs = c.run(group("SL3"), label("SL3"), "levi-localization");
  c.require(rs.size() == 4, "SL3: levi-localization must cover all four J");
}

void c8(Criterion& c) {
  for (const auto& g : kAll) {
    const auto& rs = c.run(group(g), label(g), "involutions", with(5, std::nullopt, 5000));
    for (const Report& r : rs)
      if (r.instance == "zeta and iota on seeded pairs") c.require(r.checked == 10000, label(g) + ": expected 5000 pairs");
  }
}

void c9(Criterion& c) {
  for (const char* g : {"SL2", "SL3"}) {
    c.run(group(g), label(g), "xj-chain", with(std::nullopt, 4));
    c.run(group(g), label(g), "xj-center", with(std::nullopt, 4));
    c.run(group(g), label(g), "tau-cw");
    const auto& cw = c.run(group(g), label(g), "cw-regular", with(std::nullopt, std::nullopt, 1000));
    c.require(total_checked(cw) == 1000, label(g) + ": expected 1000 series");
    const auto& fq = c.run(group(g), label(g), "filtration-quotient", with(std::nullopt, 3));
    const std::size_t steps = std::string(g) == "SL2" ? 2 : 6;
    c.require(fq.size() == steps, label(g) + ": expected " + std::to_string(steps) + " filtration steps");
  }
}

void c10(Criterion& c) {
  for (const auto& g : kAll) {
    const auto& rs = c.run(group(g), label(g), "unit-injectivity");
    c.require(!rs.empty(), label(g) + ": no corpus module satisfies the hypotheses");
  }
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--corpus") && i + 1 < argc) corpus_dir = argv[++i];
    else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--verbose")) verbose = true;
    else {
      std::cerr << "usage: acceptance [--corpus DIR] [--only N] [--verbose]\n";
      return 1;
    }
  }
  struct Item {
    int id;
    const char* title;
    double limit;
    std::function<void(Criterion&)> body;
  };
  const std::vector<Item> items = {
      {1, "associativity and braid/quadratic consistency", 120, c1},
      {2, "E-basis coherence and the A-product oracle", 0, c2},
      {3, "center and multiplication in the center", 0, c3},
      {4, "support decomposition", 0, c4},
      {5, "Hom/tensor chain", 0, c5},
      {6, "switch and extension lemmas", 0, c6},
      {7, "parabolic identities and Levi localization", 0, c7},
      {8, "involutions", 0, c8},
      {9, "universal modules X_J and the Bruhat filtration", 300, c9},
      {10, "injectivity of M -> M (x) X_Delta", 0, c10},
  };
  int failed = 0;
  for (const Item& it : items) {
    if (only && it.id != only) continue;
    Criterion c(it.id, it.title, it.limit);
    auto t0 = std::chrono::steady_clock::now();
    try {
      it.body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !c.finish(s);
  }
  return failed ? 1 : 0;
}
