#include "prophecke/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace prophecke {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ConfigError(path + ": " + msg); }

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) fail(path.empty() ? k : path + "." + k, "unknown field");
}

std::string sub(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

long long get_int(const json& j, const std::string& path, long long lo, long long hi) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  long long v = j.get<long long>();
  if (v < lo || v > hi) fail(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<long long> get_ints(const json& j, const std::string& path, long long lo, long long hi) {
  std::vector<long long> out;
  const json& a = get_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_int(a[i], at(path, i), lo, hi));
  return out;
}

Vec get_vec(const json& j, const std::string& path, int n) {
  auto v = get_ints(j, path, -1000000, 1000000);
  if (static_cast<int>(v.size()) != n) fail(path, "expected " + std::to_string(n) + " entries");
  Vec out{};
  for (int i = 0; i < n; ++i) out[i] = static_cast<std::int32_t>(v[i]);
  return out;
}

Mat get_mat(const json& j, const std::string& path, int dim, std::uint32_t order) {
  const json& rows = get_array(j, path);
  if (static_cast<int>(rows.size()) != dim) fail(path, "expected " + std::to_string(dim) + " rows (square of the declared dim)");
  Mat m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const std::string rp = at(path, r);
    const json& row = get_array(rows[r], rp);
    if (static_cast<int>(row.size()) != dim) fail(rp, "expected " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) {
      const std::string ep = at(rp, c);
      if (!row[c].is_number_integer()) fail(ep, "expected an integer");
      long long v = row[c].get<long long>();
      if (v < 0 || v >= static_cast<long long>(order))
        fail(ep, "residue " + std::to_string(v) + " not reduced mod field order " + std::to_string(order));
      m(r, c) = static_cast<Fe>(v);
    }
  }
  return m;
}

std::vector<Mat> get_mats(const json& j, const std::string& path, int dim, std::uint32_t order) {
  std::vector<Mat> out;
  const json& a = get_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_mat(a[i], at(path, i), dim, order));
  return out;
}

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json vec_json(const Vec& v, int n) {
  json a = json::array();
  for (int i = 0; i < n; ++i) a.push_back(v[i]);
  return a;
}

RootDatum parse_datum(const json& j, const std::string& path) {
  check_keys(j, path, {"name", "rank_ss", "lattice_rank", "simple_roots", "simple_coroots", "cartan"});
  for (const char* k : {"rank_ss", "lattice_rank", "simple_roots", "simple_coroots", "cartan"})
    if (!j.contains(k)) fail(sub(path, k), "missing");
  RootDatum rd;
  rd.name = "custom";
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail(sub(path, "name"), "expected a string");
    rd.name = j["name"].get<std::string>();
  }
  rd.lattice_rank = static_cast<int>(get_int(j["lattice_rank"], sub(path, "lattice_rank"), 1, kMaxRank));
  rd.rank_ss = static_cast<int>(get_int(j["rank_ss"], sub(path, "rank_ss"), 0, rd.lattice_rank));
  const int n = rd.lattice_rank;
  const json& sr = get_array(j["simple_roots"], sub(path, "simple_roots"));
  const json& sc = get_array(j["simple_coroots"], sub(path, "simple_coroots"));
  const json& ca = get_array(j["cartan"], sub(path, "cartan"));
  for (std::size_t i = 0; i < sr.size(); ++i) rd.simple_roots.push_back(get_vec(sr[i], at(sub(path, "simple_roots"), i), n));
  for (std::size_t i = 0; i < sc.size(); ++i)
    rd.simple_coroots.push_back(get_vec(sc[i], at(sub(path, "simple_coroots"), i), n));
  for (std::size_t i = 0; i < ca.size(); ++i) {
    std::vector<int> row;
    for (long long v : get_ints(ca[i], at(sub(path, "cartan"), i), -3, 3)) row.push_back(static_cast<int>(v));
    rd.cartan.push_back(row);
  }
  try {
    rd.validate();
  } catch (const std::invalid_argument& e) {
    // Messages that open with a field reference ("cartan[0][1] must be <= 0") are re-rooted under path.
    const std::string msg = e.what();
    const std::size_t k = msg.find_first_of(" :");
    const std::string head = msg.substr(0, k);
    for (const char* f : {"cartan", "simple_roots", "simple_coroots", "rank_ss", "lattice_rank"})
      if (k != std::string::npos && head.rfind(f, 0) == 0) {
        std::size_t r = msg.find_first_not_of(" :", k);
        fail(path + "." + head, r == std::string::npos ? "invalid" : msg.substr(r));
      }
    fail(path, msg);
  }
  return rd;
}

ZKappaSpec parse_zkappa(const json& j, const std::string& path, int rank_ss) {
  check_keys(j, path, {"orders", "reflections", "coroot_images"});
  for (const char* k : {"orders", "reflections", "coroot_images"})
    if (!j.contains(k)) fail(sub(path, k), "missing");
  ZKappaSpec z;
  for (long long d : get_ints(j["orders"], sub(path, "orders"), 1, 4096)) z.orders.push_back(static_cast<int>(d));
  const int k = static_cast<int>(z.orders.size());
  const json& refl = get_array(j["reflections"], sub(path, "reflections"));
  if (static_cast<int>(refl.size()) != rank_ss) fail(sub(path, "reflections"), "expected one matrix per simple root");
  for (std::size_t i = 0; i < refl.size(); ++i) {
    const std::string rp = at(sub(path, "reflections"), i);
    const json& rows = get_array(refl[i], rp);
    if (static_cast<int>(rows.size()) != k) fail(rp, "expected " + std::to_string(k) + " rows");
    IntMatrix m;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto row = get_ints(rows[r], at(rp, r), -4096, 4096);
      if (static_cast<int>(row.size()) != k) fail(at(rp, r), "expected " + std::to_string(k) + " entries");
      m.push_back(row);
    }
    z.reflections.push_back(m);
  }
  const json& ci = get_array(j["coroot_images"], sub(path, "coroot_images"));
  if (static_cast<int>(ci.size()) != rank_ss) fail(sub(path, "coroot_images"), "expected one vector per simple root");
  for (std::size_t i = 0; i < ci.size(); ++i) {
    auto v = get_ints(ci[i], at(sub(path, "coroot_images"), i), -4096, 4096);
    if (static_cast<int>(v.size()) != k) fail(at(sub(path, "coroot_images"), i), "expected " + std::to_string(k) + " entries");
    z.coroot_images.push_back(v);
  }
  return z;
}

ModuleSpec parse_module(const json& j, const std::string& path, std::uint32_t order) {
  check_keys(j, path, {"name", "kind", "dim", "support", "lattice", "zkappa", "generators"});
  for (const char* k : {"name", "kind", "dim"})
    if (!j.contains(k)) fail(sub(path, k), "missing");
  ModuleSpec m;
  if (!j["name"].is_string() || j["name"].get<std::string>().empty()) fail(sub(path, "name"), "expected a nonempty string");
  m.name = j["name"].get<std::string>();
  if (!j["kind"].is_string()) fail(sub(path, "kind"), "expected \"A\" or \"H\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "A") m.kind = ModuleSpec::Kind::kA;
  else if (kind == "H") m.kind = ModuleSpec::Kind::kH;
  else fail(sub(path, "kind"), "expected \"A\" or \"H\", got \"" + kind + "\"");
  m.dim = static_cast<int>(get_int(j["dim"], sub(path, "dim"), 0, 64));
  if (m.kind == ModuleSpec::Kind::kA) {
    if (j.contains("generators")) fail(sub(path, "generators"), "only allowed for kind H");
    for (const char* k : {"lattice", "zkappa"})
      if (!j.contains(k)) fail(sub(path, k), "missing");
    if (j.contains("support"))
      for (long long v : get_ints(j["support"], sub(path, "support"), 1, kMaxRank)) m.support.push_back(static_cast<int>(v));
    m.lattice = get_mats(j["lattice"], sub(path, "lattice"), m.dim, order);
    m.zkappa = get_mats(j["zkappa"], sub(path, "zkappa"), m.dim, order);
  } else {
    for (const char* k : {"support", "lattice", "zkappa"})
      if (j.contains(k)) fail(sub(path, k), "only allowed for kind A");
    if (!j.contains("generators")) fail(sub(path, "generators"), "missing");
    m.generators = get_mats(j["generators"], sub(path, "generators"), m.dim, order);
  }
  return m;
}

}  // namespace

Config parse_config(const json& j) {
  check_keys(j, "", {"group", "q", "field_order", "zkappa", "ns_squares", "omega", "modules", "bounds", "seed"});
  for (const char* k : {"group", "q"})
    if (!j.contains(k)) fail(k, "missing");
  Config c;
  const json& g = j["group"];
  int rank_ss = 0;
  if (g.is_string()) {
    c.preset = g.get<std::string>();
    try {
      rank_ss = RootDatum::preset(c.preset).rank_ss;
    } catch (const std::invalid_argument& e) {
      fail("group", e.what());
    }
  } else if (g.is_object()) {
    c.datum = parse_datum(g, "group");
    rank_ss = c.datum->rank_ss;
  } else {
    fail("group", "expected a preset name or a root datum object");
  }
  c.q = static_cast<std::uint32_t>(get_int(j["q"], "q", 2, 65536));
  std::uint32_t p = 0, f = 0;
  if (!prime_power(c.q, p, f)) fail("q", std::to_string(c.q) + " is not a prime power");
  std::uint32_t order = default_field_order(c.q);
  if (j.contains("field_order")) {
    c.field_order = static_cast<std::uint32_t>(get_int(j["field_order"], "field_order", 2, 65536));
    std::uint32_t fp = 0, fm = 0;
    if (!prime_power(*c.field_order, fp, fm) || fp != p)
      fail("field_order", "must be a power of the characteristic " + std::to_string(p));
    if ((*c.field_order - 1) % (c.q - 1) != 0) fail("field_order", "q - 1 must divide field_order - 1");
    order = *c.field_order;
  }
  if (j.contains("zkappa")) c.zkappa = parse_zkappa(j["zkappa"], "zkappa", rank_ss);
  if (j.contains("ns_squares")) {
    const json& a = get_array(j["ns_squares"], "ns_squares");
    if (static_cast<int>(a.size()) != rank_ss) fail("ns_squares", "expected one entry per simple root");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_null()) c.ns_squares.push_back(std::nullopt);
      else c.ns_squares.push_back(get_ints(a[i], at("ns_squares", i), -4096, 4096));
    }
  }
  if (j.contains("omega")) c.omega = get_ints(j["omega"], "omega", 0, 4095);
  if (j.contains("modules")) {
    const json& a = get_array(j["modules"], "modules");
    std::set<std::string> names;
    for (std::size_t i = 0; i < a.size(); ++i) {
      c.modules.push_back(parse_module(a[i], at("modules", i), order));
      if (!names.insert(c.modules.back().name).second) fail(at("modules", i) + ".name", "duplicate name");
    }
  }
  if (j.contains("bounds")) {
    const json& b = j["bounds"];
    check_keys(b, "bounds", {"max_length", "nu_height", "box_radius"});
    if (b.contains("max_length")) c.bounds.max_length = static_cast<int>(get_int(b["max_length"], "bounds.max_length", 0, 12));
    if (b.contains("nu_height")) c.bounds.nu_height = static_cast<int>(get_int(b["nu_height"], "bounds.nu_height", 0, 12));
    if (b.contains("box_radius")) c.bounds.box_radius = static_cast<int>(get_int(b["box_radius"], "bounds.box_radius", 0, 6));
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      fail("seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

Config parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<json>: ") + e.what());
  }
  return parse_config(j);
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const Config& c) {
  json j;
  if (c.datum) {
    const RootDatum& rd = *c.datum;
    json g;
    g["name"] = rd.name;
    g["rank_ss"] = rd.rank_ss;
    g["lattice_rank"] = rd.lattice_rank;
    g["simple_roots"] = json::array();
    g["simple_coroots"] = json::array();
    for (const Vec& v : rd.simple_roots) g["simple_roots"].push_back(vec_json(v, rd.lattice_rank));
    for (const Vec& v : rd.simple_coroots) g["simple_coroots"].push_back(vec_json(v, rd.lattice_rank));
    g["cartan"] = rd.cartan;
    j["group"] = g;
  } else {
    j["group"] = c.preset;
  }
  j["q"] = c.q;
  if (c.field_order) j["field_order"] = *c.field_order;
  if (c.zkappa) j["zkappa"] = {{"orders", c.zkappa->orders},
                               {"reflections", c.zkappa->reflections},
                               {"coroot_images", c.zkappa->coroot_images}};
  if (!c.ns_squares.empty()) {
    json a = json::array();
    for (const auto& v : c.ns_squares) a.push_back(v ? json(*v) : json(nullptr));
    j["ns_squares"] = a;
  }
  if (!c.omega.empty()) j["omega"] = c.omega;
  j["modules"] = json::array();
  for (const ModuleSpec& m : c.modules) {
    json o;
    o["name"] = m.name;
    o["kind"] = m.kind == ModuleSpec::Kind::kA ? "A" : "H";
    o["dim"] = m.dim;
    auto mats = [](const std::vector<Mat>& v) {
      json a = json::array();
      for (const Mat& x : v) a.push_back(mat_json(x));
      return a;
    };
    if (m.kind == ModuleSpec::Kind::kA) {
      o["support"] = m.support;
      o["lattice"] = mats(m.lattice);
      o["zkappa"] = mats(m.zkappa);
    } else {
      o["generators"] = mats(m.generators);
    }
    j["modules"].push_back(o);
  }
  j["bounds"] = {{"max_length", c.bounds.max_length}, {"nu_height", c.bounds.nu_height}, {"box_radius", c.bounds.box_radius}};
  j["seed"] = c.seed;
  return j;
}

Context build_context(const Config& c) {
  Context ctx;
  ctx.cfg = c;
  RootDatum rd = c.datum ? *c.datum : RootDatum::preset(c.preset);
  std::vector<std::optional<int>> sq;
  try {
    // Z_kappa coordinates resolve against the group before the lifts exist.
    RootSystem R(rd);
    ZKappa zk(R, static_cast<int>(c.q), c.zkappa);
    const std::size_t k = zk.orders().size();
    for (std::size_t i = 0; i < c.ns_squares.size(); ++i) {
      if (!c.ns_squares[i]) {
        sq.push_back(std::nullopt);
        continue;
      }
      if (c.ns_squares[i]->size() != k) fail(at("ns_squares", i), "expected " + std::to_string(k) + " coordinates");
      sq.push_back(zk.from_coords(*c.ns_squares[i]));
    }
    if (!c.omega.empty()) {
      if (c.omega.size() != k) fail("omega", "expected " + std::to_string(k) + " character coordinates");
      for (std::size_t i = 0; i < k; ++i)
        if (c.omega[i] >= zk.orders()[i]) fail(at("omega", i), "exceeds the factor order " + std::to_string(zk.orders()[i]));
      ctx.psi = zk.from_coords(c.omega);
    }
    ctx.s = make_setup(rd, c.q, c.field_order.value_or(0), c.zkappa, sq);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  const AlgebraSetup& s = ctx.s;
  const std::size_t ngen = FinHModule::generators(*s.H).size();
  for (std::size_t i = 0; i < c.modules.size(); ++i) {
    const ModuleSpec& m = c.modules[i];
    const std::string path = at("modules", i);
    if (m.kind == ModuleSpec::Kind::kA) {
      if (static_cast<int>(m.lattice.size()) != s.W->n())
        fail(path + ".lattice", "expected " + std::to_string(s.W->n()) + " matrices (one per lattice basis vector)");
      if (m.zkappa.size() != s.W->zk().generators().size())
        fail(path + ".zkappa", "expected " + std::to_string(s.W->zk().generators().size()) + " matrices (one per cyclic factor)");
      for (std::size_t k = 0; k < m.support.size(); ++k)
        if (m.support[k] > s.rs->rank_ss()) fail(at(path + ".support", k), "simple index out of range");
      std::vector<int> word;
      for (int l : m.support) word.push_back(l - 1);
      int chamber = s.rs->from_word(word);
      for (std::size_t k = 0; k < m.lattice.size(); ++k)
        if (!inverse(*s.F, m.lattice[k])) fail(at(path + ".lattice", k), "matrix is not invertible");
      LatticeRep rep{m.dim, m.lattice, m.zkappa};
      FinAModule mod = module_from_lattice_rep(s.W, s.F, chamber, rep);
      if (auto d = mod.validate()) fail(path, *d);
      ctx.a_modules.push_back({m.name, chamber, mod});
    } else {
      if (m.generators.size() != ngen)
        fail(path + ".generators", "expected " + std::to_string(ngen) + " matrices (affine simples, Omega generators and inverses, Z_kappa generators)");
      FinHModule mod(s.H, m.dim, m.generators);
      if (auto d = mod.validate(2)) fail(path, *d);
      ctx.h_modules.push_back({m.name, mod});
    }
  }
  return ctx;
}

}  // namespace prophecke
