#include "sos/runner/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sos::runner {

using json = nlohmann::ordered_json;

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::t3_linear: return "t3_linear";
    case ScenarioKind::solid_torus: return "solid_torus";
    case ScenarioKind::solid_torus_linear: return "solid_torus_linear";
    case ScenarioKind::hopf_s3: return "hopf_s3";
    case ScenarioKind::geodesic_s2: return "geodesic_s2";
  }
  return "?";
}

const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::interior: return "interior";
    case ClassKind::tube: return "tube";
    case ClassKind::fibration: return "fibration";
    case ClassKind::annulus: return "annulus";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where,
                       const std::string& what) {
  throw ConfigError(source + ": " + where + ": " + what);
}

// Line number of a byte offset, for parser diagnostics.
int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

const json& member(const std::string& source, const json& obj, const std::string& path,
                   const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(source, path + "." + key, "missing required field");
  return *it;
}

void check_known_keys(const std::string& source, const json& obj, const std::string& path,
                      std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const char* k) { return it.key() == k; });
    if (!ok) fail(source, path + "." + it.key(), "unknown field");
  }
}

double as_number(const std::string& source, const json& j, const std::string& path) {
  if (!j.is_number()) fail(source, path, "expected a number");
  return j.get<double>();
}

long as_integer(const std::string& source, const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    fail(source, path, "expected an integer");
  return j.get<long>();
}

std::vector<double> as_numbers(const std::string& source, const json& j,
                               const std::string& path, int exact = -1) {
  if (!j.is_array()) fail(source, path, "expected an array of numbers");
  if (exact >= 0 && static_cast<int>(j.size()) != exact) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "expected exactly %d entries", exact);
    fail(source, path, buf);
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_number(source, j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

ScenarioConfig parse_scenario(const std::string& source, const json& j) {
  const std::string path = "scenario";
  if (!j.is_object()) fail(source, path, "expected an object");
  auto it = j.find("kind");
  if (it == j.end()) fail(source, path + ".kind", "missing required field");
  if (!it->is_string()) fail(source, path + ".kind", "expected a string");
  const std::string kind = it->get<std::string>();

  ScenarioConfig sc;
  if (kind == "t3_linear") {
    sc.kind = ScenarioKind::t3_linear;
    check_known_keys(source, j, path, {"kind", "omega"});
    const auto w = as_numbers(source, member(source, j, path, "omega"), path + ".omega", 3);
    sc.omega = Vec3(w[0], w[1], w[2]);
  } else if (kind == "solid_torus") {
    sc.kind = ScenarioKind::solid_torus;
    check_known_keys(source, j, path, {"kind", "f_coeffs", "period"});
    sc.f_coeffs = as_numbers(source, member(source, j, path, "f_coeffs"), path + ".f_coeffs");
    if (sc.f_coeffs.empty()) fail(source, path + ".f_coeffs", "must not be empty");
    if (auto p = j.find("period"); p != j.end())
      sc.period = as_number(source, *p, path + ".period");
    if (!(sc.period > 0)) fail(source, path + ".period", "must be > 0");
  } else if (kind == "solid_torus_linear") {
    sc.kind = ScenarioKind::solid_torus_linear;
    check_known_keys(source, j, path, {"kind", "a2", "kappa", "period"});
    const json& a2 = member(source, j, path, "a2");
    if (!a2.is_array() || a2.size() != 2) fail(source, path + ".a2", "expected a 2x2 matrix");
    for (int r = 0; r < 2; ++r) {
      const auto row = as_numbers(source, a2[r], path + ".a2[" + std::to_string(r) + "]", 2);
      sc.a2(r, 0) = row[0];
      sc.a2(r, 1) = row[1];
    }
    if (auto k = j.find("kappa"); k != j.end()) {
      const auto kv = as_numbers(source, *k, path + ".kappa", 2);
      sc.kappa = Cplx(kv[0], kv[1]);
    }
    if (auto p = j.find("period"); p != j.end())
      sc.period = as_number(source, *p, path + ".period");
    if (!(sc.period > 0)) fail(source, path + ".period", "must be > 0");
  } else if (kind == "hopf_s3") {
    sc.kind = ScenarioKind::hopf_s3;
    check_known_keys(source, j, path, {"kind", "rho_max"});
    if (auto p = j.find("rho_max"); p != j.end())
      sc.rho_max = as_number(source, *p, path + ".rho_max");
    if (!(sc.rho_max > 0 && sc.rho_max < 1)) fail(source, path + ".rho_max", "must be in (0, 1)");
  } else if (kind == "geodesic_s2") {
    sc.kind = ScenarioKind::geodesic_s2;
    check_known_keys(source, j, path, {"kind"});
  } else {
    fail(source, path + ".kind", "unknown scenario kind '" + kind + "'");
  }
  return sc;
}

ClassConfig parse_class(const std::string& source, const json& j, ScenarioKind scen) {
  const std::string path = "class";
  if (!j.is_object()) fail(source, path, "expected an object");
  auto it = j.find("kind");
  if (it == j.end()) fail(source, path + ".kind", "missing required field");
  if (!it->is_string()) fail(source, path + ".kind", "expected a string");
  const std::string kind = it->get<std::string>();

  ClassConfig cc;
  if (kind == "interior") {
    cc.kind = ClassKind::interior;
    check_known_keys(source, j, path, {"kind", "pairings"});
    const auto y = as_numbers(source, member(source, j, path, "pairings"),
                              path + ".pairings", 3);
    cc.pairings = Vec3(y[0], y[1], y[2]);
    for (int i = 0; i < 3; ++i)
      if (std::abs(y[i] - std::round(y[i])) > 1e-9)
        fail(source, path + ".pairings[" + std::to_string(i) + "]",
             "coordinate-loop pairings must be integers");
  } else if (kind == "tube" || kind == "fibration") {
    cc.kind = kind == "tube" ? ClassKind::tube : ClassKind::fibration;
    check_known_keys(source, j, path, {"kind", "eps"});
    cc.eps = static_cast<int>(as_integer(source, member(source, j, path, "eps"), path + ".eps"));
    if (cc.eps != 1 && cc.eps != -1) fail(source, path + ".eps", "must be +1 or -1");
  } else if (kind == "annulus") {
    cc.kind = ClassKind::annulus;
    check_known_keys(source, j, path, {"kind"});
  } else {
    fail(source, path + ".kind", "unknown class kind '" + kind + "'");
  }

  const auto expect = [&](ClassKind want) {
    if (cc.kind != want)
      fail(source, path + ".kind",
           std::string("scenario '") + to_string(scen) + "' requires class kind '" +
               to_string(want) + "'");
  };
  switch (scen) {
    case ScenarioKind::t3_linear: expect(ClassKind::interior); break;
    case ScenarioKind::solid_torus:
    case ScenarioKind::solid_torus_linear: expect(ClassKind::tube); break;
    case ScenarioKind::hopf_s3: expect(ClassKind::fibration); break;
    case ScenarioKind::geodesic_s2: expect(ClassKind::annulus); break;
  }
  return cc;
}

NumericsConfig parse_numerics(const std::string& source, const json& j) {
  const std::string path = "numerics";
  NumericsConfig nc;
  if (j.is_null()) return nc;
  if (!j.is_object()) fail(source, path, "expected an object");
  check_known_keys(source, j, path,
                   {"grid_n", "grid_r", "delta_slack", "seed", "return_samples",
                    "annulus_samples", "rotation_horizon", "return_tol", "leaf_grid"});

  if (auto it = j.find("grid_n"); it != j.end())
    nc.grid_n = static_cast<int>(as_integer(source, *it, path + ".grid_n"));
  if (nc.grid_n < 2) fail(source, path + ".grid_n", "must be >= 2");
  if (auto it = j.find("grid_r"); it != j.end())
    nc.grid_r = static_cast<int>(as_integer(source, *it, path + ".grid_r"));
  if (nc.grid_r < 1) fail(source, path + ".grid_r", "must be >= 1");
  if (auto it = j.find("delta_slack"); it != j.end())
    nc.delta_slack = as_number(source, *it, path + ".delta_slack");
  if (!(nc.delta_slack > 0)) fail(source, path + ".delta_slack", "must be > 0");
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer())
      fail(source, path + ".seed", "expected an unsigned integer");
    if (it->is_number_integer() && it->get<long long>() < 0)
      fail(source, path + ".seed", "must be >= 0");
    nc.seed = it->get<std::uint64_t>();
  }
  if (auto it = j.find("return_samples"); it != j.end())
    nc.return_samples = static_cast<int>(as_integer(source, *it, path + ".return_samples"));
  if (nc.return_samples < 1) fail(source, path + ".return_samples", "must be >= 1");
  if (auto it = j.find("annulus_samples"); it != j.end())
    nc.annulus_samples = static_cast<int>(as_integer(source, *it, path + ".annulus_samples"));
  if (nc.annulus_samples < 1) fail(source, path + ".annulus_samples", "must be >= 1");
  if (auto it = j.find("rotation_horizon"); it != j.end())
    nc.rotation_horizon = as_integer(source, *it, path + ".rotation_horizon");
  if (nc.rotation_horizon < 4 || (nc.rotation_horizon & (nc.rotation_horizon - 1)) != 0)
    fail(source, path + ".rotation_horizon", "must be a power of two >= 4");
  if (auto it = j.find("return_tol"); it != j.end())
    nc.return_tol = as_number(source, *it, path + ".return_tol");
  if (!(nc.return_tol > 0)) fail(source, path + ".return_tol", "must be > 0");
  if (auto it = j.find("leaf_grid"); it != j.end()) {
    const auto g = as_numbers(source, *it, path + ".leaf_grid", 3);
    for (int i = 0; i < 3; ++i) {
      const double v = g[i];
      if (v != std::floor(v) || v < 2)
        fail(source, path + ".leaf_grid[" + std::to_string(i) + "]",
             "must be an integer >= 2");
      nc.leaf_grid[i] = static_cast<int>(v);
    }
  }
  return nc;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig from_document(json doc, const std::string& source, const ConfigOverrides& ov) {
  if (!doc.is_object()) fail(source, "$", "top-level value must be an object");

  // Command line overrides land in the document first so the canonical form
  // and hash describe the effective run.
  if (ov.seed || ov.grid_n) {
    json& num = doc["numerics"];
    if (num.is_null()) num = json::object();
    if (num.is_object()) {  // wrong types are reported by the numerics parser
      if (ov.seed) num["seed"] = *ov.seed;
      if (ov.grid_n) num["grid_n"] = *ov.grid_n;
    }
  }

  check_known_keys(source, doc, "$", {"version", "name", "scenario", "class", "numerics"});

  RunConfig cfg;
  cfg.version = static_cast<int>(
      as_integer(source, member(source, doc, "$", "version"), "$.version"));
  if (cfg.version != 1) fail(source, "$.version", "unsupported config version");

  const json& name_j = member(source, doc, "$", "name");
  if (!name_j.is_string() || name_j.get<std::string>().empty())
    fail(source, "$.name", "expected a nonempty string");
  cfg.name = name_j.get<std::string>();

  cfg.scenario = parse_scenario(source, member(source, doc, "$", "scenario"));
  cfg.cls = parse_class(source, member(source, doc, "$", "class"), cfg.scenario.kind);
  cfg.numerics = parse_numerics(source, doc.contains("numerics") ? doc["numerics"] : json());

  cfg.canonical = doc.dump();
  cfg.hash = fnv1a_hex(cfg.canonical);
  return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::string& source,
                       const ConfigOverrides& ov) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(source, "line " + std::to_string(line_of(json_text, e.byte)),
         std::string("JSON syntax error: ") + e.what());
  }
  return from_document(std::move(doc), source, ov);
}

RunConfig load_config(const std::string& path, const ConfigOverrides& ov) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path, ov);
}

std::unique_ptr<geometry::Scenario> RunConfig::make_scenario() const {
  switch (scenario.kind) {
    case ScenarioKind::t3_linear:
      return std::make_unique<geometry::T3Linear>(scenario.omega);
    case ScenarioKind::solid_torus:
      return std::make_unique<geometry::SolidTorusModel>(scenario.f_coeffs, scenario.period);
    case ScenarioKind::solid_torus_linear:
      return std::make_unique<geometry::SolidTorusLinear>(scenario.a2, scenario.kappa,
                                                          scenario.period);
    case ScenarioKind::hopf_s3:
      return std::make_unique<geometry::HopfS3>(scenario.rho_max);
    case ScenarioKind::geodesic_s2:
      return std::make_unique<geometry::GeodesicS2>();
  }
  throw ConfigError("config: unreachable scenario kind");
}

cohomology::DualClass RunConfig::make_class() const {
  switch (cls.kind) {
    case ClassKind::interior:
      return cohomology::DualClass::interior(cls.pairings);
    case ClassKind::tube:
      return cohomology::DualClass::tube(cls.eps, scenario.period);
    case ClassKind::fibration:
      return cohomology::DualClass::fibration(cls.eps);
    case ClassKind::annulus:
      throw ConfigError(name + ": the annulus run has no cohomology class");
  }
  throw ConfigError("config: unreachable class kind");
}

}  // namespace sos::runner
