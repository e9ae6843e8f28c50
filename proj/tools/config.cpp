#include "config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "lorentz/errors.hpp"

namespace lorentz::cli {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"run", {"seed", "depth", "c", "epsilon_hat", "out", "sample_budget", "cauchy_tolerance", "tolerance"}},
      {"backend", {"kind", "dimension", "removed", "causet", "vertices", "edges", "density", "p", "q"}},
      {"time", {"function"}},
      {"geodesic", {"p", "q", "mode", "epsilon"}},
      {"lens", {"p", "q", "epsilon", "resolution", "samples"}},
      {"nulldist", {"pairs", "allow_analytic"}},
      {"causet", {"format"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Error bad_value(const std::string& key, const std::string& value, const char* expected) {
  return Error(ErrorCode::kParse, key + " = '" + value + "': expected " + expected);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw bad_value(key, v, "a finite number");
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw bad_value(key, v, "a nonnegative integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw bad_value(key, v, "true or false");
}

}  // namespace

IniTable parse_ini(const std::string& text) {
  IniTable table;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::kParse, where + "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) throw Error(ErrorCode::kParse, where + "unknown section [" + section + "]");
      table[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kParse, where + "expected key = value");
    if (section.empty()) throw Error(ErrorCode::kParse, where + "key outside of a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!schema().at(section).count(key)) {
      throw Error(ErrorCode::kParse, where + "unknown key '" + key + "' in [" + section + "]");
    }
    if (!table[section].emplace(key, value).second) {
      throw Error(ErrorCode::kParse, where + "duplicate key '" + key + "' in [" + section + "]");
    }
  }
  return table;
}

void apply_ini(const IniTable& table, RunConfig& cfg) {
  auto get = [&](const char* section, const char* key) -> const std::string* {
    auto s = table.find(section);
    if (s == table.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };
  auto name = [](const char* section, const char* key) { return std::string(section) + "." + key; };

  if (auto v = get("run", "seed")) cfg.seed = to_uint(name("run", "seed"), *v);
  if (auto v = get("run", "depth")) cfg.depth = static_cast<int>(to_uint(name("run", "depth"), *v));
  if (auto v = get("run", "c")) cfg.c = to_double(name("run", "c"), *v);
  if (auto v = get("run", "epsilon_hat")) cfg.epsilon_hat = to_double(name("run", "epsilon_hat"), *v);
  if (auto v = get("run", "out")) cfg.out = *v;
  if (auto v = get("run", "sample_budget")) cfg.sample_budget = to_uint(name("run", "sample_budget"), *v);
  if (auto v = get("run", "cauchy_tolerance")) cfg.cauchy_tolerance = to_double(name("run", "cauchy_tolerance"), *v);
  if (auto v = get("run", "tolerance")) cfg.tolerance = to_double(name("run", "tolerance"), *v);

  if (auto v = get("backend", "kind")) cfg.backend = *v;
  if (auto v = get("backend", "dimension")) cfg.dimension = static_cast<int>(to_uint(name("backend", "dimension"), *v));
  if (auto v = get("backend", "removed")) cfg.removed = *v;
  if (auto v = get("backend", "causet")) cfg.causet_json = *v;
  if (auto v = get("backend", "vertices")) cfg.vertices_csv = *v;
  if (auto v = get("backend", "edges")) cfg.edges_csv = *v;
  if (auto v = get("backend", "density")) cfg.density = to_double(name("backend", "density"), *v);
  if (auto v = get("backend", "p")) cfg.sprinkle_p = *v;
  if (auto v = get("backend", "q")) cfg.sprinkle_q = *v;

  if (auto v = get("time", "function")) cfg.time_function = *v;

  if (auto v = get("geodesic", "p")) cfg.geodesic_p = *v;
  if (auto v = get("geodesic", "q")) cfg.geodesic_q = *v;
  if (auto v = get("geodesic", "mode")) cfg.mode = *v;
  if (auto v = get("geodesic", "epsilon")) cfg.epsilon = to_double(name("geodesic", "epsilon"), *v);

  if (auto v = get("lens", "p")) cfg.lens_p = *v;
  if (auto v = get("lens", "q")) cfg.lens_q = *v;
  if (auto v = get("lens", "epsilon")) cfg.lens_epsilon = to_double(name("lens", "epsilon"), *v);
  if (auto v = get("lens", "resolution")) cfg.lens_resolution = to_uint(name("lens", "resolution"), *v);
  if (auto v = get("lens", "samples")) cfg.lens_samples = to_uint(name("lens", "samples"), *v);

  if (auto v = get("nulldist", "pairs")) cfg.pairs = *v;
  if (auto v = get("nulldist", "allow_analytic")) cfg.allow_analytic = to_bool(name("nulldist", "allow_analytic"), *v);

  if (auto v = get("causet", "format")) cfg.format = *v;
}

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  if (cfg.depth < 0 || cfg.depth > 40) fail("depth must lie in [0, 40]");
  if (cfg.c && !(*cfg.c > 0.0 && *cfg.c <= 0.5)) fail("c must lie in (0, 1/2]");
  if (!(cfg.epsilon_hat >= 0.0 && cfg.epsilon_hat < 0.5)) fail("epsilon-hat must lie in [0, 1/2)");
  if (cfg.sample_budget == 0) fail("sample budget must be positive");
  if (cfg.cauchy_tolerance && !(*cfg.cauchy_tolerance > 0.0)) fail("cauchy tolerance must be positive");
  if (cfg.tolerance && !(*cfg.tolerance >= 0.0)) fail("tolerance must be nonnegative");
  static const std::set<std::string> backends = {"minkowski", "punctured", "causet", "sprinkle"};
  if (!backends.count(cfg.backend)) fail("unknown backend '" + cfg.backend + "'");
  if (cfg.dimension < 1 || cfg.dimension > 8) fail("dimension must lie in [1, 8]");
  if (!(cfg.density > 0.0)) fail("density must be positive");
  static const std::set<std::string> times = {"", "canonical", "cubic", "causet"};
  if (!times.count(cfg.time_function)) fail("unknown time function '" + cfg.time_function + "'");
  if (cfg.mode != "exact" && cfg.mode != "approximate") fail("mode must be exact or approximate");
  if (cfg.epsilon && !(*cfg.epsilon >= 0.0)) fail("epsilon must be nonnegative");
  if (cfg.lens_epsilon && !(*cfg.lens_epsilon >= 0.0)) fail("lens epsilon must be nonnegative");
  if (cfg.lens_resolution < 2) fail("lens resolution must be at least 2");
  if (cfg.lens_samples == 0) fail("lens samples must be positive");
  if (cfg.format != "json" && cfg.format != "csv") fail("format must be json or csv");
  if (cfg.out.empty()) fail("output directory must be set");
}

nlohmann::json to_json(const RunConfig& cfg) {
  auto opt = [](const auto& v) -> nlohmann::json {
    if (v) return *v;
    return nullptr;
  };
  return {
      {"run",
       {{"seed", cfg.seed},
        {"depth", cfg.depth},
        {"c", opt(cfg.c)},
        {"epsilon_hat", cfg.epsilon_hat},
        {"out", cfg.out.string()},
        {"sample_budget", cfg.sample_budget},
        {"cauchy_tolerance", opt(cfg.cauchy_tolerance)},
        {"tolerance", opt(cfg.tolerance)}}},
      {"backend",
       {{"kind", cfg.backend},
        {"dimension", cfg.dimension},
        {"removed", cfg.removed},
        {"causet", cfg.causet_json},
        {"vertices", cfg.vertices_csv},
        {"edges", cfg.edges_csv},
        {"density", cfg.density},
        {"p", cfg.sprinkle_p},
        {"q", cfg.sprinkle_q}}},
      {"time", {{"function", cfg.time_function}}},
      {"geodesic",
       {{"p", opt(cfg.geodesic_p)}, {"q", opt(cfg.geodesic_q)}, {"mode", cfg.mode}, {"epsilon", opt(cfg.epsilon)}}},
      {"lens",
       {{"p", cfg.lens_p},
        {"q", cfg.lens_q},
        {"epsilon", opt(cfg.lens_epsilon)},
        {"resolution", cfg.lens_resolution},
        {"samples", cfg.lens_samples}}},
      {"nulldist", {{"pairs", cfg.pairs}, {"allow_analytic", cfg.allow_analytic}}},
      {"causet", {{"format", cfg.format}}},
  };
}

}  // namespace lorentz::cli
