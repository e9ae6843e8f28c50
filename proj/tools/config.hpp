#pragma once

// Run configuration: a flat INI file (sections per module, key = value)
// overridden by command-line flags.
//
//   [run]       seed, depth, c, epsilon_hat, out, sample_budget,
//               cauchy_tolerance, tolerance
//   [backend]   kind = minkowski | punctured | causet | sprinkle,
//               dimension, removed ("t x; t x; ..."), causet (JSON path),
//               vertices / edges (CSV paths), density, p, q (sprinkle corners)
//   [time]      function = canonical | cubic | causet
//   [geodesic]  p, q, mode = exact | approximate, epsilon
//   [lens]      p, q, epsilon, resolution, samples
//   [nulldist]  pairs (CSV path, header "src,dst"), allow_analytic
//   [causet]    format = json | csv
//
// Unknown sections or keys, duplicate keys and out-of-range values are
// config errors.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace lorentz::cli {

using IniTable = std::map<std::string, std::map<std::string, std::string>>;

/// Throws Error(kParse) on malformed lines, unknown sections/keys or
/// duplicates.
IniTable parse_ini(const std::string& text);

struct RunConfig {
  std::uint64_t seed = 0;
  int depth = 10;
  std::optional<double> c;
  double epsilon_hat = 0.0;
  std::filesystem::path out = "out";
  std::size_t sample_budget = 1000;
  std::optional<double> cauchy_tolerance;
  std::optional<double> tolerance;

  std::string backend = "minkowski";
  int dimension = 1;
  std::string removed;
  std::string causet_json;
  std::string vertices_csv;
  std::string edges_csv;
  double density = 100.0;
  std::string sprinkle_p = "0 0";
  std::string sprinkle_q = "1 0";

  std::string time_function;  // empty: canonical, or causet on causal sets

  std::optional<std::string> geodesic_p;
  std::optional<std::string> geodesic_q;
  std::string mode = "exact";
  std::optional<double> epsilon;

  std::string lens_p = "0 0";
  std::string lens_q = "4 0";
  std::optional<double> lens_epsilon;
  std::size_t lens_resolution = 257;
  std::size_t lens_samples = 10'000;

  std::string pairs;
  bool allow_analytic = false;

  std::string format = "json";
};

/// Fills `config` from an INI table (only keys present are applied).
void apply_ini(const IniTable& table, RunConfig& config);

/// Range checks; throws Error(kInvalidArgument).
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

}  // namespace lorentz::cli
