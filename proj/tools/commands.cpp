#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lorentz/causet_io.hpp"
#include "lorentz/checks.hpp"
#include "lorentz/geodesic.hpp"
#include "lorentz/lens.hpp"
#include "lorentz/midpoints.hpp"
#include "lorentz/nulldist.hpp"
#include "lorentz/sprinkle.hpp"
#include "lorentz/svg.hpp"

#ifndef LORENTZ_VERSION
#define LORENTZ_VERSION "0.0.0"
#endif

namespace lorentz::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

// Origin-based default event with time coordinate t.
std::string default_event(int dimension, double t) {
  std::string s = format_double(t);
  for (int i = 0; i < dimension; ++i) s += " 0";
  return s;
}

std::string point_text(const MinkowskiSpace&, const Event& e) {
  std::string s = format_double(e.t);
  for (double x : e.x) s += " " + format_double(x);
  return s;
}
std::string point_text(const PuncturedMinkowski& s, const Event& e) { return point_text(s.base(), e); }
std::string point_text(const CausalSetSpace& s, Vertex v) { return s.id(v); }

TimeFunctionBundle<Event> event_bundle(const RunConfig& cfg) {
  if (cfg.time_function.empty() || cfg.time_function == "canonical") return canonical_time();
  if (cfg.time_function == "cubic") return cubic_time();
  throw Error(ErrorCode::kInvalidArgument, "time function '" + cfg.time_function + "' needs a causal-set backend");
}

TimeFunctionBundle<Event> make_bundle(const MinkowskiSpace&, const RunConfig& cfg) { return event_bundle(cfg); }
TimeFunctionBundle<Event> make_bundle(const PuncturedMinkowski&, const RunConfig& cfg) { return event_bundle(cfg); }
TimeFunctionBundle<Vertex> make_bundle(const CausalSetSpace& space, const RunConfig& cfg) {
  if (!cfg.time_function.empty() && cfg.time_function != "causet") {
    throw Error(ErrorCode::kInvalidArgument, "causal-set backends use the stored T values (time = causet)");
  }
  return causet_time(space);
}

CheckOptions check_options(const RunConfig& cfg) {
  CheckOptions o;
  o.sample_budget = cfg.sample_budget;
  o.seed = cfg.seed;
  o.tolerance = cfg.tolerance;
  return o;
}

void write_json(const fs::path& path, const json& j) { write_file_atomically(path, j.dump(2) + "\n"); }

std::string summary_csv(const std::vector<Certificate>& certs) {
  std::string s = "certificate,verdict,samples_checked,tolerance,seed\n";
  for (const auto& c : certs) {
    s += c.name + "," + to_string(c.verdict) + "," + std::to_string(c.samples_checked) + "," +
         format_double(c.tolerance) + "," + std::to_string(c.seed) + "\n";
  }
  return s;
}

void write_manifest(const RunConfig& cfg, const std::string& command, const std::vector<std::string>& outputs,
                    const json& skipped = json::array()) {
  json m;
  m["tool"] = "lorentz";
  m["version"] = LORENTZ_VERSION;
  m["command"] = command;
  m["seed"] = cfg.seed;
  m["config"] = to_json(cfg);
  m["outputs"] = outputs;
  m["skipped_certificates"] = skipped;
  m["build"] = {{"compiler", __VERSION__},
                {"cxx_standard", static_cast<long>(__cplusplus)},
                {"nlohmann_json",
                 std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                     "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                {"cli11", CLI11_VERSION}};
  write_json(cfg.out / "manifest.json", m);
}

// certificates.json is a JSON array; summary.csv has one row per entry.
void write_certificates(const RunConfig& cfg, const std::vector<Certificate>& certs) {
  write_json(cfg.out / "certificates.json", json(certs));
  write_file_atomically(cfg.out / "summary.csv", summary_csv(certs));
}

void report(std::ostream& log, const std::vector<Certificate>& certs) {
  for (const auto& c : certs) log << c.name << ": " << to_string(c.verdict) << "\n";
}

template <class S>
typename S::point_type parse_point(const S& space, const std::string& text) {
  return space.parse(text);
}

}  // namespace

Backend load_backend(const RunConfig& cfg) {
  SamplingBox box;
  if (cfg.backend == "minkowski") return MinkowskiSpace(cfg.dimension, box);
  if (cfg.backend == "punctured") {
    MinkowskiSpace base(cfg.dimension, box);
    std::vector<Event> removed;
    const std::string spec = cfg.removed.empty() ? default_event(cfg.dimension, 1.0) : cfg.removed;
    for (const auto& item : split(spec, ';')) {
      if (!blank(item)) removed.push_back(base.parse(item));
    }
    return PuncturedMinkowski(base, std::move(removed));
  }
  if (cfg.backend == "causet") {
    if (!cfg.causet_json.empty()) return load_causet_json(cfg.causet_json);
    if (!cfg.vertices_csv.empty() && !cfg.edges_csv.empty()) return load_causet_csv(cfg.vertices_csv, cfg.edges_csv);
    throw Error(ErrorCode::kInvalidArgument, "causet backend needs --causet FILE or --vertices and --edges");
  }
  const MinkowskiSpace plane(1);
  SprinkleOptions so;
  so.density = cfg.density;
  so.seed = cfg.seed;
  return sprinkle_causet(plane.parse(cfg.sprinkle_p), plane.parse(cfg.sprinkle_q), so);
}

int cmd_geodesic(const RunConfig& cfg, std::ostream& log) {
  const Backend backend = load_backend(cfg);
  fs::create_directories(cfg.out);
  return std::visit(
      [&](const auto& space) -> int {
        using S = std::decay_t<decltype(space)>;
        const auto bundle = make_bundle(space, cfg);
        std::string p_text, q_text;
        if constexpr (std::is_same_v<S, CausalSetSpace>) {
          p_text = cfg.geodesic_p.value_or("p");
          q_text = cfg.geodesic_q.value_or("q");
        } else {
          p_text = cfg.geodesic_p.value_or(default_event(space.spatial_dimension(), 0.0));
          q_text = cfg.geodesic_q.value_or(default_event(space.spatial_dimension(), 2.0));
        }
        const auto p = parse_point(space, p_text);
        const auto q = parse_point(space, q_text);

        GeodesicOptions g;
        g.build.c = cfg.c.value_or(0.5);
        g.build.depth = cfg.depth;
        g.build.mode = cfg.mode == "approximate" ? CurveMode::kApproximate : CurveMode::kExact;
        if (g.build.mode == CurveMode::kApproximate) {
          g.build.epsilon = cfg.epsilon.value_or(cfg.epsilon_hat * space.tau(p, q).value());
        }
        g.sample_budget = cfg.sample_budget;
        g.seed = cfg.seed;
        g.extension.cauchy_tolerance = cfg.cauchy_tolerance;
        if (cfg.tolerance) g.tol = *cfg.tolerance;

        GeodesicResult<typename S::point_type> result;
        try {
          result = synthesize_geodesic(space, bundle, p, q, g);
        } catch (const MidpointUnavailable& e) {
          Certificate build;
          build.name = "build";
          build.verdict = Verdict::kFail;
          build.seed = cfg.seed;
          build.witness = json{{"level", e.level()}, {"left", e.left()}, {"right", e.right()}};
          build.details = {{"reason", "MidpointUnavailable"}, {"hypothesis", e.hypothesis()}, {"message", e.what()}};
          write_certificates(cfg, {build});
          write_manifest(cfg, "geodesic", {"certificates.json", "summary.csv"});
          log << "build: fail (" << e.what() << ")\n";
          return kExitFail;
        }
        write_json(cfg.out / "curve.json", curve_to_json(space, result.curve));
        write_certificates(cfg, result.certificates);
        write_manifest(cfg, "geodesic", {"curve.json", "certificates.json", "summary.csv"}, result.skipped);
        report(log, result.certificates);
        return all_passed(result.certificates) ? kExitPass : kExitFail;
      },
      backend);
}

int cmd_nulldist(const RunConfig& cfg, std::ostream& log) {
  const Backend backend = load_backend(cfg);
  fs::create_directories(cfg.out);
  return std::visit(
      [&](const auto& space) -> int {
        using S = std::decay_t<decltype(space)>;
        using P = typename S::point_type;
        const auto bundle = make_bundle(space, cfg);
        std::vector<std::pair<P, P>> pairs;
        if (!cfg.pairs.empty()) {
          const auto lines = split(read_text(cfg.pairs), '\n');
          if (lines.empty() || lines[0].substr(0, 7) != "src,dst") {
            throw Error(ErrorCode::kParse, cfg.pairs + ": expected header src,dst");
          }
          for (std::size_t i = 1; i < lines.size(); ++i) {
            if (blank(lines[i])) continue;
            const auto cols = split(lines[i], ',');
            if (cols.size() != 2) throw Error(ErrorCode::kParse, cfg.pairs + ": bad row '" + lines[i] + "'");
            pairs.emplace_back(parse_point(space, cols[0]), parse_point(space, cols[1]));
          }
        } else if constexpr (DiscreteSpace<S>) {
          const std::size_t n = space.size();
          if (n * (n - 1) / 2 <= cfg.sample_budget) {
            for (std::size_t i = 0; i < n; ++i) {
              for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(space.point(i), space.point(j));
            }
          }
        }
        if (pairs.empty() && cfg.pairs.empty()) {
          Rng rng(cfg.seed);
          const std::size_t count = std::min<std::size_t>(cfg.sample_budget, 100);
          for (std::size_t i = 0; i < count; ++i) {
            const P a = space.sample_point(rng);
            const P b = space.sample_point(rng);
            pairs.emplace_back(a, b);
          }
        }
        NullDistanceOptions opts;
        opts.allow_analytic = cfg.allow_analytic;
        std::string csv = "src,dst,d_T,method\n";
        std::size_t disconnected = 0;
        for (const auto& [a, b] : pairs) {
          std::string value, method;
          try {
            const auto r = null_distance(space, bundle, a, b, opts);
            value = format_double(r.value);
            method = std::string(to_string(r.method));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kNotConnected) throw;
            value = "inf";
            method = "graph";
            ++disconnected;
          }
          csv += point_text(space, a) + "," + point_text(space, b) + "," + value + "," + method + "\n";
        }
        write_file_atomically(cfg.out / "nulldist.csv", csv);
        write_manifest(cfg, "nulldist", {"nulldist.csv"});
        log << pairs.size() << " pairs, " << disconnected << " not connected\n";
        return kExitPass;
      },
      backend);
}

int cmd_lens(const RunConfig& cfg, std::ostream& log) {
  const Backend backend = load_backend(cfg);
  const auto* space = std::get_if<MinkowskiSpace>(&backend);
  if (!space || space->spatial_dimension() != 1) {
    throw Error(ErrorCode::kUnsupportedBackend, "lens needs the minkowski backend in 1+1 dimensions");
  }
  const auto bundle = event_bundle(cfg);
  const Event p = space->parse(cfg.lens_p);
  const Event q = space->parse(cfg.lens_q);
  const double c = cfg.c.value_or(0.4);

  double epsilon = 0.0;
  bool computed = false;
  if (cfg.lens_epsilon) {
    epsilon = *cfg.lens_epsilon;
  } else if (c < 0.5) {
    LensEpsilonOptions o;
    o.samples = cfg.lens_samples;
    o.seed = cfg.seed;
    epsilon = lens_in_strip_epsilon(p, q, c, bundle, o).epsilon;
    computed = true;
  }
  const LensStrip lens = lens_strip_geometry(*space, bundle, p, q, epsilon, c, cfg.lens_resolution);
  const LensEpsilon check = sample_lens_in_strip(lens, cfg.lens_samples, cfg.seed);

  fs::create_directories(cfg.out);
  write_file_atomically(cfg.out / "lens.svg", lens_figure_svg(lens));
  write_file_atomically(cfg.out / "lens.csv", lens_boundary_csv(lens));
  json j = {{"p", space->to_json(p)},
            {"q", space->to_json(q)},
            {"c", c},
            {"epsilon", epsilon},
            {"epsilon_computed", computed},
            {"tau_pq", lens.tau_pq},
            {"strip_lower", lens.strip_lower},
            {"strip_upper", lens.strip_upper},
            {"samples", check.samples},
            {"attempts", check.attempts},
            {"violations", check.violations}};
  write_json(cfg.out / "lens.json", j);
  write_manifest(cfg, "lens", {"lens.svg", "lens.csv", "lens.json"});
  log << "epsilon " << format_double(epsilon) << ", " << check.samples << " samples, " << check.violations
      << " outside the strip\n";
  return check.violations == 0 ? kExitPass : kExitFail;
}

int cmd_certify(const RunConfig& cfg, std::ostream& log) {
  const Backend backend = load_backend(cfg);
  fs::create_directories(cfg.out);
  return std::visit(
      [&](const auto& space) -> int {
        const auto bundle = make_bundle(space, cfg);
        const CheckOptions o = check_options(cfg);
        std::vector<Certificate> certs;
        certs.push_back(check_chronology(space, o));
        certs.push_back(check_reverse_triangle(space, o));
        certs.push_back(check_anti_lipschitz(space, bundle, o));
        certs.push_back(check_metric_axioms(space, bundle, o));
        certs.push_back(check_causal_identity(space, bundle, o));
        certs.push_back(certify_compatibility(space, bundle, cfg.c.value_or(0.5), cfg.epsilon_hat, o));
        write_certificates(cfg, certs);
        write_manifest(cfg, "certify", {"certificates.json", "summary.csv"});
        report(log, certs);
        return all_passed(certs) ? kExitPass : kExitFail;
      },
      backend);
}

int cmd_causet(const RunConfig& cfg, std::ostream& log) {
  const MinkowskiSpace plane(1);
  SprinkleOptions so;
  so.density = cfg.density;
  so.seed = cfg.seed;
  const CausalSetSpace space = sprinkle_causet(plane.parse(cfg.sprinkle_p), plane.parse(cfg.sprinkle_q), so);
  fs::create_directories(cfg.out);
  std::vector<std::string> outputs;
  if (cfg.format == "json") {
    save_causet_json(space, cfg.out / "causet.json");
    outputs = {"causet.json"};
  } else {
    save_causet_csv(space, cfg.out / "vertices.csv", cfg.out / "edges.csv");
    outputs = {"vertices.csv", "edges.csv"};
  }
  write_manifest(cfg, "causet", outputs);
  log << space.size() << " elements, " << space.edges().size() << " links\n";
  return kExitPass;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->code()) {
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kParse:
      case ErrorCode::kUnsupportedBackend:
      case ErrorCode::kCycleDetected:
      case ErrorCode::kNotChronological:
      case ErrorCode::kDegenerateStrip:
      case ErrorCode::kEmptySprinkle:
        return kExitUsage;
      default:
        return kExitFail;
    }
  }
  if (dynamic_cast<const fs::filesystem_error*>(&e) || dynamic_cast<const json::exception*>(&e)) {
    return kExitUsage;
  }
  return kExitFail;
}

namespace {

// Flags given on the command line; applied over the config file.
struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth;
  std::optional<double> c;
  std::optional<double> epsilon_hat;
  std::optional<std::string> out;
  std::optional<std::size_t> sample_budget;
  std::optional<double> cauchy_tolerance;
  std::optional<double> tolerance;
  std::optional<std::string> backend;
  std::optional<int> dimension;
  std::optional<std::string> removed;
  std::optional<std::string> causet;
  std::optional<std::string> vertices;
  std::optional<std::string> edges;
  std::optional<double> density;
  std::optional<std::string> corner_p;
  std::optional<std::string> corner_q;
  std::optional<std::string> time;
  std::optional<std::string> p;
  std::optional<std::string> q;
  std::optional<std::string> mode;
  std::optional<double> epsilon;
  std::optional<std::size_t> resolution;
  std::optional<std::size_t> samples;
  std::optional<std::string> pairs;
  bool allow_analytic = false;
  std::optional<std::string> format;
};

void add_flags(CLI::App* cmd, Overrides& o, const std::string& name) {
  cmd->add_option("--config", o.config, "INI config file");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--sample-budget", o.sample_budget, "samples per certificate");
  cmd->add_option("--tolerance", o.tolerance, "numerical tolerance");
  if (name == "causet") {
    cmd->add_option("--density", o.density, "sprinkling density");
    cmd->add_option("--corner-p", o.corner_p, "lower diamond corner \"t x\"");
    cmd->add_option("--corner-q", o.corner_q, "upper diamond corner \"t x\"");
    cmd->add_option("--format", o.format, "json or csv");
    return;
  }
  cmd->add_option("--c", o.c, "compatibility constant in (0, 1/2]");
  cmd->add_option("--backend", o.backend, "minkowski, punctured, causet or sprinkle");
  cmd->add_option("--dimension", o.dimension, "spatial dimension");
  cmd->add_option("--removed", o.removed, "removed events \"t x; t x\"");
  cmd->add_option("--causet", o.causet, "causal set JSON file");
  cmd->add_option("--vertices", o.vertices, "causal set vertices CSV");
  cmd->add_option("--edges", o.edges, "causal set edges CSV");
  cmd->add_option("--density", o.density, "sprinkling density");
  cmd->add_option("--corner-p", o.corner_p, "lower sprinkle corner");
  cmd->add_option("--corner-q", o.corner_q, "upper sprinkle corner");
  cmd->add_option("--time", o.time, "canonical, cubic or causet");
  if (name == "geodesic" || name == "lens") {
    cmd->add_option("--p", o.p, "first endpoint");
    cmd->add_option("--q", o.q, "second endpoint");
    cmd->add_option("--epsilon", o.epsilon, "absolute epsilon");
  }
  if (name == "geodesic") {
    cmd->add_option("--depth", o.depth, "dyadic depth");
    cmd->add_option("--mode", o.mode, "exact or approximate");
    cmd->add_option("--cauchy-tolerance", o.cauchy_tolerance, "tail bound budget for the extension");
  }
  if (name == "geodesic" || name == "certify") {
    cmd->add_option("--epsilon-hat", o.epsilon_hat, "relative epsilon, eps = epsilon_hat * tau(p, q)");
  }
  if (name == "lens") {
    cmd->add_option("--resolution", o.resolution, "points per boundary arc");
    cmd->add_option("--samples", o.samples, "rejection samples");
  }
  if (name == "nulldist") {
    cmd->add_option("--pairs", o.pairs, "CSV of pairs, header src,dst");
    cmd->add_flag("--allow-analytic", o.allow_analytic, "closed form for canonical Minkowski");
  }
}

RunConfig resolve(const Overrides& o, const std::string& name) {
  RunConfig cfg;
  if (!o.config.empty()) apply_ini(parse_ini(read_text(o.config)), cfg);
  auto set = [](auto& field, const auto& value) {
    if (value) field = *value;
  };
  set(cfg.seed, o.seed);
  set(cfg.depth, o.depth);
  if (o.c) cfg.c = o.c;
  set(cfg.epsilon_hat, o.epsilon_hat);
  if (o.out) cfg.out = *o.out;
  set(cfg.sample_budget, o.sample_budget);
  if (o.cauchy_tolerance) cfg.cauchy_tolerance = o.cauchy_tolerance;
  if (o.tolerance) cfg.tolerance = o.tolerance;
  set(cfg.backend, o.backend);
  set(cfg.dimension, o.dimension);
  set(cfg.removed, o.removed);
  set(cfg.causet_json, o.causet);
  set(cfg.vertices_csv, o.vertices);
  set(cfg.edges_csv, o.edges);
  set(cfg.density, o.density);
  set(cfg.sprinkle_p, o.corner_p);
  set(cfg.sprinkle_q, o.corner_q);
  set(cfg.time_function, o.time);
  if (name == "lens") {
    set(cfg.lens_p, o.p);
    set(cfg.lens_q, o.q);
    if (o.epsilon) cfg.lens_epsilon = o.epsilon;
  } else {
    if (o.p) cfg.geodesic_p = o.p;
    if (o.q) cfg.geodesic_q = o.q;
    if (o.epsilon) cfg.epsilon = o.epsilon;
  }
  set(cfg.mode, o.mode);
  set(cfg.lens_resolution, o.resolution);
  set(cfg.lens_samples, o.samples);
  set(cfg.pairs, o.pairs);
  if (o.allow_analytic) cfg.allow_analytic = true;
  set(cfg.format, o.format);
  validate(cfg);
  return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic synthesis and certificates on Lorentzian pre-length space backends", "lorentz"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LORENTZ_VERSION);
  Overrides o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"geodesic", "build a dyadic midpoint curve and certify it"},
      {"nulldist", "tabulate null distances"},
      {"lens", "lens and strip figure with boundary CSV"},
      {"certify", "run the core, null-distance and compatibility certificates"},
      {"causet", "sprinkle a causal set and save it"},
  };
  for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), o, name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const RunConfig cfg = resolve(o, name);
    if (name == "geodesic") return cmd_geodesic(cfg, out);
    if (name == "nulldist") return cmd_nulldist(cfg, out);
    if (name == "lens") return cmd_lens(cfg, out);
    if (name == "certify") return cmd_certify(cfg, out);
    return cmd_causet(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace lorentz::cli
