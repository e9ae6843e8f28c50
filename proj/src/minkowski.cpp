#include "lorentz/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lorentz {

namespace {

void require_same_dimension(const Event& a, const Event& b) {
  if (a.x.size() != b.x.size()) {
    throw Error(ErrorCode::kInvalidArgument, "events of different spatial dimension");
  }
}

}  // namespace

double spatial_norm(const Event& a, const Event& b) {
  require_same_dimension(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    const double d = b.x[i] - a.x[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double euclidean_distance(const Event& a, const Event& b) {
  const double dt = b.t - a.t;
  const double r = spatial_norm(a, b);
  return std::hypot(dt, r);
}

Extended minkowski_tau(const Event& p, const Event& q) {
  const double dt = q.t - p.t;
  const double r = spatial_norm(p, q);
  if (!(dt > r)) return 0.0;
  // (dt - r)(dt + r) stays positive whenever dt > r.
  return std::sqrt((dt - r) * (dt + r));
}

MinkowskiSpace::MinkowskiSpace(int spatial_dimension, SamplingBox box)
    : dim_(spatial_dimension), box_(box) {
  if (dim_ < 1) throw Error(ErrorCode::kInvalidArgument, "spatial dimension must be >= 1");
  if (!(box_.t_min < box_.t_max) || !(box_.x_min < box_.x_max)) {
    throw Error(ErrorCode::kInvalidArgument, "empty sampling box");
  }
}

bool MinkowskiSpace::causal(const Event& p, const Event& q, double slack) const {
  const double dt = q.t - p.t;
  return dt >= spatial_norm(p, q) - slack && dt >= -slack;
}

bool MinkowskiSpace::chronological(const Event& p, const Event& q) const {
  return q.t - p.t > spatial_norm(p, q);
}

bool MinkowskiSpace::contains(const Event& p) const {
  if (p.x.size() != static_cast<std::size_t>(dim_) || !std::isfinite(p.t)) return false;
  return std::all_of(p.x.begin(), p.x.end(), [](double v) { return std::isfinite(v); });
}

bool MinkowskiSpace::precedes(const Event& a, const Event& b) const {
  if (a.t != b.t) return a.t < b.t;
  return a.x < b.x;
}

Event MinkowskiSpace::sample_point(Rng& rng) const {
  std::uniform_real_distribution<double> ut(box_.t_min, box_.t_max);
  std::uniform_real_distribution<double> ux(box_.x_min, box_.x_max);
  Event e;
  e.t = ut(rng);
  e.x.resize(static_cast<std::size_t>(dim_));
  for (auto& c : e.x) c = ux(rng);
  return e;
}

std::optional<Event> MinkowskiSpace::sample_future(const Event& p, Rng& rng) const {
  // dt in (0, half the box height]; radius uniform in [0, dt], with an
  // exactly null direction one time in eight.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double h = 0.5 * (box_.t_max - box_.t_min);
  const double dt = h * (1.0 - unit(rng));
  const bool null_step = unit(rng) < 0.125;
  const double r = null_step ? dt : dt * unit(rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> dir(static_cast<std::size_t>(dim_));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& c : dir) {
      c = gauss(rng);
      norm += c * c;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  Event q;
  q.t = p.t + dt;
  q.x.resize(dir.size());
  for (std::size_t i = 0; i < dir.size(); ++i) q.x[i] = p.x[i] + r * dir[i] / norm;
  if (!causal(p, q)) {
    // Rounding pushed a null sample outside the cone; pull it back inside.
    q.t = p.t + spatial_norm(p, q);
    if (!causal(p, q)) q.t = std::nextafter(q.t, q.t + 1.0);
  }
  return q;
}

std::optional<Event> MinkowskiSpace::limit(std::span<const Event> sequence) const {
  if (sequence.empty()) return std::nullopt;
  return sequence.back();
}

Event MinkowskiSpace::interpolate(const Event& a, const Event& b, double lambda) const {
  require_same_dimension(a, b);
  if (lambda == 0.0) return a;
  if (lambda == 1.0) return b;
  Event e;
  e.t = a.t + lambda * (b.t - a.t);
  e.x.resize(a.x.size());
  for (std::size_t i = 0; i < a.x.size(); ++i) e.x[i] = a.x[i] + lambda * (b.x[i] - a.x[i]);
  return e;
}

nlohmann::json MinkowskiSpace::to_json(const Event& p) const {
  nlohmann::json j = nlohmann::json::array();
  j.push_back(p.t);
  for (double c : p.x) j.push_back(c);
  return j;
}

Event MinkowskiSpace::from_json(const nlohmann::json& j) const {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim_) + 1) {
    throw Error(ErrorCode::kParse, "expected an event array of length " + std::to_string(dim_ + 1));
  }
  Event e;
  e.t = j[0].get<double>();
  for (std::size_t i = 1; i < j.size(); ++i) e.x.push_back(j[i].get<double>());
  return e;
}

std::string MinkowskiSpace::describe(const Event& p) const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.t;
  for (double c : p.x) os << ", " << c;
  os << ")";
  return os.str();
}

Event MinkowskiSpace::parse(std::string_view text) const {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::replace(s.begin(), s.end(), ':', ' ');
  std::istringstream is(s);
  std::vector<double> values;
  std::string token;
  while (is >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad coordinate '" + token + "'");
    }
  }
  if (values.size() != static_cast<std::size_t>(dim_) + 1) {
    throw Error(ErrorCode::kParse, "event '" + std::string(text) + "' needs " +
                                       std::to_string(dim_ + 1) + " coordinates");
  }
  return Event(values[0], std::vector<double>(values.begin() + 1, values.end()));
}

PuncturedMinkowski::PuncturedMinkowski(MinkowskiSpace base, std::vector<Event> removed,
                                       double removal_radius)
    : base_(std::move(base)), removed_(std::move(removed)), removal_radius_(removal_radius) {
  for (const auto& r : removed_) {
    if (!base_.contains(r)) throw Error(ErrorCode::kInvalidArgument, "removed point off the base");
  }
}

bool PuncturedMinkowski::contains(const Event& p) const {
  if (!base_.contains(p)) return false;
  for (const auto& r : removed_) {
    double dist = std::abs(p.t - r.t);
    for (std::size_t i = 0; i < p.x.size(); ++i) dist = std::max(dist, std::abs(p.x[i] - r.x[i]));
    if (dist <= removal_radius_) return false;
  }
  return true;
}

Event PuncturedMinkowski::sample_point(Rng& rng) const {
  for (;;) {
    Event e = base_.sample_point(rng);
    if (contains(e)) return e;
  }
}

std::optional<Event> PuncturedMinkowski::sample_future(const Event& p, Rng& rng) const {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto q = base_.sample_future(p, rng);
    if (q && contains(*q)) return q;
  }
  return std::nullopt;
}

std::optional<Event> PuncturedMinkowski::limit(std::span<const Event> sequence) const {
  auto lim = base_.limit(sequence);
  if (lim && !contains(*lim)) return std::nullopt;
  return lim;
}

namespace {

TimeFunctionBundle<Event> euclidean_bundle(std::string name, std::function<double(const Event&)> f,
                                           double radius, bool canonical) {
  TimeFunctionBundle<Event> b;
  b.name = std::move(name);
  b.time = std::move(f);
  b.canonical = canonical;
  b.neighbourhood = [radius](const Event& center) -> std::optional<Neighbourhood<Event>> {
    Neighbourhood<Event> u;
    u.contains = [center, radius](const Event& e) { return euclidean_distance(center, e) < radius; };
    u.metric = [](const Event& a, const Event& b) { return euclidean_distance(a, b); };
    u.description = "euclidean ball r=" + std::to_string(radius);
    return u;
  };
  return b;
}

}  // namespace

TimeFunctionBundle<Event> canonical_time(double witness_radius) {
  return euclidean_bundle("canonical", [](const Event& e) { return e.t; }, witness_radius, true);
}

TimeFunctionBundle<Event> cubic_time(double witness_radius) {
  return euclidean_bundle("cubic", [](const Event& e) { return e.t * e.t * e.t; }, witness_radius,
                          false);
}

}  // namespace lorentz
