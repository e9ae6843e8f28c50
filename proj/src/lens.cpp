#include "lorentz/lens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lorentz {

namespace {

// Point at proper time a from `centre` along rapidity theta, to the future
// (sign = +1) or the past (sign = -1).
Event on_hyperbola(const Event& centre, double a, double theta, double sign) {
  return Event(centre.t + sign * a * std::cosh(theta), centre.x[0] + sign * a * std::sinh(theta));
}

double rapidity(const Event& p, const Event& q) {
  return std::atanh((q.x[0] - p.x[0]) / (q.t - p.t));
}

// Rapidity interval of the arc of {tau(centre, y) = a} (sign +1) or
// {tau(y, centre) = a} (sign -1) on which the opposite constraint
// tau(..) >= a holds. The arc is centred on the rapidity of q - p.
std::pair<double, double> arc_range(const Event& centre, const Event& other, double a, double sign,
                                    double theta0) {
  auto inside = [&](double theta) {
    const Event y = on_hyperbola(centre, a, theta, sign);
    const Extended t = sign > 0 ? minkowski_tau(y, other) : minkowski_tau(other, y);
    return t.to_double() >= a;
  };
  auto edge = [&](double direction) {
    double lo = theta0;
    double hi = theta0 + direction;
    while (inside(hi)) hi = theta0 + 2.0 * (hi - theta0);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (inside(mid) ? lo : hi) = mid;
    }
    return lo;
  };
  return {edge(-1.0), edge(1.0)};
}

std::vector<Event> sample_arc(const Event& centre, double a, double sign, std::pair<double, double> range,
                              std::size_t resolution) {
  std::vector<Event> out;
  const std::size_t n = std::max<std::size_t>(resolution, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta =
        range.first + (range.second - range.first) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(on_hyperbola(centre, a, theta, sign));
  }
  return out;
}

void require_plane(const MinkowskiSpace& space) {
  if (space.spatial_dimension() != 1) {
    throw Error(ErrorCode::kUnsupportedBackend, "lens boundaries are drawn in R^{1,1} only");
  }
}

}  // namespace

LensStrip lens_strip_geometry(const MinkowskiSpace& space, const TimeFunctionBundle<Event>& bundle,
                              const Event& p, const Event& q, double epsilon, double c,
                              std::size_t resolution) {
  require_plane(space);
  validate_midpoint_parameters(epsilon, c, 0.0);
  if (!space.chronological(p, q)) {
    throw Error(ErrorCode::kNotChronological, space.describe(p) + " is not before " + space.describe(q));
  }
  LensStrip lens;
  lens.space = space;
  lens.bundle = bundle;
  lens.p = p;
  lens.q = q;
  lens.epsilon = epsilon;
  lens.c = c;
  lens.tau_pq = minkowski_tau(p, q).value();
  const double a = 0.5 * lens.tau_pq - epsilon;
  if (!(a > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lens is unbounded for eps >= tau(p,q)/2");
  }
  lens.strip_lower = (1.0 - c) * bundle(p) + c * bundle(q);
  lens.strip_upper = c * bundle(p) + (1.0 - c) * bundle(q);
  const double theta0 = rapidity(p, q);
  if (epsilon == 0.0) {
    const Event m = on_hyperbola(p, a, theta0, 1.0);
    lens.lower_arc = {m};
    lens.upper_arc = {m};
    return lens;
  }
  lens.lower_arc = sample_arc(p, a, 1.0, arc_range(p, q, a, 1.0, theta0), resolution);
  // The past hyperbola of q runs right-to-left in rapidity; flip it so both
  // arcs go left to right.
  auto upper = sample_arc(q, a, -1.0, arc_range(q, p, a, -1.0, theta0), resolution);
  std::reverse(upper.begin(), upper.end());
  lens.upper_arc = std::move(upper);
  return lens;
}

LensEpsilon lens_in_strip_epsilon(const Event& p, const Event& q, double c,
                                  const LensEpsilonOptions& options) {
  return lens_in_strip_epsilon(p, q, c, canonical_time(), options);
}

LensEpsilon lens_in_strip_epsilon(const Event& p, const Event& q, double c,
                                  const TimeFunctionBundle<Event>& bundle,
                                  const LensEpsilonOptions& options) {
  if (c >= 0.5) {
    throw Error(ErrorCode::kDegenerateStrip, "the strip for c = 1/2 only contains the eps = 0 lens");
  }
  validate_midpoint_parameters(0.0, c, 0.0);
  const MinkowskiSpace space(1);
  if (p.x.size() != 1 || q.x.size() != 1) {
    throw Error(ErrorCode::kUnsupportedBackend, "lens epsilon is computed in R^{1,1} only");
  }
  if (!space.chronological(p, q)) {
    throw Error(ErrorCode::kNotChronological, space.describe(p) + " is not before " + space.describe(q));
  }
  const double half = 0.5 * minkowski_tau(p, q).value();

  auto contained = [&](double eps) {
    const auto lens = lens_strip_geometry(space, bundle, p, q, eps, c, options.boundary_resolution);
    auto ok = [&](const Event& y) {
      const double t = bundle(y);
      return lens.strip_lower <= t && t <= lens.strip_upper;
    };
    return std::all_of(lens.lower_arc.begin(), lens.lower_arc.end(), ok) &&
           std::all_of(lens.upper_arc.begin(), lens.upper_arc.end(), ok);
  };

  double lo = 0.0;
  double hi = half;
  for (int it = 0; it < options.bisection_steps; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (contained(mid) ? lo : hi) = mid;
  }

  LensEpsilon out;
  out.epsilon = lo;
  if (lo == 0.0) return out;
  const auto lens = lens_strip_geometry(space, bundle, p, q, lo, c, options.boundary_resolution);
  return sample_lens_in_strip(lens, options.samples, options.seed);
}

LensEpsilon sample_lens_in_strip(const LensStrip& lens, std::size_t samples, std::uint64_t seed) {
  LensEpsilon out;
  out.epsilon = lens.epsilon;
  if (lens.epsilon == 0.0) return out;
  double t_min = std::numeric_limits<double>::infinity(), t_max = -t_min;
  double x_min = t_min, x_max = -t_min;
  for (const auto* arc : {&lens.lower_arc, &lens.upper_arc}) {
    for (const auto& e : *arc) {
      t_min = std::min(t_min, e.t);
      t_max = std::max(t_max, e.t);
      x_min = std::min(x_min, e.x[0]);
      x_max = std::max(x_max, e.x[0]);
    }
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> ut(t_min, t_max);
  std::uniform_real_distribution<double> ux(x_min, x_max);
  const std::size_t max_attempts = 1000 * samples + 1000;
  while (out.samples < samples && out.attempts < max_attempts) {
    ++out.attempts;
    const double t = ut(rng);
    const Event y(t, ux(rng));
    if (!lens.in_lens(y)) continue;
    ++out.samples;
    if (!lens.in_strip(y)) ++out.violations;
  }
  return out;
}

}  // namespace lorentz
