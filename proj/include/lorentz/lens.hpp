#pragma once

// Lens and strip of a chronological pair in R^{1,1}.

#include <cstdint>
#include <vector>

#include "lorentz/midpoints.hpp"
#include "lorentz/minkowski.hpp"

namespace lorentz {

/// Lens L = H_p^{eps,+} ∩ H_q^{eps,-} and strip S for c, with boundary
/// polylines for plotting.
///
/// `lower_arc` is the part of the hyperbola tau(p, y) = tau(p,q)/2 - eps
/// bounding the lens from below, `upper_arc` the part of
/// tau(y, q) = tau(p,q)/2 - eps bounding it from above; both run from the
/// left intersection point to the right one. At eps = 0 both collapse to
/// the exact midpoint.
struct LensStrip {
  MinkowskiSpace space;
  TimeFunctionBundle<Event> bundle;
  Event p;
  Event q;
  double epsilon = 0.0;
  double c = 0.5;
  double tau_pq = 0.0;
  double strip_lower = 0.0;  // (1-c) T(p) + c T(q)
  double strip_upper = 0.0;  // c T(p) + (1-c) T(q)
  std::vector<Event> lower_arc;
  std::vector<Event> upper_arc;

  bool in_lens(const Event& y) const { return predicates::in_lens(space, p, q, y, epsilon); }
  bool in_strip(const Event& y) const {
    return predicates::in_strip(bundle, p, q, y, c, space.tolerance());
  }
  double strip_width() const { return strip_upper - strip_lower; }
};

/// Requires p << q, 0 <= eps < tau(p,q)/2 and 0 < c <= 1/2. Boundary arcs
/// are sampled with `resolution` points each. Throws UnsupportedBackend off
/// R^{1,1}.
LensStrip lens_strip_geometry(const MinkowskiSpace& space, const TimeFunctionBundle<Event>& bundle,
                              const Event& p, const Event& q, double epsilon, double c,
                              std::size_t resolution = 257);

struct LensEpsilonOptions {
  std::size_t samples = 10'000;
  std::uint64_t seed = 0;
  std::size_t boundary_resolution = 1025;
  int bisection_steps = 80;
};

struct LensEpsilon {
  double epsilon = 0.0;
  std::size_t samples = 0;     // lens points drawn by rejection sampling
  std::size_t attempts = 0;    // candidate points drawn
  std::size_t violations = 0;  // lens samples outside the strip
};

/// Largest eps (up to bisection accuracy) whose lens boundary stays in the
/// strip, then re-verified by rejection sampling of lens points from the
/// lens bounding box. T defaults to coordinate time. Throws DegenerateStrip
/// if c >= 1/2 and NotChronological unless p << q.
LensEpsilon lens_in_strip_epsilon(const Event& p, const Event& q, double c,
                                  const LensEpsilonOptions& options = {});
LensEpsilon lens_in_strip_epsilon(const Event& p, const Event& q, double c,
                                  const TimeFunctionBundle<Event>& bundle,
                                  const LensEpsilonOptions& options);

/// Draws `samples` lens points by rejection from the bounding box of the
/// boundary arcs and counts those outside the strip. Returns no samples at
/// eps = 0.
LensEpsilon sample_lens_in_strip(const LensStrip& lens, std::size_t samples, std::uint64_t seed);

}  // namespace lorentz
