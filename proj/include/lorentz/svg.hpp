#pragma once

// Figure and table emitters for the lens/strip picture.
//
// SVG coordinates: a fixed 1000 x 1000 viewBox. With centre (t_c, x_c) the
// midpoint of p and q and half-span s = 0.6 * max(|t_q - t_p|, |x_q - x_p|),
// a world point (t, x) maps to
//   X = 500 + (x - x_c) * 500 / s,   Y = 500 - (t - t_c) * 500 / s,
// so time runs upward. Coordinates are printed with six decimals.

#include <string>

#include "lorentz/lens.hpp"

namespace lorentz {

/// Lens (filled, hyperbola-bounded), the two strip lines, labelled p, q and
/// the exact midpoint m, and a dashed T axis through p. Strip lines are
/// drawn as lines of constant t, so the bundle must be canonical
/// (UnsupportedBackend otherwise).
std::string lens_figure_svg(const LensStrip& lens);

/// CSV "curve_id,t,x" with the polylines lens_lower, lens_upper,
/// strip_lower and strip_upper (strip lines span the figure window).
std::string lens_boundary_csv(const LensStrip& lens);

}  // namespace lorentz
