#include "lorentz/midpoints.hpp"

#include <array>
#include <cmath>

namespace lorentz {

void validate_midpoint_parameters(double epsilon, double c, double epsilon_hat) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be finite and >= 0");
  }
  if (!(c > 0.0 && c <= 0.5)) throw Error(ErrorCode::kInvalidArgument, "c must lie in (0, 1/2]");
  if (!(epsilon_hat >= 0.0) || !std::isfinite(epsilon_hat)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon_hat must be finite and >= 0");
  }
}

namespace {

// Plane coordinates: y = p + s e_t + u e, with e the unit spatial direction
// of q - p.
struct Plane {
  double dt;
  double r;
  double h2;  // (tau(p,q)/2)^2

  std::array<double, 2> residual(double s, double u) const {
    return {s * s - u * u - h2, (dt - s) * (dt - s) - (r - u) * (r - u) - h2};
  }
  double norm(double s, double u) const {
    const auto f = residual(s, u);
    return std::hypot(f[0], f[1]);
  }
  // Both legs future-directed and timelike.
  bool admissible(double s, double u) const { return s > std::abs(u) && dt - s > std::abs(r - u); }
};

}  // namespace

std::optional<Event> solve_tau_midpoint(const Event& p, const Event& q, double tol) {
  const double dt = q.t - p.t;
  const double r = spatial_norm(p, q);
  if (!(dt > r)) return std::nullopt;
  const Plane plane{dt, r, 0.25 * (dt - r) * (dt + r)};
  const double scale = std::max(plane.h2, 1.0);

  double s = 0.5 * dt;
  double u = 0.5 * r;
  for (int it = 0; it < 100 && plane.norm(s, u) > 1e-3 * tol * scale; ++it) {
    const auto f = plane.residual(s, u);
    // Jacobian of the residual.
    const double a = 2.0 * s, b = -2.0 * u;
    const double c = -2.0 * (dt - s), d = 2.0 * (r - u);
    const double det = a * d - b * c;
    if (det == 0.0) break;
    const double ds = -(d * f[0] - b * f[1]) / det;
    const double du = -(-c * f[0] + a * f[1]) / det;
    double step = 1.0;
    const double current = plane.norm(s, u);
    while (step > 1e-6) {
      const double ns = s + step * ds;
      const double nu = u + step * du;
      if (plane.admissible(ns, nu) && plane.norm(ns, nu) < current) {
        s = ns;
        u = nu;
        break;
      }
      step *= 0.5;
    }
    if (step <= 1e-6) break;
  }

  if (plane.norm(s, u) > tol * scale) {
    // Grid search with successive zoom.
    double cs = 0.5 * dt, cu = 0.5 * r, half = 0.5 * dt;
    for (int zoom = 0; zoom < 60; ++zoom) {
      double best = std::numeric_limits<double>::infinity();
      double bs = cs, bu = cu;
      for (int i = -20; i <= 20; ++i) {
        for (int j = -20; j <= 20; ++j) {
          const double ts = cs + half * i / 20.0;
          const double tu = cu + half * j / 20.0;
          if (!plane.admissible(ts, tu)) continue;
          const double v = plane.norm(ts, tu);
          if (v < best) {
            best = v;
            bs = ts;
            bu = tu;
          }
        }
      }
      cs = bs;
      cu = bu;
      half *= 0.25;
    }
    s = cs;
    u = cu;
  }

  Event y = p;
  y.t += s;
  for (std::size_t i = 0; i < y.x.size(); ++i) {
    y.x[i] += r > 0.0 ? u * (q.x[i] - p.x[i]) / r : 0.0;
  }
  const double half_tau = 0.5 * minkowski_tau(p, q).value();
  const double slack = tol * std::max(1.0, half_tau);
  if (std::abs(minkowski_tau(p, y).value() - half_tau) > slack ||
      std::abs(minkowski_tau(y, q).value() - half_tau) > slack) {
    return std::nullopt;
  }
  return y;
}

}  // namespace lorentz
