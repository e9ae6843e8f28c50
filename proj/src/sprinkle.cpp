#include "lorentz/sprinkle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace lorentz {

CausalSetSpace sprinkle_causet(const Event& p, const Event& q, const SprinkleOptions& options) {
  if (!(options.density > 0.0)) throw Error(ErrorCode::kInvalidArgument, "density must be > 0");
  if (p.x.size() != 1 || q.x.size() != 1) {
    throw Error(ErrorCode::kUnsupportedBackend, "sprinkling is implemented for R^{1,1} diamonds");
  }
  if (!(q.t - p.t > std::abs(q.x[0] - p.x[0]))) {
    throw Error(ErrorCode::kNotChronological, "diamond corners must be chronologically related");
  }
  // Null coordinates u = t + x, v = t - x turn the diamond into a rectangle.
  const double u0 = p.t + p.x[0];
  const double u1 = q.t + q.x[0];
  const double v0 = p.t - p.x[0];
  const double v1 = q.t - q.x[0];
  const double volume = 0.5 * (u1 - u0) * (v1 - v0);

  Rng rng(options.seed);
  std::poisson_distribution<long> count_dist(options.density * volume);
  const long count = count_dist(rng);
  std::uniform_real_distribution<double> uu(u0, u1);
  std::uniform_real_distribution<double> uv(v0, v1);

  std::vector<Event> interior;
  interior.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double u = uu(rng);
    const double v = uv(rng);
    interior.emplace_back(0.5 * (u + v), 0.5 * (u - v));
  }
  std::sort(interior.begin(), interior.end(), [](const Event& a, const Event& b) {
    return a.t != b.t ? a.t < b.t : a.x < b.x;
  });

  std::vector<Event> events;
  std::vector<VertexSpec> vertices;
  if (options.include_corners) {
    events.push_back(p);
    vertices.push_back(VertexSpec{"p", p.t});
    events.push_back(q);
    vertices.push_back(VertexSpec{"q", q.t});
  }
  for (std::size_t i = 0; i < interior.size(); ++i) {
    events.push_back(interior[i]);
    vertices.push_back(VertexSpec{"v" + std::to_string(i), interior[i].t});
  }
  if (vertices.empty()) throw Error(ErrorCode::kEmptySprinkle, "Poisson draw produced no elements");

  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = 0; j < events.size(); ++j) {
      if (i == j || !(events[j].t > events[i].t)) continue;
      if (events[j].t - events[i].t >= std::abs(events[j].x[0] - events[i].x[0])) {
        edges.push_back(EdgeSpec{vertices[i].id, vertices[j].id, minkowski_tau(events[i], events[j]).value()});
      }
    }
  }
  return CausalSetSpace(std::move(vertices), std::move(edges), options.exec);
}

}  // namespace lorentz
