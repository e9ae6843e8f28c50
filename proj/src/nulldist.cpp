#include "lorentz/nulldist.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <queue>

namespace lorentz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Dijkstra {
  std::vector<double> dist;
  std::vector<std::uint32_t> parent;
};

Dijkstra run_dijkstra(const CausalSetSpace& space, const TimeFunctionBundle<Vertex>& bundle,
                      std::size_t source, std::optional<std::size_t> target) {
  const std::size_t n = space.size();
  const auto& adj = space.undirected_adjacency();
  Dijkstra out;
  out.dist.assign(n, kInf);
  out.parent.assign(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<double> time(n);
  for (std::size_t i = 0; i < n; ++i) time[i] = bundle(space.point(i));
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  out.dist[source] = 0.0;
  heap.emplace(0.0, static_cast<std::uint32_t>(source));
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > out.dist[v]) continue;
    if (target && v == *target) break;
    for (std::uint32_t w : adj[v]) {
      const double nd = d + std::abs(time[w] - time[v]);
      if (nd < out.dist[w] || (nd == out.dist[w] && v < out.parent[w])) {
        const bool improved = nd < out.dist[w];
        out.dist[w] = nd;
        out.parent[w] = v;
        if (improved) heap.emplace(nd, w);
      }
    }
  }
  return out;
}

Event shifted(const Event& base, double dt, const std::vector<double>& dir, double along) {
  Event e = base;
  e.t += dt;
  for (std::size_t i = 0; i < e.x.size(); ++i) e.x[i] += along * dir[i];
  return e;
}

// Best path from p to q with at most two null segments through an apex.
NullDistanceResult<Event> two_segment(const MinkowskiSpace& space,
                                      const TimeFunctionBundle<Event>& bundle, const Event& p,
                                      const Event& q) {
  NullDistanceResult<Event> r;
  r.method = NullMethod::kZigzag;
  if (space.causal(p, q) || space.causal(q, p)) {
    const bool fwd = space.causal(p, q);
    r.witness.nodes = {p, q};
    r.witness.breakpoints = {0.0, 1.0};
    r.witness.orientation = {fwd ? Orientation::kFuture : Orientation::kPast};
    r.value = std::abs(bundle(q) - bundle(p));
    return r;
  }
  const double dist = spatial_norm(p, q);
  std::vector<double> dir(p.x.size());
  for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = (q.x[i] - p.x[i]) / dist;
  // Apex of J+(p) ∩ J+(q) with least time, and of J-(p) ∩ J-(q) with most.
  const double up_dt = 0.5 * (q.t - p.t + dist);
  const double down_dt = 0.5 * (q.t - p.t - dist);
  const Event up = shifted(p, up_dt, dir, up_dt);
  const Event down = shifted(p, down_dt, dir, -down_dt);
  const double up_len = std::abs(bundle(up) - bundle(p)) + std::abs(bundle(q) - bundle(up));
  const double down_len = std::abs(bundle(p) - bundle(down)) + std::abs(bundle(q) - bundle(down));
  r.witness.breakpoints = {0.0, 0.5, 1.0};
  if (up_len <= down_len) {
    r.value = up_len;
    r.witness.nodes = {p, up, q};
    r.witness.orientation = {Orientation::kFuture, Orientation::kPast};
  } else {
    r.value = down_len;
    r.witness.nodes = {p, down, q};
    r.witness.orientation = {Orientation::kPast, Orientation::kFuture};
  }
  return r;
}

NullDistanceResult<Event> concatenate(const NullDistanceResult<Event>& a,
                                      const NullDistanceResult<Event>& b) {
  NullDistanceResult<Event> r;
  r.method = NullMethod::kZigzag;
  r.value = a.value + b.value;
  r.witness.nodes = a.witness.nodes;
  r.witness.nodes.insert(r.witness.nodes.end(), b.witness.nodes.begin() + 1, b.witness.nodes.end());
  r.witness.orientation = a.witness.orientation;
  r.witness.orientation.insert(r.witness.orientation.end(), b.witness.orientation.begin(),
                               b.witness.orientation.end());
  const std::size_t segments = r.witness.orientation.size();
  for (std::size_t i = 0; i <= segments; ++i) {
    r.witness.breakpoints.push_back(static_cast<double>(i) / static_cast<double>(segments));
  }
  return r;
}

}  // namespace

double analytic_null_distance(const Event& p, const Event& q) {
  return std::max(std::abs(q.t - p.t), spatial_norm(p, q));
}

NullDistanceResult<Event> zigzag_null_distance(const MinkowskiSpace& space,
                                               const TimeFunctionBundle<Event>& bundle,
                                               const Event& p, const Event& q) {
  NullDistanceResult<Event> best = two_segment(space, bundle, p, q);
  if (best.witness.segment_count() <= 1) return best;

  // Four segments: p -> w -> q with w = p + s (q - p) + h e_t, minimised by
  // a compass search over (s, h).
  const double scale = std::max(analytic_null_distance(p, q), 1e-300);
  auto breakpoint = [&](double s, double h) {
    Event w = space.interpolate(p, q, s);
    w.t += h;
    return w;
  };
  auto cost = [&](double s, double h) {
    const Event w = breakpoint(s, h);
    return two_segment(space, bundle, p, w).value + two_segment(space, bundle, w, q).value;
  };
  for (double h0 : {0.0, 0.5 * scale, -0.5 * scale}) {
    double s = 0.5;
    double h = h0;
    double value = cost(s, h);
    double step = 0.25;
    while (step > 1e-12) {
      bool moved = false;
      for (const auto& [ds, dh] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
        const double ns = std::clamp(s + ds * step, 0.0, 1.0);
        const double nh = h + dh * step * scale;
        const double nv = cost(ns, nh);
        if (nv < value) {
          s = ns;
          h = nh;
          value = nv;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (value < best.value) {
      const Event w = breakpoint(s, h);
      best = concatenate(two_segment(space, bundle, p, w), two_segment(space, bundle, w, q));
    }
  }
  return best;
}

NullDistanceResult<Event> null_distance_noncausal(const MinkowskiSpace& space,
                                                  const TimeFunctionBundle<Event>& bundle,
                                                  const Event& p, const Event& q,
                                                  const NullDistanceOptions& options) {
  if (options.allow_analytic && bundle.canonical) {
    NullDistanceResult<Event> r = two_segment(space, bundle, p, q);
    r.value = analytic_null_distance(p, q);
    r.method = NullMethod::kAnalytic;
    return r;
  }
  return zigzag_null_distance(space, bundle, p, q);
}

NullDistanceResult<Event> null_distance_noncausal(const PuncturedMinkowski& space,
                                                  const TimeFunctionBundle<Event>& bundle,
                                                  const Event& p, const Event& q,
                                                  const NullDistanceOptions& options) {
  // Removing finitely many points leaves the infimum unchanged in R^{1,n}:
  // witnesses through a removed point can be perturbed at arbitrarily small
  // extra null length.
  return null_distance_noncausal(space.base(), bundle, p, q, options);
}

std::vector<double> graph_null_distances_from(const CausalSetSpace& space,
                                              const TimeFunctionBundle<Vertex>& bundle,
                                              std::size_t source) {
  return run_dijkstra(space, bundle, source, std::nullopt).dist;
}

NullDistanceResult<Vertex> graph_null_distance(const CausalSetSpace& space,
                                               const TimeFunctionBundle<Vertex>& bundle, Vertex p,
                                               Vertex q) {
  const auto dj = run_dijkstra(space, bundle, p.index, q.index);
  if (dj.dist[q.index] == kInf) {
    throw Error(ErrorCode::kNotConnected,
                "no piecewise causal path from " + space.id(p) + " to " + space.id(q));
  }
  std::vector<Vertex> path;
  for (std::uint32_t v = q.index; v != p.index; v = dj.parent[v]) path.push_back(space.point(v));
  path.push_back(p);
  std::reverse(path.begin(), path.end());
  NullDistanceResult<Vertex> r;
  r.method = NullMethod::kGraph;
  r.value = dj.dist[q.index];
  r.witness = make_piecewise_curve(space, std::move(path));
  return r;
}

NullDistanceResult<Vertex> null_distance_noncausal(const CausalSetSpace& space,
                                                   const TimeFunctionBundle<Vertex>& bundle,
                                                   Vertex p, Vertex q,
                                                   const NullDistanceOptions& /*options*/) {
  return graph_null_distance(space, bundle, p, q);
}

namespace kernels {

std::vector<double> null_distance_matrix(const CausalSetSpace& space,
                                         const TimeFunctionBundle<Vertex>& bundle, Execution exec) {
  const std::size_t n = space.size();
  std::vector<double> out(n * n, kInf);
  for_each_index(
      n,
      [&](std::size_t s) {
        const auto row = run_dijkstra(space, bundle, s, std::nullopt).dist;
        std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(s * n));
      },
      exec);
  return out;
}

}  // namespace kernels

TimeFunctionBundle<Vertex> causet_time(const CausalSetSpace& space) {
  TimeFunctionBundle<Vertex> b;
  b.name = "causet";
  std::vector<double> times;
  for (const auto& v : space.vertices()) times.push_back(v.time);
  auto shared_times = std::make_shared<const std::vector<double>>(std::move(times));
  b.time = [shared_times](Vertex v) { return (*shared_times)[v.index]; };

  // d_U is the graph null distance; dense when small, per-query otherwise.
  std::shared_ptr<const std::vector<double>> dense;
  const std::size_t n = space.size();
  if (n <= CausalSetSpace::kDenseTauLimit) {
    TimeFunctionBundle<Vertex> plain;
    plain.time = b.time;
    dense = std::make_shared<const std::vector<double>>(
        kernels::null_distance_matrix(space, plain, Execution::kParallel));
  }
  auto space_copy = std::make_shared<const CausalSetSpace>(space);
  auto time_fn = b.time;
  b.neighbourhood = [dense, n, space_copy, time_fn](Vertex) -> std::optional<Neighbourhood<Vertex>> {
    Neighbourhood<Vertex> u;
    u.contains = [](Vertex) { return true; };
    u.description = "whole space, graph metric |dT|";
    if (dense) {
      u.metric = [dense, n](Vertex a, Vertex b) { return (*dense)[a.index * n + b.index]; };
    } else {
      u.metric = [space_copy, time_fn](Vertex a, Vertex b) {
        TimeFunctionBundle<Vertex> plain;
        plain.time = time_fn;
        return graph_null_distances_from(*space_copy, plain, a.index)[b.index];
      };
    }
    return u;
  };
  return b;
}

}  // namespace lorentz
