#include "lorentz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace lorentz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Comparability from the stored edge list by plain DFS from every vertex.
std::vector<std::vector<bool>> comparability(const CausalSetSpace& space) {
  const std::size_t n = space.size();
  std::vector<std::vector<std::uint32_t>> succ(n);
  for (const auto& e : space.edges()) succ[space.at(e.src).index].push_back(space.at(e.dst).index);
  std::vector<std::vector<bool>> cmp(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(s)};
    std::vector<bool> seen(n, false);
    seen[s] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      cmp[s][v] = cmp[v][s] = true;
      for (auto w : succ[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return cmp;
}

struct WalkSearch {
  const std::vector<std::vector<bool>>& cmp;
  const std::vector<double>& time;
  std::uint32_t target;
  std::size_t budget;
  std::size_t expanded = 0;
  double best = kInf;
  std::vector<bool> on_walk;

  void visit(std::uint32_t v, double cost) {
    if (++expanded > budget) throw BudgetExceeded("causal-set walk enumeration", best);
    if (v == target) {
      best = std::min(best, cost);
      return;
    }
    on_walk[v] = true;
    for (std::uint32_t w = 0; w < time.size(); ++w) {
      if (on_walk[w] || !cmp[v][w]) continue;
      const double next = cost + std::abs(time[w] - time[v]);
      if (next < best) visit(w, next);
    }
    on_walk[v] = false;
  }
};

}  // namespace

double causet_null_distance_oracle(const CausalSetSpace& space,
                                   const TimeFunctionBundle<Vertex>& bundle, Vertex p, Vertex q,
                                   std::size_t node_budget) {
  const auto cmp = comparability(space);
  std::vector<double> time(space.size());
  for (std::size_t i = 0; i < time.size(); ++i) time[i] = bundle(space.point(i));
  WalkSearch search{cmp, time, q.index, node_budget, 0, kInf, std::vector<bool>(time.size(), false)};
  search.visit(p.index, 0.0);
  return search.best;
}

double minkowski_null_distance_oracle(const MinkowskiSpace& space,
                                      const TimeFunctionBundle<Event>& bundle, const Event& p,
                                      const Event& q, double resolution, std::size_t node_budget) {
  if (space.spatial_dimension() != 1) {
    throw Error(ErrorCode::kUnsupportedBackend, "lattice oracle needs R^{1,1}");
  }
  if (!(resolution > 0.0)) throw Error(ErrorCode::kInvalidArgument, "resolution must be positive");
  if (space.causal(p, q) || space.causal(q, p)) return std::abs(bundle(q) - bundle(p));

  const double h = resolution;
  const double pad = std::max(std::abs(q.t - p.t), std::abs(q.x[0] - p.x[0]));
  const double t_lo = std::min(p.t, q.t) - pad;
  const double t_hi = std::max(p.t, q.t) + pad;
  const double x_lo = std::min(p.x[0], q.x[0]) - pad;
  const double x_hi = std::max(p.x[0], q.x[0]) + pad;
  // Lattice index ranges relative to p.
  const long i_lo = static_cast<long>(std::floor((t_lo - p.t) / h));
  const long i_hi = static_cast<long>(std::ceil((t_hi - p.t) / h));
  const long j_lo = static_cast<long>(std::floor((x_lo - p.x[0]) / h));
  const long j_hi = static_cast<long>(std::ceil((x_hi - p.x[0]) / h));
  const auto rows = static_cast<std::size_t>(i_hi - i_lo + 1);
  const auto cols = static_cast<std::size_t>(j_hi - j_lo + 1);
  if (rows * cols > node_budget) {
    throw BudgetExceeded("lattice of " + std::to_string(rows * cols) + " nodes", kInf);
  }
  const std::size_t lattice = rows * cols;
  const std::size_t sink = lattice;
  auto node_of = [&](long i, long j) {
    return static_cast<std::size_t>(i - i_lo) * cols + static_cast<std::size_t>(j - j_lo);
  };
  auto event_of = [&](std::size_t id) {
    const long i = static_cast<long>(id / cols) + i_lo;
    const long j = static_cast<long>(id % cols) + j_lo;
    return Event(p.t + static_cast<double>(i) * h, p.x[0] + static_cast<double>(j) * h);
  };

  std::vector<double> time(lattice);
  for (std::size_t id = 0; id < lattice; ++id) time[id] = bundle(event_of(id));

  // Lattice nodes attached to q.
  std::vector<std::pair<std::size_t, double>> to_sink;
  const double tq = bundle(q);
  const long ci = std::lround((q.t - p.t) / h);
  const long cj = std::lround((q.x[0] - p.x[0]) / h);
  for (long i = ci - 2; i <= ci + 2; ++i) {
    for (long j = cj - 2; j <= cj + 2; ++j) {
      if (i < i_lo || i > i_hi || j < j_lo || j > j_hi) continue;
      const std::size_t id = node_of(i, j);
      const Event g = event_of(id);
      if (std::max(std::abs(g.t - q.t), std::abs(g.x[0] - q.x[0])) > 2.0 * h + 1e-12 * h) continue;
      if (space.causal(g, q) || space.causal(q, g)) to_sink.emplace_back(id, std::abs(tq - time[id]));
    }
  }

  std::vector<double> dist(lattice + 1, kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const std::size_t source = node_of(0, 0);
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  constexpr long kSteps[6][2] = {{1, 0}, {-1, 0}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    if (v == sink) break;
    if (d >= dist[sink]) break;
    const long i = static_cast<long>(v / cols) + i_lo;
    const long j = static_cast<long>(v % cols) + j_lo;
    for (const auto& step : kSteps) {
      const long ni = i + step[0];
      const long nj = j + step[1];
      if (ni < i_lo || ni > i_hi || nj < j_lo || nj > j_hi) continue;
      const std::size_t w = node_of(ni, nj);
      const double nd = d + std::abs(time[w] - time[v]);
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.emplace(nd, w);
      }
    }
    for (const auto& [id, cost] : to_sink) {
      if (id == v && d + cost < dist[sink]) {
        dist[sink] = d + cost;
        heap.emplace(dist[sink], sink);
      }
    }
  }
  return dist[sink];
}

}  // namespace lorentz
