#include "lorentz/causet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

namespace lorentz {

std::size_t BitMatrix::row_count(std::size_t r) const {
  std::size_t count = 0;
  for (std::size_t w = 0; w < words_; ++w) count += static_cast<std::size_t>(std::popcount(bits_[r * words_ + w]));
  return count;
}

namespace kernels {

BitMatrix reachability(const std::vector<std::vector<std::uint32_t>>& successors,
                       const std::vector<std::uint32_t>& topo, Execution exec) {
  const std::size_t n = successors.size();
  BitMatrix reach(n);
  if (exec == Execution::kSerial) {
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const std::uint32_t v = *it;
      reach.set(v, v);
      for (std::uint32_t w : successors[v]) reach.merge_row(v, w);
    }
    return reach;
  }
  // Height = longest hop count to a sink; rows of equal height are independent.
  std::vector<std::uint32_t> height(n, 0);
  std::uint32_t max_height = 0;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const std::uint32_t v = *it;
    for (std::uint32_t w : successors[v]) height[v] = std::max(height[v], height[w] + 1);
    max_height = std::max(max_height, height[v]);
  }
  std::vector<std::vector<std::uint32_t>> levels(n == 0 ? 0 : max_height + 1);
  for (std::uint32_t v = 0; v < n; ++v) levels[height[v]].push_back(v);
  for (const auto& level : levels) {
    for_each_index(
        level.size(),
        [&](std::size_t i) {
          const std::uint32_t v = level[i];
          reach.set(v, v);
          for (std::uint32_t w : successors[v]) reach.merge_row(v, w);
        },
        Execution::kParallel);
  }
  return reach;
}

std::vector<double> longest_paths(
    const std::vector<std::vector<std::pair<std::uint32_t, double>>>& out,
    const std::vector<std::uint32_t>& topo, Execution exec) {
  const std::size_t n = out.size();
  std::vector<std::uint32_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[topo[i]] = static_cast<std::uint32_t>(i);
  std::vector<double> result(n * n, 0.0);
  constexpr double kUnreached = -std::numeric_limits<double>::infinity();
  for_each_index(
      n,
      [&](std::size_t s) {
        std::vector<double> dist(n, kUnreached);
        dist[s] = 0.0;
        for (std::size_t k = pos[s]; k < n; ++k) {
          const std::uint32_t v = topo[k];
          if (dist[v] == kUnreached) continue;
          for (const auto& [w, weight] : out[v]) dist[w] = std::max(dist[w], dist[v] + weight);
        }
        for (std::size_t v = 0; v < n; ++v) result[s * n + v] = dist[v] == kUnreached ? 0.0 : dist[v];
      },
      exec);
  return result;
}

}  // namespace kernels

CausalSetSpace::CausalSetSpace(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges,
                               Execution exec)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "causal set has no vertices");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "too many vertices");
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!std::isfinite(vertices_[i].time)) {
      throw Error(ErrorCode::kInvalidArgument, "vertex '" + vertices_[i].id + "' has non-finite T");
    }
    if (!by_id_.emplace(vertices_[i].id, i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate vertex id '" + vertices_[i].id + "'");
    }
  }

  // Parallel edges collapse to the heaviest one.
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> unique_edges;
  for (const auto& e : edges) {
    const auto s = by_id_.find(e.src);
    const auto d = by_id_.find(e.dst);
    if (s == by_id_.end() || d == by_id_.end()) {
      throw Error(ErrorCode::kInvalidArgument, "edge references unknown vertex " + e.src + "->" + e.dst);
    }
    if (!std::isfinite(e.tau) || e.tau < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "edge " + e.src + "->" + e.dst + " has invalid tau");
    }
    auto [it, inserted] = unique_edges.emplace(std::make_pair(s->second, d->second), e.tau);
    if (!inserted) it->second = std::max(it->second, e.tau);
  }

  std::vector<std::vector<std::uint32_t>> successors(n);
  std::vector<std::uint32_t> indegree(n, 0);
  for (const auto& [key, weight] : unique_edges) {
    successors[key.first].push_back(key.second);
    ++indegree[key.second];
  }

  // Kahn's algorithm, smallest index first.
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    const std::uint32_t v = ready.back();
    ready.pop_back();
    topo_.push_back(v);
    for (std::uint32_t w : successors[v]) {
      if (--indegree[w] == 0) {
        ready.push_back(w);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    }
  }
  if (topo_.size() != n) throw Error(ErrorCode::kCycleDetected, "edge list contains a directed cycle");
  topo_pos_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) topo_pos_[topo_[i]] = i;

  for (const auto& [key, weight] : unique_edges) {
    if (!(vertices_[key.second].time > vertices_[key.first].time)) {
      throw Error(ErrorCode::kInvalidArgument, "T does not increase along edge " +
                                                   vertices_[key.first].id + "->" +
                                                   vertices_[key.second].id);
    }
  }

  reach_ = kernels::reachability(successors, topo_, exec);

  // Transitive reduction: drop u->v when another successor of u reaches v.
  out_.assign(n, {});
  adjacency_.assign(n, {});
  for (const auto& [key, weight] : unique_edges) {
    const auto [u, v] = key;
    bool implied = false;
    for (std::uint32_t w : successors[u]) {
      if (w != v && reach_.test(w, v)) {
        implied = true;
        break;
      }
    }
    if (implied) continue;
    out_[u].emplace_back(v, weight);
    links_.push_back(Link{u, v, weight});
    edges_.push_back(EdgeSpec{vertices_[u].id, vertices_[v].id, weight});
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  if (n <= kDenseTauLimit) tau_dense_ = kernels::longest_paths(out_, topo_, exec);

  // Rounding allowance for sums of |dT| and of weights along paths of up
  // to n links. Zero when every T and weight is an integer.
  double scale = 0.0;
  double weight_sum = 0.0;
  bool integral = true;
  for (const auto& v : vertices_) {
    scale = std::max(scale, std::abs(v.time));
    integral = integral && v.time == std::round(v.time);
  }
  for (const auto& l : links_) {
    weight_sum += l.tau;
    integral = integral && l.tau == std::round(l.tau);
  }
  scale = std::max(scale, weight_sum);
  tol_ = integral ? 0.0 : 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
}

std::optional<Vertex> CausalSetSpace::find(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return Vertex{it->second};
}

Vertex CausalSetSpace::at(std::string_view id) const {
  if (auto v = find(id)) return *v;
  throw Error(ErrorCode::kInvalidArgument, "unknown vertex id '" + std::string(id) + "'");
}

Extended CausalSetSpace::tau(Vertex a, Vertex b) const {
  if (!tau_dense_.empty()) return tau_dense_[a.index * vertices_.size() + b.index];
  return tau_sweep(a.index, b.index);
}

Extended CausalSetSpace::tau_sweep(std::uint32_t a, std::uint32_t b) const {
  if (!reach_.test(a, b)) return 0.0;
  const std::size_t n = vertices_.size();
  constexpr double kUnreached = -std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kUnreached);
  dist[a] = 0.0;
  for (std::size_t k = topo_pos_[a]; k <= topo_pos_[b]; ++k) {
    const std::uint32_t v = topo_[k];
    if (dist[v] == kUnreached) continue;
    for (const auto& [w, weight] : out_[v]) {
      if (reach_.test(w, b)) dist[w] = std::max(dist[w], dist[v] + weight);
    }
  }
  return dist[b];
}

bool CausalSetSpace::chronological(Vertex a, Vertex b) const {
  return causal(a, b) && tau(a, b) > Extended(0.0);
}

Vertex CausalSetSpace::sample_point(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, vertices_.size() - 1);
  return point(pick(rng));
}

std::optional<Vertex> CausalSetSpace::sample_future(Vertex v, Rng& rng) const {
  const std::size_t count = reach_.row_count(v.index);
  std::uniform_int_distribution<std::size_t> pick(0, count - 1);
  std::size_t target = pick(rng);
  for (std::size_t w = 0; w < vertices_.size(); ++w) {
    if (reach_.test(v.index, w)) {
      if (target == 0) return point(w);
      --target;
    }
  }
  return std::nullopt;
}

std::optional<Vertex> CausalSetSpace::limit(std::span<const Vertex> sequence) const {
  if (sequence.size() < 2) return std::nullopt;
  const std::size_t tail = (sequence.size() + 1) / 2;
  const Vertex last = sequence.back();
  for (std::size_t i = sequence.size() - tail; i < sequence.size(); ++i) {
    if (sequence[i] != last) return std::nullopt;
  }
  return last;
}

Vertex CausalSetSpace::from_json(const nlohmann::json& j) const {
  if (!j.is_string()) throw Error(ErrorCode::kParse, "expected a vertex id string");
  return at(j.get<std::string>());
}

}  // namespace lorentz
