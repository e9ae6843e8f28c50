#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lorentz/causet.hpp"
#include "lorentz/minkowski.hpp"
#include "lorentz/nulldist.hpp"

namespace lorentz::testing {

inline CausalSetSpace diamond() {
  return CausalSetSpace({{"p", 0}, {"a", 1}, {"b", 1}, {"q", 2}},
                        {{"p", "a", 1}, {"a", "q", 1}, {"p", "b", 1}, {"b", "q", 1}});
}

inline CausalSetSpace skewed_diamond() {
  return CausalSetSpace({{"p", 0}, {"a", 0.2}, {"b", 1.8}, {"q", 2}},
                        {{"p", "a", 1}, {"a", "q", 1}, {"p", "b", 1}, {"b", "q", 1}});
}

// v0 -> v1 -> ... -> v_n with unit weights and T = index.
inline CausalSetSpace chain(int edges) {
  std::vector<VertexSpec> v;
  std::vector<EdgeSpec> e;
  for (int i = 0; i <= edges; ++i) v.push_back({"v" + std::to_string(i), static_cast<double>(i)});
  for (int i = 0; i < edges; ++i) e.push_back({v[i].id, v[i + 1].id, 1.0});
  return CausalSetSpace(v, e);
}

// Random DAG on n vertices. T values and weights are multiples of 1/64, so
// every path sum is exact in binary floating point.
inline CausalSetSpace random_causet(std::uint64_t seed, int n, double edge_probability = 0.35) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(1, 64);
  std::uniform_int_distribution<int> weight(0, 128);
  std::bernoulli_distribution link(edge_probability);
  std::vector<VertexSpec> v;
  int t = 0;
  for (int i = 0; i < n; ++i) {
    t += step(rng);
    v.push_back({"v" + std::to_string(i), t / 64.0});
  }
  std::vector<EdgeSpec> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (link(rng)) e.push_back({v[i].id, v[j].id, weight(rng) / 64.0});
    }
  }
  return CausalSetSpace(v, e);
}

/// Causal set whose tau is corrupted to tau(x, x) = 1 at one element.
/// Loading rejects such a set (CycleDetected), so the defect is injected
/// in a wrapper.
class CorruptedCauset {
 public:
  using point_type = Vertex;

  CorruptedCauset(CausalSetSpace base, Vertex loop) : base_(std::move(base)), loop_(loop) {}

  static constexpr std::string_view kind() { return "corrupted_causet"; }

  const CausalSetSpace& base() const { return base_; }
  std::size_t size() const { return base_.size(); }
  Vertex point(std::size_t i) const { return base_.point(i); }
  std::size_t index(Vertex v) const { return base_.index(v); }

  Extended tau(Vertex a, Vertex b) const { return a == loop_ && b == loop_ ? Extended(1.0) : base_.tau(a, b); }
  bool causal(Vertex a, Vertex b, double slack = 0.0) const { return base_.causal(a, b, slack); }
  bool chronological(Vertex a, Vertex b) const { return base_.chronological(a, b); }
  bool contains(Vertex v) const { return base_.contains(v); }
  bool same(Vertex a, Vertex b) const { return a == b; }
  bool precedes(Vertex a, Vertex b) const { return base_.precedes(a, b); }
  double tolerance() const { return 0.0; }
  Vertex sample_point(Rng& rng) const { return base_.sample_point(rng); }
  std::optional<Vertex> sample_future(Vertex v, Rng& rng) const { return base_.sample_future(v, rng); }
  nlohmann::json to_json(Vertex v) const { return base_.to_json(v); }
  Vertex from_json(const nlohmann::json& j) const { return base_.from_json(j); }
  std::string describe(Vertex v) const { return base_.describe(v); }

 private:
  CausalSetSpace base_;
  Vertex loop_;
};

// Found by ADL from null_distance.
inline NullDistanceResult<Vertex> null_distance_noncausal(const CorruptedCauset& space,
                                                          const TimeFunctionBundle<Vertex>& bundle, Vertex p,
                                                          Vertex q, const NullDistanceOptions& options) {
  return lorentz::null_distance_noncausal(space.base(), bundle, p, q, options);
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lorentz_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace lorentz::testing
