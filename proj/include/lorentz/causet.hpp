#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "lorentz/extended.hpp"
#include "lorentz/parallel.hpp"
#include "lorentz/space.hpp"

namespace lorentz {

/// Handle of a causal-set element (index into the vertex list).
struct Vertex {
  std::uint32_t index = 0;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct VertexSpec {
  std::string id;
  double time = 0.0;
};

struct EdgeSpec {
  std::string src;
  std::string dst;
  double tau = 0.0;
};

/// Row-major square bit matrix.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  /// row r |= row s
  void merge_row(std::size_t r, std::size_t s) {
    for (std::size_t w = 0; w < words_; ++w) bits_[r * words_ + w] |= bits_[s * words_ + w];
  }
  std::size_t row_count(std::size_t r) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Finite causal set from a weighted DAG.
///
/// At load the edge list is validated (unique ids, nonnegative weights, T
/// strictly increasing along edges, acyclic) and transitively reduced.
/// <= is the reflexive-transitive closure; tau is the longest total weight
/// over directed paths of the reduced graph, and x << y iff tau(x, y) > 0.
class CausalSetSpace {
 public:
  using point_type = Vertex;

  /// Spaces up to this many vertices keep a dense tau matrix; larger ones
  /// answer tau by a per-query longest-path sweep.
  static constexpr std::size_t kDenseTauLimit = 2048;

  CausalSetSpace(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges,
                 Execution exec = Execution::kParallel);

  static constexpr std::string_view kind() { return "causet"; }

  std::size_t size() const { return vertices_.size(); }
  Vertex point(std::size_t i) const { return Vertex{static_cast<std::uint32_t>(i)}; }
  std::size_t index(Vertex v) const { return v.index; }
  const std::string& id(Vertex v) const { return vertices_.at(v.index).id; }
  double time(Vertex v) const { return vertices_.at(v.index).time; }
  std::optional<Vertex> find(std::string_view id) const;
  Vertex at(std::string_view id) const;

  const std::vector<VertexSpec>& vertices() const { return vertices_; }
  /// Edges that survived transitive reduction, ordered by (src, dst) index.
  const std::vector<EdgeSpec>& edges() const { return edges_; }
  /// Reduced edges as index pairs with weights.
  struct Link {
    std::uint32_t src;
    std::uint32_t dst;
    double tau;
  };
  const std::vector<Link>& links() const { return links_; }
  /// Undirected adjacency of the reduced graph (neighbour indices).
  const std::vector<std::vector<std::uint32_t>>& undirected_adjacency() const { return adjacency_; }
  const std::vector<std::uint32_t>& topological_order() const { return topo_; }

  Extended tau(Vertex a, Vertex b) const;
  bool causal(Vertex a, Vertex b, double /*slack*/ = 0.0) const { return reach_.test(a.index, b.index); }
  bool chronological(Vertex a, Vertex b) const;
  bool contains(Vertex v) const { return v.index < vertices_.size(); }
  bool same(Vertex a, Vertex b) const { return a == b; }
  bool precedes(Vertex a, Vertex b) const { return a.index < b.index; }
  /// Rounding allowance for path sums; 0 for integer data.
  double tolerance() const { return tol_; }

  Vertex sample_point(Rng& rng) const;
  /// Uniform over the causal future J+(v), which includes v.
  std::optional<Vertex> sample_future(Vertex v, Rng& rng) const;

  /// Eventually-constant sequences converge to their final value; any other
  /// sequence has no limit in a finite space.
  std::optional<Vertex> limit(std::span<const Vertex> sequence) const;

  nlohmann::json to_json(Vertex v) const { return id(v); }
  Vertex from_json(const nlohmann::json& j) const;
  std::string describe(Vertex v) const { return id(v); }
  Vertex parse(std::string_view text) const { return at(text); }

  const BitMatrix& reachability() const { return reach_; }

 private:
  Extended tau_sweep(std::uint32_t a, std::uint32_t b) const;

  std::vector<VertexSpec> vertices_;
  std::vector<EdgeSpec> edges_;
  std::vector<Link> links_;
  std::unordered_map<std::string, std::uint32_t> by_id_;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> out_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<std::uint32_t> topo_;
  std::vector<std::uint32_t> topo_pos_;
  BitMatrix reach_;
  std::vector<double> tau_dense_;  // empty above kDenseTauLimit
  double tol_ = 0.0;
};

namespace kernels {

/// Reflexive-transitive closure of a DAG given by successor lists in
/// topological order. The parallel path processes vertices of equal height
/// concurrently.
BitMatrix reachability(const std::vector<std::vector<std::uint32_t>>& successors,
                       const std::vector<std::uint32_t>& topo, Execution exec);

/// All-pairs longest path weights (0 when unreachable), row-major.
std::vector<double> longest_paths(
    const std::vector<std::vector<std::pair<std::uint32_t, double>>>& out,
    const std::vector<std::uint32_t>& topo, Execution exec);

}  // namespace kernels

/// Time function of a causal set: the stored T values, with the whole space
/// as witness neighbourhood and the |dT|-weighted graph metric as d_U.
TimeFunctionBundle<Vertex> causet_time(const CausalSetSpace& space);

}  // namespace lorentz
