#pragma once

// The Lorentzian pre-length space contract every algorithm programs against.

#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lorentz/errors.hpp"
#include "lorentz/extended.hpp"

namespace lorentz {

using Rng = std::mt19937_64;

/// A point universe with causal relation, chronological relation and time
/// separation.
///
/// Required invariants (checked by the certificates in checks.hpp):
///   chronological(x, y) implies causal(x, y);
///   tau(x, y) > 0 iff chronological(x, y);
///   x <= y <= z implies tau(x, z) >= tau(x, y) + tau(y, z);
///   tau(x, x) == 0.
///
/// `causal(a, b, slack)` relaxes the relation by `slack` on continuum
/// backends (closure checks at float scale); discrete backends ignore it.
template <class S>
concept Space = requires(const S& s, const typename S::point_type& a, Rng& rng,
                         const nlohmann::json& j) {
  typename S::point_type;
  { S::kind() } -> std::convertible_to<std::string_view>;
  { s.causal(a, a) } -> std::convertible_to<bool>;
  { s.causal(a, a, 0.0) } -> std::convertible_to<bool>;
  { s.chronological(a, a) } -> std::convertible_to<bool>;
  { s.tau(a, a) } -> std::same_as<Extended>;
  { s.contains(a) } -> std::convertible_to<bool>;
  { s.same(a, a) } -> std::convertible_to<bool>;
  { s.precedes(a, a) } -> std::convertible_to<bool>;
  { s.tolerance() } -> std::convertible_to<double>;
  { s.sample_point(rng) } -> std::same_as<typename S::point_type>;
  { s.sample_future(a, rng) } -> std::same_as<std::optional<typename S::point_type>>;
  { s.to_json(a) } -> std::same_as<nlohmann::json>;
  { s.from_json(j) } -> std::same_as<typename S::point_type>;
  { s.describe(a) } -> std::same_as<std::string>;
};

/// Finite point universe that can be enumerated exhaustively.
template <class S>
concept DiscreteSpace = Space<S> && requires(const S& s, std::size_t i,
                                             const typename S::point_type& a) {
  { s.size() } -> std::convertible_to<std::size_t>;
  { s.point(i) } -> std::same_as<typename S::point_type>;
  { s.index(a) } -> std::convertible_to<std::size_t>;
};

/// Space with a (possibly partial) limit operation for Cauchy sequences.
template <class S>
concept LimitSpace = Space<S> && requires(const S& s,
                                          std::span<const typename S::point_type> seq) {
  { s.limit(seq) } -> std::same_as<std::optional<typename S::point_type>>;
};

/// Space whose canonical causal segments can be evaluated at an interior
/// parameter (continuum backends).
template <class S>
concept SegmentSpace = Space<S> && requires(const S& s, const typename S::point_type& a,
                                            double lambda) {
  { s.interpolate(a, a, lambda) } -> std::same_as<typename S::point_type>;
};

/// Neighbourhood U of a point together with the local metric d_U.
template <class P>
struct Neighbourhood {
  std::function<bool(const P&)> contains;
  std::function<double(const P&, const P&)> metric;
  std::string description;
};

/// A time function on a space plus its local anti-Lipschitz witnesses.
template <class P>
struct TimeFunctionBundle {
  std::string name;
  std::function<double(const P&)> time;
  std::function<std::optional<Neighbourhood<P>>(const P&)> neighbourhood;
  // T is the coordinate time of a Minkowski backend.
  bool canonical = false;

  double operator()(const P& p) const { return time(p); }
};

enum class Orientation { kFuture, kPast };

/// Finite concatenation of future- and past-directed causal segments.
/// Segment i runs along the backend's canonical causal path from nodes[i]
/// to nodes[i + 1].
template <class P>
struct PiecewiseCausalCurve {
  std::vector<double> breakpoints;
  std::vector<P> nodes;
  std::vector<Orientation> orientation;

  std::size_t segment_count() const { return orientation.size(); }
};

/// Builds a curve through `nodes` with uniform breakpoints in [0, 1],
/// orienting each segment by the causal relation. Throws SegmentNotCausal
/// when consecutive nodes are not causally related.
template <Space S>
PiecewiseCausalCurve<typename S::point_type> make_piecewise_curve(
    const S& space, std::vector<typename S::point_type> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::kInvalidArgument, "curve needs at least one node");
  PiecewiseCausalCurve<typename S::point_type> curve;
  const std::size_t segments = nodes.size() - 1;
  for (std::size_t i = 0; i <= segments; ++i) {
    curve.breakpoints.push_back(segments == 0 ? 0.0
                                              : static_cast<double>(i) / static_cast<double>(segments));
  }
  for (std::size_t i = 0; i < segments; ++i) {
    if (space.causal(nodes[i], nodes[i + 1])) {
      curve.orientation.push_back(Orientation::kFuture);
    } else if (space.causal(nodes[i + 1], nodes[i])) {
      curve.orientation.push_back(Orientation::kPast);
    } else {
      throw Error(ErrorCode::kSegmentNotCausal, "segment " + std::to_string(i) + " from " +
                                                    space.describe(nodes[i]) + " to " +
                                                    space.describe(nodes[i + 1]));
    }
  }
  curve.nodes = std::move(nodes);
  return curve;
}

/// Throws SegmentNotCausal unless every segment honours its orientation
/// and the breakpoints are strictly increasing.
template <Space S>
void validate_curve(const S& space, const PiecewiseCausalCurve<typename S::point_type>& curve) {
  if (curve.nodes.empty() || curve.nodes.size() != curve.orientation.size() + 1 ||
      curve.breakpoints.size() != curve.nodes.size()) {
    throw Error(ErrorCode::kInvalidArgument, "malformed piecewise causal curve");
  }
  for (std::size_t i = 0; i + 1 < curve.breakpoints.size(); ++i) {
    if (!(curve.breakpoints[i] < curve.breakpoints[i + 1])) {
      throw Error(ErrorCode::kInvalidArgument, "breakpoints must increase strictly");
    }
  }
  const double slack = space.tolerance();
  for (std::size_t i = 0; i < curve.orientation.size(); ++i) {
    const auto& a = curve.nodes[i];
    const auto& b = curve.nodes[i + 1];
    const bool ok = curve.orientation[i] == Orientation::kFuture ? space.causal(a, b, slack)
                                                                 : space.causal(b, a, slack);
    if (!ok) {
      throw Error(ErrorCode::kSegmentNotCausal,
                  "segment " + std::to_string(i) + " from " + space.describe(a) + " to " +
                      space.describe(b) + " is not " +
                      (curve.orientation[i] == Orientation::kFuture ? "future" : "past") +
                      "-directed causal");
    }
  }
}

/// Draws x <= y. Retries when the sampled x has an empty causal future
/// (maximal elements of a finite space).
template <Space S>
std::pair<typename S::point_type, typename S::point_type> sample_causal_pair(const S& space,
                                                                             Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto x = space.sample_point(rng);
    if (auto y = space.sample_future(x, rng)) return {std::move(x), std::move(*y)};
  }
  throw Error(ErrorCode::kInvalidArgument, "space has no causal pairs to sample");
}

/// Draws x << y, or nullopt if none found within the attempt budget.
template <Space S>
std::optional<std::pair<typename S::point_type, typename S::point_type>> sample_chronological_pair(
    const S& space, Rng& rng, int attempts = 1000) {
  for (int attempt = 0; attempt < attempts; ++attempt) {
    auto [x, y] = sample_causal_pair(space, rng);
    if (space.chronological(x, y)) return std::make_pair(std::move(x), std::move(y));
  }
  return std::nullopt;
}

}  // namespace lorentz
