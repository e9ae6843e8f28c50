#pragma once

// Sampled certificates for the core axioms of a Lorentzian pre-length
// space and of a time-function bundle.

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "lorentz/certificate.hpp"
#include "lorentz/parallel.hpp"
#include "lorentz/space.hpp"

namespace lorentz {

struct CheckOptions {
  std::size_t sample_budget = 1000;
  std::uint64_t seed = 0;
  // Defaults to the space's tolerance.
  std::optional<double> tolerance;
  Execution exec = Execution::kParallel;
};

template <Space S>
double effective_tolerance(const S& space, const CheckOptions& options) {
  return options.tolerance.value_or(space.tolerance());
}

namespace predicates {

template <Space S>
bool chronology_holds(const S& space, const typename S::point_type& x) {
  return space.tau(x, x) == Extended(0.0);
}

template <Space S>
bool reverse_triangle_holds(const S& space, const typename S::point_type& x,
                            const typename S::point_type& y, const typename S::point_type& z,
                            double tol) {
  if (!space.causal(x, y) || !space.causal(y, z)) return true;
  const Extended lhs = space.tau(x, z);
  const Extended rhs = space.tau(x, y) + space.tau(y, z);
  if (lhs.is_infinite()) return true;
  if (rhs.is_infinite()) return false;
  if (lhs.value() >= rhs.value() - tol) return true;
  // tau is a square root: a rounding error d next to the light cone shows
  // up as sqrt(d) in tau, so the squared form is compared too.
  return lhs.value() * lhs.value() >= rhs.value() * rhs.value() - tol;
}

/// T(y) - T(x) <= d_U(x, y) for x <= y inside the witness neighbourhood U of x.
/// Pairs outside U are vacuous.
template <Space S>
bool anti_lipschitz_holds(const S& space, const TimeFunctionBundle<typename S::point_type>& bundle,
                          const typename S::point_type& x, const typename S::point_type& y,
                          double tol) {
  if (!space.causal(x, y)) return true;
  auto u = bundle.neighbourhood(x);
  if (!u) throw Error(ErrorCode::kWitnessMissing, "no neighbourhood for " + space.describe(x));
  if (!u->contains(y)) return true;
  return bundle(y) - bundle(x) <= u->metric(x, y) + tol;
}

}  // namespace predicates

namespace detail {

template <class T>
Certificate finish(std::string name, const std::vector<T>& samples, std::optional<std::size_t> bad,
                   double tol, std::uint64_t seed, auto&& witness_of) {
  Certificate cert;
  cert.name = std::move(name);
  cert.tolerance = tol;
  cert.seed = seed;
  cert.samples_checked = samples.size();
  if (bad) {
    cert.verdict = Verdict::kFail;
    cert.witness = witness_of(samples[*bad]);
  }
  return cert;
}

}  // namespace detail

/// tau(x, x) == 0 on every point of a discrete space, or on
/// `sample_budget` sampled points of a continuum space.
template <Space S>
Certificate check_chronology(const S& space, const CheckOptions& options = {}) {
  using P = typename S::point_type;
  std::vector<P> samples;
  if constexpr (DiscreteSpace<S>) {
    for (std::size_t i = 0; i < space.size(); ++i) samples.push_back(space.point(i));
  } else {
    Rng rng(options.seed);
    for (std::size_t i = 0; i < options.sample_budget; ++i) samples.push_back(space.sample_point(rng));
  }
  const auto bad = find_first(
      samples.size(), [&](std::size_t i) { return !predicates::chronology_holds(space, samples[i]); },
      options.exec);
  return detail::finish("chronology", samples, bad, 0.0, options.seed, [&](const P& x) {
    return nlohmann::json{{"x", space.to_json(x)}, {"tau_xx", space.tau(x, x).to_double()}};
  });
}

/// tau(x, z) >= tau(x, y) + tau(y, z) - tol on causal chains x <= y <= z.
/// Discrete spaces are enumerated exhaustively when n^3 <= sample_budget.
template <Space S>
Certificate check_reverse_triangle(const S& space, const CheckOptions& options = {}) {
  using P = typename S::point_type;
  const double tol = effective_tolerance(space, options);
  std::vector<std::tuple<P, P, P>> chains;
  bool exhaustive = false;
  if constexpr (DiscreteSpace<S>) {
    const std::size_t n = space.size();
    if (n * n * n <= options.sample_budget) {
      exhaustive = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (!space.causal(space.point(a), space.point(b))) continue;
          for (std::size_t c = 0; c < n; ++c) {
            if (space.causal(space.point(b), space.point(c))) {
              chains.emplace_back(space.point(a), space.point(b), space.point(c));
            }
          }
        }
    }
  }
  if (!exhaustive) {
    Rng rng(options.seed);
    for (std::size_t i = 0; i < options.sample_budget; ++i) {
      auto [x, y] = sample_causal_pair(space, rng);
      auto z = space.sample_future(y, rng);
      if (!z) z = y;
      chains.emplace_back(std::move(x), std::move(y), std::move(*z));
    }
  }
  const auto bad = find_first(
      chains.size(),
      [&](std::size_t i) {
        const auto& [x, y, z] = chains[i];
        return !predicates::reverse_triangle_holds(space, x, y, z, tol);
      },
      options.exec);
  auto cert = detail::finish("reverse_triangle", chains, bad, tol, options.seed, [&](const auto& c) {
    const auto& [x, y, z] = c;
    return nlohmann::json{{"x", space.to_json(x)},
                          {"y", space.to_json(y)},
                          {"z", space.to_json(z)},
                          {"tau_xz", space.tau(x, z).to_double()},
                          {"tau_xy_plus_tau_yz", (space.tau(x, y) + space.tau(y, z)).to_double()}};
  });
  cert.details["exhaustive"] = exhaustive;
  return cert;
}

/// T(y) - T(x) <= d_U(x, y) + tol on causal pairs inside each witness
/// neighbourhood. Continuum samples whose future point leaves U are pulled
/// toward x along the canonical segment. Throws WitnessMissing when the
/// bundle has no neighbourhood for a sampled point.
template <Space S>
Certificate check_anti_lipschitz(const S& space,
                                 const TimeFunctionBundle<typename S::point_type>& bundle,
                                 const CheckOptions& options = {}) {
  using P = typename S::point_type;
  const double tol = effective_tolerance(space, options);
  std::vector<std::pair<P, P>> pairs;
  bool exhaustive = false;
  if constexpr (DiscreteSpace<S>) {
    const std::size_t n = space.size();
    if (n * n <= options.sample_budget) {
      exhaustive = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (space.causal(space.point(a), space.point(b))) pairs.emplace_back(space.point(a), space.point(b));
    }
  }
  if (!exhaustive) {
    Rng rng(options.seed);
    for (std::size_t i = 0; i < options.sample_budget; ++i) {
      auto [x, y] = sample_causal_pair(space, rng);
      auto u = bundle.neighbourhood(x);
      if (!u) throw Error(ErrorCode::kWitnessMissing, "no neighbourhood for " + space.describe(x));
      if constexpr (SegmentSpace<S>) {
        for (int k = 0; k < 60 && !u->contains(y); ++k) y = space.interpolate(x, y, 0.5);
      }
      pairs.emplace_back(std::move(x), std::move(y));
    }
  }
  // Neighbourhood lookups may throw WitnessMissing; surface that before
  // evaluating the inequality.
  for (const auto& [x, y] : pairs) {
    if (!bundle.neighbourhood(x)) {
      throw Error(ErrorCode::kWitnessMissing, "no neighbourhood for " + space.describe(x));
    }
  }
  const auto bad = find_first(
      pairs.size(),
      [&](std::size_t i) {
        return !predicates::anti_lipschitz_holds(space, bundle, pairs[i].first, pairs[i].second, tol);
      },
      options.exec);
  auto cert = detail::finish("anti_lipschitz", pairs, bad, tol, options.seed, [&](const auto& pr) {
    const auto& [x, y] = pr;
    auto u = bundle.neighbourhood(x);
    return nlohmann::json{{"x", space.to_json(x)},
                          {"y", space.to_json(y)},
                          {"dT", bundle(y) - bundle(x)},
                          {"d_U", u->metric(x, y)}};
  });
  cert.details["time_function"] = bundle.name;
  cert.details["exhaustive"] = exhaustive;
  return cert;
}

}  // namespace lorentz
