#pragma once

#include <cstdint>

#include "lorentz/causet.hpp"
#include "lorentz/minkowski.hpp"

namespace lorentz {

struct SprinkleOptions {
  double density = 100.0;
  std::uint64_t seed = 0;
  // Keep the diamond corners as elements "p" and "q".
  bool include_corners = true;
  Execution exec = Execution::kParallel;
};

/// Poisson sprinkling into the causal diamond J+(p) ∩ J-(q) of R^{1,1}.
///
/// Elements are ordered by coordinate time and named "p", "q", "v0", "v1",
/// ...; edges are the Minkowski causal relation (transitively reduced at
/// load), weighted by Minkowski tau; T is the t coordinate. Throws
/// EmptySprinkle when no element is produced.
CausalSetSpace sprinkle_causet(const Event& p, const Event& q, const SprinkleOptions& options);

}  // namespace lorentz
