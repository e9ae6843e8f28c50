#pragma once

// Brute-force null-distance oracles, independent of the production methods.

#include <cstddef>

#include "lorentz/causet.hpp"
#include "lorentz/minkowski.hpp"
#include "lorentz/space.hpp"

namespace lorentz {

/// Exhaustive search over simple walks p = v0, v1, ..., vk = q where each
/// step joins two comparable elements, with cost sum |T(v_{i+1}) - T(v_i)|.
/// Comparability is recomputed from the edge list rather than taken from
/// the space. Branch-and-bound prunes partial walks that already cost more
/// than the best complete walk. Returns +inf when q is unreachable.
/// Throws BudgetExceeded after `node_budget` expanded walk prefixes.
double causet_null_distance_oracle(const CausalSetSpace& space,
                                   const TimeFunctionBundle<Vertex>& bundle, Vertex p, Vertex q,
                                   std::size_t node_budget = 50'000'000);

/// Dijkstra on a lattice of R^{1,1} with spacing `resolution`, anchored at
/// p. Lattice steps are (+-h, 0) (timelike) and (+-h, +-h) (null), each a
/// causal segment costing |dT|. q joins the lattice through every lattice
/// node within 2h (max-norm) that is causally related to it. The lattice
/// covers the box spanned by p and q padded by max(|dt|, |dx|) on every side.
/// Throws BudgetExceeded (best value so far attached) when the lattice
/// would exceed `node_budget` nodes; UnsupportedBackend off R^{1,1}.
double minkowski_null_distance_oracle(const MinkowskiSpace& space,
                                      const TimeFunctionBundle<Event>& bundle, const Event& p,
                                      const Event& q, double resolution,
                                      std::size_t node_budget = 4'000'000);

}  // namespace lorentz
