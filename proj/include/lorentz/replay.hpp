#pragma once

// Re-evaluates the predicate behind a failing certificate on its witness.

#include <cmath>
#include <string>

#include "lorentz/certificate.hpp"
#include "lorentz/checks.hpp"
#include "lorentz/midpoints.hpp"
#include "lorentz/nulldist.hpp"

namespace lorentz {

/// True iff the witness of `cert` still violates the named predicate.
/// Throws InvalidArgument for a certificate without a witness or with a
/// name this function does not know.
template <Space S>
bool replay_certificate(const S& space, const TimeFunctionBundle<typename S::point_type>& bundle,
                        const Certificate& cert) {
  if (!cert.witness) throw Error(ErrorCode::kInvalidArgument, "certificate '" + cert.name + "' has no witness");
  const auto& w = *cert.witness;
  const double tol = cert.tolerance;
  auto pt = [&](const char* key) { return space.from_json(w.at(key)); };
  if (cert.name == "chronology") return !predicates::chronology_holds(space, pt("x"));
  if (cert.name == "reverse_triangle") {
    return !predicates::reverse_triangle_holds(space, pt("x"), pt("y"), pt("z"), tol);
  }
  if (cert.name == "anti_lipschitz") {
    return !predicates::anti_lipschitz_holds(space, bundle, pt("x"), pt("y"), tol);
  }
  if (cert.name == "metric_axioms") {
    return !predicates::metric_axiom_violation(space, bundle, pt("x"), pt("y"), pt("z"), tol).empty();
  }
  if (cert.name == "causal_identity") {
    const auto x = pt("x"), y = pt("y");
    return std::abs(null_distance(space, bundle, x, y).value - (bundle(y) - bundle(x))) > tol;
  }
  if (cert.name == "compatibility") {
    return !predicates::compatibility_holds(space, bundle, pt("p"), pt("q"), w.at("c").get<double>(),
                                            w.at("epsilon").get<double>());
  }
  if (cert.name == "midpoint_levels") {
    return !predicates::is_eps_tau_midpoint(space, pt("left"), pt("right"), pt("point"),
                                            w.at("epsilon").get<double>());
  }
  if (cert.name == "subsequent_bound") {
    const double bound = std::pow(1.0 - w.at("c").get<double>(), w.at("level").get<int>()) *
                         w.at("delta_T").get<double>();
    return !(null_distance(space, bundle, pt("left"), pt("right")).value <= bound + tol);
  }
  if (cert.name == "holder") {
    const double dt = w.at("t_prime").get<double>() - w.at("t").get<double>();
    const double ratio =
        null_distance(space, bundle, pt("x"), pt("y")).value / std::pow(dt, w.at("alpha").get<double>());
    return !(ratio <= w.at("K").get<double>() + tol);
  }
  if (cert.name == "causal_extension") return !space.causal(pt("x"), pt("y"), tol);
  if (cert.name == "realizer" && w.contains("x")) {
    const double v = space.tau(pt("x"), pt("y")).value();
    const double span = w.at("t2").get<double>() - w.at("t1").get<double>();
    const double tau = w.at("tau_pq").get<double>();
    const double eps = w.at("epsilon").get<double>();
    const double slack = w.at("slack").get<double>();
    const std::string kind = w.at("kind");
    if (kind == "exact") return std::abs(v - span * tau) > slack;
    if (kind == "lower") return v < span * (tau - eps) - slack;
    return v > span * (tau + eps) + slack;
  }
  throw Error(ErrorCode::kInvalidArgument, "no replay for certificate '" + cert.name + "'");
}

}  // namespace lorentz
