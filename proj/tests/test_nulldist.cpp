#include <gtest/gtest.h>

#include <cmath>

#include "lorentz/nulldist.hpp"
#include "lorentz/oracle.hpp"
#include "lorentz/replay.hpp"
#include "support.hpp"

using namespace lorentz;
namespace lt = lorentz::testing;

TEST(NullLength, Examples) {
  MinkowskiSpace m;
  const auto T = canonical_time();
  const auto single = make_piecewise_curve(m, {Event(0, 0.0), Event(2, 0.5)});
  EXPECT_DOUBLE_EQ(null_length(m, T, single).value, 2.0);
  const auto zigzag = make_piecewise_curve(m, {Event(0, 0.0), Event(0.5, 0.5), Event(0, 1.0)});
  const auto z = null_length(m, T, zigzag);
  EXPECT_DOUBLE_EQ(z.value, 1.0);
  EXPECT_EQ(z.decomposition, (std::vector<double>{0.5, 0.5}));
  const auto constant = make_piecewise_curve(m, {Event(1, 1.0)});
  EXPECT_EQ(null_length(m, T, constant).value, 0.0);
}

TEST(NullLength, RejectsNonCausalSegments) {
  MinkowskiSpace m;
  EXPECT_THROW(make_piecewise_curve(m, {Event(0, 0.0), Event(0, 1.0)}), Error);
  PiecewiseCausalCurve<Event> bad;
  bad.nodes = {Event(0, 0.0), Event(0.1, 1.0)};
  bad.breakpoints = {0.0, 1.0};
  bad.orientation = {Orientation::kFuture};
  try {
    (void)null_length(m, canonical_time(), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSegmentNotCausal);
  }
}

TEST(NullDistance, MinkowskiExamples) {
  MinkowskiSpace m;
  const auto T = canonical_time();
  const auto causal = null_distance(m, T, Event(0, 0.0), Event(2, 0.0));
  EXPECT_EQ(causal.value, 2.0);
  EXPECT_EQ(causal.method, NullMethod::kCausalExact);
  const auto spacelike = null_distance(m, T, Event(0, 0.0), Event(0, 1.0));
  EXPECT_NEAR(spacelike.value, 1.0, 1e-12);
  EXPECT_EQ(spacelike.method, NullMethod::kZigzag);
  // Witness soundness: the reported value is the null length of the witness.
  EXPECT_NEAR(null_length(m, T, spacelike.witness).value, spacelike.value, 1e-12);
}

TEST(NullDistance, DiamondGraphExample) {
  const auto d = lt::diamond();
  const auto T = causet_time(d);
  const auto r = null_distance(d, T, d.at("a"), d.at("b"));
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(r.method, NullMethod::kGraph);
  EXPECT_EQ(null_length(d, T, r.witness).value, 2.0);
  EXPECT_EQ(causet_null_distance_oracle(d, T, d.at("a"), d.at("b")), 2.0);
}

TEST(NullDistance, NotConnected) {
  const CausalSetSpace s({{"a", 0}, {"b", 1}, {"c", 0.5}}, {{"a", "b", 1}});
  const auto T = causet_time(s);
  try {
    (void)null_distance(s, T, s.at("a"), s.at("c"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotConnected);
  }
  EXPECT_TRUE(std::isinf(causet_null_distance_oracle(s, T, s.at("a"), s.at("c"))));
}

TEST(NullDistanceOracle, CausalPairsAreExact) {
  const auto s = lt::random_causet(17, 10);
  const auto T = causet_time(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const Vertex a = s.point(i), b = s.point(j);
      if (s.causal(a, b)) {
        EXPECT_EQ(causet_null_distance_oracle(s, T, a, b), T(b) - T(a));
      }
    }
  }
  MinkowskiSpace m;
  EXPECT_EQ(minkowski_null_distance_oracle(m, canonical_time(), Event(0, 0.0), Event(1.5, 0.5), 0.1), 1.5);
}

TEST(NullDistanceOracle, GraphMethodMatchesEnumerationExactly) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto s = lt::random_causet(seed, 9);
    const auto T = causet_time(s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto row = graph_null_distances_from(s, T, i);
      for (std::size_t j = 0; j < s.size(); ++j) {
        ASSERT_EQ(row[j], causet_null_distance_oracle(s, T, s.point(i), s.point(j)))
            << "seed " << seed << " pair " << i << "," << j;
      }
    }
  }
}

TEST(NullDistanceOracle, BudgetExceededCarriesBestValue) {
  const auto s = lt::random_causet(2, 12, 0.8);
  const auto T = causet_time(s);
  try {
    (void)causet_null_distance_oracle(s, T, s.point(0), s.point(11), 10);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_GE(e.best_so_far(), 0.0);
  }
  EXPECT_THROW(
      (void)minkowski_null_distance_oracle(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(0, 1.0), 1e-4, 1000),
      BudgetExceeded);
}

TEST(NullDistanceOracle, MinkowskiResolutionsBracketTheZigzag) {
  MinkowskiSpace m;
  const auto T = canonical_time();
  const Event p(0, 0.0), q(0, 1.0);
  const double zig = zigzag_null_distance(m, T, p, q).value;
  double previous = std::numeric_limits<double>::infinity();
  for (double h : {0.1, 0.01}) {
    const double oracle = minkowski_null_distance_oracle(m, T, p, q, h);
    EXPECT_LE(zig, oracle + 1e-9);
    EXPECT_LE(oracle - zig, 10 * h);
    EXPECT_LE(oracle, previous + 1e-12);
    previous = oracle;
  }
}

TEST(NullDistanceOracle, OffPlaneIsUnsupported) {
  EXPECT_THROW((void)minkowski_null_distance_oracle(MinkowskiSpace(2), canonical_time(), Event(0, {0.0, 0.0}),
                                                    Event(0, {1.0, 0.0}), 0.1),
               Error);
}

// The closed form max(|dt|, |dx|) is only used after agreeing with both the
// zigzag search and the lattice oracle on random spacelike pairs.
TEST(AnalyticGate, AgreesWithZigzagAndOracle) {
  MinkowskiSpace m;
  const auto T = canonical_time();
  Rng rng(123);
  int checked = 0;
  for (int i = 0; checked < 200 && i < 10000; ++i) {
    const Event p = m.sample_point(rng);
    const Event q = m.sample_point(rng);
    if (m.causal(p, q) || m.causal(q, p)) continue;
    const double analytic = analytic_null_distance(p, q);
    EXPECT_NEAR(zigzag_null_distance(m, T, p, q).value, analytic, 1e-9);
    if (checked < 20) {
      const double h = 0.02;
      const double oracle = minkowski_null_distance_oracle(m, T, p, q, h);
      EXPECT_LE(analytic, oracle + 1e-9);
      EXPECT_LE(oracle - analytic, 10 * h);
    }
    ++checked;
  }
  EXPECT_EQ(checked, 200);
  NullDistanceOptions fast;
  fast.allow_analytic = true;
  const auto r = null_distance(m, T, Event(0, 0.0), Event(0.3, 1.0), fast);
  EXPECT_EQ(r.method, NullMethod::kAnalytic);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  // Not canonical: the fast path is refused.
  EXPECT_EQ(null_distance(m, cubic_time(), Event(0, 0.0), Event(0.3, 1.0), fast).method, NullMethod::kZigzag);
}

TEST(MetricAxioms, MinkowskiAndDiamondPass) {
  CheckOptions o;
  o.sample_budget = 200;
  o.tolerance = 1e-7;
  EXPECT_TRUE(check_metric_axioms(MinkowskiSpace(), canonical_time(), o).passed());
  const auto d = lt::diamond();
  const auto cert = check_metric_axioms(d, causet_time(d));
  EXPECT_TRUE(cert.passed());
  EXPECT_TRUE(cert.details.at("exhaustive").get<bool>());
}

TEST(MetricAxioms, CubicTimeLosesDefiniteness) {
  MinkowskiSpace m;
  const auto T = cubic_time();
  // Both points sit on t = 0 where t^3 is flat to third order.
  const Event x(0, 0.0), y(0, 1e-5);
  EXPECT_LT(null_distance(m, T, x, y).value, 1e-12);
  EXPECT_EQ(predicates::metric_axiom_violation(m, T, x, y, y, 1e-12), "definiteness");
  CheckOptions o;
  o.sample_budget = 500;
  const auto cert = check_metric_axioms(m, T, o);
  if (!cert.passed()) {
    EXPECT_TRUE(replay_certificate(m, T, cert));
  }
}

TEST(CausalIdentity, AllBackends) {
  CheckOptions o;
  o.sample_budget = 1000;
  o.tolerance = 1e-7;
  EXPECT_TRUE(check_causal_identity(MinkowskiSpace(), canonical_time(), o).passed());
  const PuncturedMinkowski pm(MinkowskiSpace(), {Event(0, 0.0)});
  EXPECT_TRUE(check_causal_identity(pm, canonical_time(), o).passed());
  CheckOptions exact;
  exact.sample_budget = 1000;
  exact.tolerance = 0.0;
  const auto s = lt::random_causet(8, 12);
  EXPECT_TRUE(check_causal_identity(s, causet_time(s), exact).passed());
}

TEST(Topology, NullDistanceBallsNestWithEuclideanBalls) {
  MinkowskiSpace m;
  const auto T = canonical_time();
  Rng rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Event p = m.sample_point(rng);
    for (double r : {0.1, 0.01}) {
      for (int j = 0; j < 50; ++j) {
        const Event y(p.t + 2 * r * u(rng), p.x[0] + 2 * r * u(rng));
        const double dt = null_distance(m, T, p, y).value;
        const double de = euclidean_distance(p, y);
        if (de < r / 2) {
          EXPECT_LT(dt, r);
        }
        if (dt < r / 2) {
          EXPECT_LT(de, r);
        }
      }
    }
  }
}

TEST(NullDistanceMatrix, SerialEqualsParallel) {
  const auto s = lt::random_causet(5, 40, 0.1);
  const auto T = causet_time(s);
  EXPECT_EQ(kernels::null_distance_matrix(s, T, Execution::kSerial),
            kernels::null_distance_matrix(s, T, Execution::kParallel));
}
