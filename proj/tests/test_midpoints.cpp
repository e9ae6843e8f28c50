#include <gtest/gtest.h>

#include <cmath>

#include "lorentz/lens.hpp"
#include "lorentz/midpoints.hpp"
#include "lorentz/replay.hpp"
#include "support.hpp"

using namespace lorentz;
namespace lt = lorentz::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no lorentz::Error thrown";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(EpsMidpoint, MinkowskiExamples) {
  MinkowskiSpace m;
  const Event p(0, 0.0), q(2, 0.0);
  EXPECT_TRUE(predicates::is_eps_tau_midpoint(m, p, q, Event(1, 0.0), 0.0));
  EXPECT_FALSE(predicates::is_eps_tau_midpoint(m, p, q, Event(1, 0.1), 0.0));
  EXPECT_TRUE(predicates::is_eps_tau_midpoint(m, p, q, Event(1, 0.1), 0.01));
  EXPECT_FALSE(predicates::is_eps_tau_midpoint(m, p, q, Event(1.2, 0.0), 0.1));
  EXPECT_TRUE(predicates::in_lens(m, p, q, Event(1, 0.0), 0.0));
}

TEST(FindMidpoint, MinkowskiExactMidpoint) {
  MinkowskiSpace m;
  const auto y = find_midpoint(m, canonical_time(), MidpointQuery<Event>{Event(0, 0.0), Event(2, 0.0)});
  ASSERT_TRUE(y.has_value());
  EXPECT_NEAR(y->t, 1.0, 1e-12);
  EXPECT_NEAR(y->x[0], 0.0, 1e-12);
  const auto b = find_midpoint(m, canonical_time(), MidpointQuery<Event>{Event(0, 0.0), Event(2, 1.0)});
  ASSERT_TRUE(b.has_value());
  EXPECT_NEAR(b->t, 1.0, 1e-9);
  EXPECT_NEAR(b->x[0], 0.5, 1e-9);
}

TEST(FindMidpoint, PuncturedNeedsPositiveEpsilon) {
  const PuncturedMinkowski pm(MinkowskiSpace(), {Event(1, 0.0)});
  const auto T = canonical_time();
  EXPECT_FALSE(find_midpoint(pm, T, MidpointQuery<Event>{Event(0, 0.0), Event(2, 0.0), 0.0}).has_value());
  const auto y = find_midpoint(pm, T, MidpointQuery<Event>{Event(0, 0.0), Event(2, 0.0), 0.01});
  ASSERT_TRUE(y.has_value());
  EXPECT_TRUE(pm.contains(*y));
  EXPECT_NEAR(y->t, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(y->x[0]), 0.01, 1e-12);
  EXPECT_TRUE(predicates::is_eps_tau_midpoint(pm, Event(0, 0.0), Event(2, 0.0), *y, 0.01));
}

TEST(FindMidpoint, DiamondPicksFirstCentralElement) {
  const auto d = lt::diamond();
  const auto y = find_midpoint(d, causet_time(d), MidpointQuery<Vertex>{d.at("p"), d.at("q")});
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ(*y, d.at("a"));
  const auto serial =
      find_midpoint(d, causet_time(d), MidpointQuery<Vertex>{d.at("p"), d.at("q")}, Execution::kSerial);
  EXPECT_EQ(serial, y);
}

TEST(FindMidpoint, RejectsBadQueries) {
  MinkowskiSpace m;
  const auto T = canonical_time();
  EXPECT_EQ(code_of([&] { (void)find_midpoint(m, T, MidpointQuery<Event>{Event(0, 0.0), Event(0, 1.0)}); }),
            ErrorCode::kNotChronological);
  EXPECT_EQ(code_of([&] { (void)find_midpoint(m, T, MidpointQuery<Event>{Event(0, 0.0), Event(1, 1.0)}); }),
            ErrorCode::kNotChronological);
  EXPECT_EQ(
      code_of([&] { (void)find_midpoint(m, T, MidpointQuery<Event>{Event(0, 0.0), Event(2, 0.0), 0.0, 0.0}); }),
      ErrorCode::kInvalidArgument);
  EXPECT_EQ(
      code_of([&] { (void)find_midpoint(m, T, MidpointQuery<Event>{Event(0, 0.0), Event(2, 0.0), 0.0, 0.6}); }),
      ErrorCode::kInvalidArgument);
  EXPECT_EQ(
      code_of([&] { (void)find_midpoint(m, T, MidpointQuery<Event>{Event(0, 0.0), Event(2, 0.0), -1.0}); }),
      ErrorCode::kInvalidArgument);
}

TEST(Compatibility, MinkowskiAtOneHalf) {
  CheckOptions o;
  o.sample_budget = 300;
  const auto cert = certify_compatibility(MinkowskiSpace(), canonical_time(), 0.5, 0.0, o);
  EXPECT_TRUE(cert.passed());
  EXPECT_NEAR(cert.details.at("best_c").get<double>(), 0.5, 1e-9);
}

TEST(Compatibility, DiamondAndSkewedDiamond) {
  const auto d = lt::diamond();
  const auto dc = certify_compatibility(d, causet_time(d), 0.5, 0.0);
  EXPECT_TRUE(dc.passed());
  EXPECT_EQ(dc.details.at("best_c").get<double>(), 0.5);

  const auto s = lt::skewed_diamond();
  const auto T = causet_time(s);
  const auto ok = certify_compatibility(s, T, 0.1, 0.0);
  EXPECT_TRUE(ok.passed());
  EXPECT_NEAR(ok.details.at("best_c").get<double>(), 0.1, 1e-12);
  const auto bad = certify_compatibility(s, T, 0.11, 0.0);
  ASSERT_FALSE(bad.passed());
  EXPECT_EQ(bad.witness->at("p"), "p");
  EXPECT_EQ(bad.witness->at("q"), "q");
  EXPECT_TRUE(replay_certificate(s, T, bad));
}

TEST(LensGeometry, ExactLensIsAPoint) {
  const auto lens = lens_strip_geometry(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(4, 0.0), 0.0, 0.4);
  for (const auto& arcs : {lens.lower_arc, lens.upper_arc}) {
    for (const auto& y : arcs) {
      EXPECT_NEAR(y.t, 2.0, 1e-9);
      EXPECT_NEAR(y.x[0], 0.0, 1e-9);
    }
  }
  EXPECT_EQ(sample_lens_in_strip(lens, 100, 0).samples, 0u);
}

TEST(LensGeometry, StripBounds) {
  const auto T = canonical_time();
  const auto half = lens_strip_geometry(MinkowskiSpace(), T, Event(0, 0.0), Event(4, 0.0), 0.0, 0.5);
  EXPECT_EQ(half.strip_lower, half.strip_upper);
  for (double c : {0.1, 0.25, 0.4}) {
    const auto lens = lens_strip_geometry(MinkowskiSpace(), T, Event(0, 0.0), Event(4, 0.0), 0.5, c);
    EXPECT_NEAR(lens.strip_width(), (1 - 2 * c) * 4.0, 1e-12);
    EXPECT_NEAR(lens.tau_pq, 4.0, 1e-12);
  }
  EXPECT_EQ(code_of([&] {
              (void)lens_strip_geometry(MinkowskiSpace(2), T, Event(0, {0.0, 0.0}), Event(4, {0.0, 0.0}), 0.1, 0.4);
            }),
            ErrorCode::kUnsupportedBackend);
  EXPECT_EQ(code_of([&] {
              (void)lens_strip_geometry(MinkowskiSpace(), T, Event(0, 0.0), Event(0, 4.0), 0.1, 0.4);
            }),
            ErrorCode::kNotChronological);
}

TEST(LensEpsilon, GrowsAsTheStripWidens) {
  LensEpsilonOptions o;
  o.samples = 2000;
  double previous = 0.0;
  for (double c : {0.4, 0.3, 0.2, 0.1}) {
    const auto r = lens_in_strip_epsilon(Event(0, 0.0), Event(4, 0.0), c, o);
    EXPECT_GT(r.epsilon, previous) << c;
    EXPECT_EQ(r.violations, 0u) << c;
    EXPECT_GT(r.samples, 0u);
    EXPECT_LT(r.epsilon, 2.0);
    previous = r.epsilon;
  }
}

TEST(LensEpsilon, LensFitsTheStripAndNotBeyond) {
  LensEpsilonOptions o;
  o.samples = 2000;
  const auto r = lens_in_strip_epsilon(Event(0, 0.0), Event(4, 0.0), 0.4, o);
  const auto T = canonical_time();
  const auto inside = lens_strip_geometry(MinkowskiSpace(), T, Event(0, 0.0), Event(4, 0.0), r.epsilon, 0.4);
  for (const auto& y : inside.lower_arc) EXPECT_TRUE(inside.in_strip(y));
  for (const auto& y : inside.upper_arc) EXPECT_TRUE(inside.in_strip(y));
  const auto beyond = lens_strip_geometry(MinkowskiSpace(), T, Event(0, 0.0), Event(4, 0.0), 1.1 * r.epsilon, 0.4);
  EXPECT_GT(sample_lens_in_strip(beyond, 20000, 1).violations, 0u);
}

TEST(LensEpsilon, DegenerateStrip) {
  EXPECT_EQ(code_of([] { (void)lens_in_strip_epsilon(Event(0, 0.0), Event(4, 0.0), 0.5); }),
            ErrorCode::kDegenerateStrip);
  EXPECT_EQ(code_of([] { (void)lens_in_strip_epsilon(Event(0, 0.0), Event(0, 4.0), 0.3); }),
            ErrorCode::kNotChronological);
}

TEST(Realizer, MidpointsOfStraightAndBoostedSegments) {
  MinkowskiSpace m;
  const auto straight = make_piecewise_curve(m, {Event(0, 0.0), Event(2, 0.0)});
  const auto a = midpoint_from_realizer(m, straight);
  EXPECT_NEAR(a.t, 1.0, 1e-9);
  EXPECT_NEAR(a.x[0], 0.0, 1e-9);
  // A realizer split at an interior node.
  const auto boosted = make_piecewise_curve(m, {Event(0, 0.0), Event(0.5, 0.25), Event(2, 1.0)});
  const auto b = midpoint_from_realizer(m, boosted);
  EXPECT_NEAR(b.t, 1.0, 1e-9);
  EXPECT_NEAR(b.x[0], 0.5, 1e-9);
}

TEST(Realizer, ChainMidpointIsTheMiddleVertex) {
  const auto c = lt::chain(4);
  std::vector<Vertex> nodes;
  for (int i = 0; i <= 4; ++i) nodes.push_back(c.at("v" + std::to_string(i)));
  EXPECT_EQ(midpoint_from_realizer(c, make_piecewise_curve(c, nodes)), c.at("v2"));
  const auto odd = lt::chain(3);
  std::vector<Vertex> odd_nodes;
  for (int i = 0; i <= 3; ++i) odd_nodes.push_back(odd.at("v" + std::to_string(i)));
  EXPECT_EQ(code_of([&] { (void)midpoint_from_realizer(odd, make_piecewise_curve(odd, odd_nodes)); }),
            ErrorCode::kNoHalfwayPoint);
}

TEST(Realizer, BrokenCurveIsNotARealizer) {
  MinkowskiSpace m;
  const auto bent = make_piecewise_curve(m, {Event(0, 0.0), Event(1, 0.5), Event(2, 0.0)});
  EXPECT_EQ(code_of([&] { (void)midpoint_from_realizer(m, bent); }), ErrorCode::kNotARealizer);
}

TEST(ApproximateMidpoint, FromANearlyMaximalCurve) {
  MinkowskiSpace m;
  const Event p(0, 0.0), q(2, 0.0);
  const auto bent = make_piecewise_curve(m, {p, Event(1, 0.5), q});
  // L_tau = sqrt(3) ~ 1.732 > 2 - 0.5.
  const auto y = approximate_midpoint_from_curve(m, p, q, bent, 0.5);
  EXPECT_NEAR(y.t, 1.0, 1e-9);
  EXPECT_NEAR(y.x[0], 0.5, 1e-9);
  EXPECT_TRUE(predicates::is_eps_tau_midpoint(m, p, q, y, 0.5));
  EXPECT_EQ(code_of([&] { (void)approximate_midpoint_from_curve(m, p, q, bent, 0.1); }), ErrorCode::kCurveTooShort);
  EXPECT_EQ(code_of([&] { (void)approximate_midpoint_from_curve(m, p, q, bent, 0.0); }),
            ErrorCode::kInvalidArgument);
}
