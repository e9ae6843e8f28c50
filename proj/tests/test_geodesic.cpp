#include <gtest/gtest.h>

#include <cmath>

#include "lorentz/geodesic.hpp"
#include "lorentz/replay.hpp"
#include "support.hpp"

using namespace lorentz;
namespace lt = lorentz::testing;

namespace {

DyadicCurve<Event> straight(int depth, const Event& q = Event(2, 0.0), double c = 0.5) {
  BuildOptions o;
  o.depth = depth;
  o.c = c;
  return build_dyadic_curve(MinkowskiSpace(), canonical_time(), Event(0, 0.0), q, o);
}

}  // namespace

TEST(DyadicBuild, StraightSegmentIsAffine) {
  const auto curve = straight(3);
  ASSERT_EQ(curve.values.size(), 9u);
  for (std::uint64_t k = 0; k <= 8; ++k) {
    const Event* y = curve.find(DyadicKey(k, 3));
    ASSERT_NE(y, nullptr);
    EXPECT_NEAR(y->t, 2.0 * k / 8.0, 1e-9);
    EXPECT_NEAR(y->x[0], 0.0, 1e-9);
  }
}

TEST(DyadicBuild, BoostedSegmentIsAffine) {
  const auto curve = straight(3, Event(2, 1.0));
  for (std::uint64_t k = 0; k <= 8; ++k) {
    const Event* y = curve.find(DyadicKey(k, 3));
    ASSERT_NE(y, nullptr);
    EXPECT_NEAR(y->t, 2.0 * k / 8.0, 1e-9);
    EXPECT_NEAR(y->x[0], 1.0 * k / 8.0, 1e-9);
  }
}

TEST(DyadicBuild, PuncturedExactFailsAndApproximateSucceeds) {
  const PuncturedMinkowski pm(MinkowskiSpace(), {Event(1, 0.0)});
  const auto T = canonical_time();
  BuildOptions o;
  o.depth = 4;
  try {
    (void)build_dyadic_curve(pm, T, Event(0, 0.0), Event(2, 0.0), o);
    FAIL();
  } catch (const MidpointUnavailable& e) {
    EXPECT_EQ(e.level(), 1);
    EXPECT_EQ(e.hypothesis(), "tau-midpoints");
  }
  o.mode = CurveMode::kApproximate;
  o.epsilon = 0.05;
  const auto curve = build_dyadic_curve(pm, T, Event(0, 0.0), Event(2, 0.0), o);
  EXPECT_EQ(curve.values.size(), 17u);
  for (const auto& [key, y] : curve.values) EXPECT_TRUE(pm.contains(y));
  EXPECT_TRUE(check_midpoint_levels(pm, curve).passed());
  EXPECT_TRUE(check_subsequent_bound(pm, T, curve).passed());
  EXPECT_DOUBLE_EQ(curve.level_epsilon(2), 0.05 / 16);
}

TEST(DyadicBuild, RejectsBadOptions) {
  BuildOptions o;
  o.mode = CurveMode::kApproximate;
  EXPECT_THROW((void)build_dyadic_curve(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(2, 0.0), o), Error);
  o.mode = CurveMode::kExact;
  o.depth = -1;
  EXPECT_THROW((void)build_dyadic_curve(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(2, 0.0), o), Error);
  o.depth = 3;
  EXPECT_THROW((void)build_dyadic_curve(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(1, 1.0), o), Error);
}

TEST(DyadicBuild, CausalSetsSaturate) {
  const auto c = lt::chain(8);
  BuildOptions o;
  o.depth = 6;
  const auto curve = build_dyadic_curve(c, causet_time(c), c.at("v0"), c.at("v8"), o);
  for (std::uint64_t k = 0; k <= 8; ++k) EXPECT_EQ(*curve.find(DyadicKey(k, 3)), c.at("v" + std::to_string(k)));
  EXPECT_FALSE(curve.saturated.empty());
  EXPECT_TRUE(check_midpoint_levels(c, curve).passed());
  EXPECT_TRUE(check_subsequent_bound(c, causet_time(c), curve).passed());

  const auto d = lt::diamond();
  const auto dc = build_dyadic_curve(d, causet_time(d), d.at("p"), d.at("q"), o);
  EXPECT_EQ(*dc.find(DyadicKey(1, 1)), d.at("a"));
  EXPECT_EQ(dc.values.size(), 3u);
}

TEST(SubsequentBound, HoldsAndCatchesACorruptedCurve) {
  auto curve = straight(3);
  const auto T = canonical_time();
  const auto ok = check_subsequent_bound(MinkowskiSpace(), T, curve);
  EXPECT_TRUE(ok.passed());
  ASSERT_EQ(ok.details.at("levels").size(), 4u);
  curve.values[DyadicKey(1, 2)] = Event(1.9, 0.0);
  const auto bad = check_subsequent_bound(MinkowskiSpace(), T, curve);
  ASSERT_FALSE(bad.passed());
  EXPECT_TRUE(replay_certificate(MinkowskiSpace(), T, bad));
}

TEST(Holder, ExponentAndConstant) {
  for (double c : {0.5, 0.25, 0.1}) {
    const auto curve = straight(6, Event(2, 0.5), c);
    EXPECT_NEAR(curve.alpha(), -std::log2(1 - c), 1e-15);
    EXPECT_NEAR(curve.holder_constant(), 4.0 / c, 1e-12);
    const auto h = check_holder(MinkowskiSpace(), canonical_time(), curve, HolderOptions{});
    EXPECT_TRUE(h.passed()) << c;
    EXPECT_LE(h.max_ratio, h.K);
    EXPECT_DOUBLE_EQ(h.alpha, curve.alpha());
  }
  EXPECT_DOUBLE_EQ(straight(1).alpha(), 1.0);
}

TEST(Extension, NonDyadicParameter) {
  const auto curve = straight(20);
  const auto y = extend_curve(MinkowskiSpace(), curve, 1.0 / 3.0);
  EXPECT_NEAR(y.t, 2.0 / 3.0, 1e-5);
  EXPECT_NEAR(y.x[0], 0.0, 1e-9);
  EXPECT_EQ(extend_curve(MinkowskiSpace(), curve, 0.5), *curve.find(DyadicKey(1, 1)));
  EXPECT_THROW((void)extend_curve(MinkowskiSpace(), curve, 1.5), Error);
}

TEST(Extension, CauchyBudget) {
  const auto shallow = straight(3);
  try {
    (void)extend_curve(MinkowskiSpace(), shallow, 1.0 / 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCauchyBudget);
  }
  ExtensionOptions loose;
  loose.cauchy_tolerance = 10.0;
  EXPECT_NO_THROW((void)extend_curve(MinkowskiSpace(), shallow, 1.0 / 3.0, loose));
}

TEST(Extension, CertificatesOnContinuumCurves) {
  const auto curve = straight(20, Event(2, 1.0));
  CurveCheckOptions o;
  o.sample_budget = 500;
  EXPECT_TRUE(check_extension(MinkowskiSpace(), canonical_time(), curve, o).passed());
  EXPECT_TRUE(check_causal_extension(MinkowskiSpace(), curve, o).passed());
  EXPECT_TRUE(check_realizer(MinkowskiSpace(), curve, o).passed());
}

TEST(Extension, AdversarialParametersStayCausal) {
  MinkowskiSpace m;
  const auto curve = straight(20, Event(2, 1.0));
  // Parameters straddling dyadic points at and beyond the stored depth.
  const double tiny = std::ldexp(1.0, -30);
  for (double t : {0.25, 0.5, 0.75, 1.0 / 3.0}) {
    const auto a = extend_curve(m, curve, t - tiny);
    const auto b = extend_curve(m, curve, t);
    const auto c = extend_curve(m, curve, std::min(1.0, t + tiny));
    EXPECT_TRUE(m.causal(a, b, 1e-9));
    EXPECT_TRUE(m.causal(b, c, 1e-9));
  }
}

TEST(Realizer, ApproximateCurveOnPuncturedSpace) {
  const PuncturedMinkowski pm(MinkowskiSpace(), {Event(1, 0.0)});
  BuildOptions o;
  o.depth = 20;
  o.mode = CurveMode::kApproximate;
  o.epsilon = 0.05;
  const auto curve = build_dyadic_curve(pm, canonical_time(), Event(0, 0.0), Event(2, 0.0), o);
  CurveCheckOptions co;
  co.sample_budget = 300;
  const auto cert = check_realizer(pm, curve, co);
  EXPECT_TRUE(cert.passed());
}

TEST(Geodesic, NullPairTakesTheNullSegment) {
  GeodesicOptions o;
  o.build.depth = 3;
  const auto r = synthesize_geodesic(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(1, 1.0), o);
  EXPECT_TRUE(r.curve.null_pair);
  ASSERT_EQ(r.curve.null_path.size(), 2u);
  ASSERT_EQ(r.certificates.size(), 1u);
  EXPECT_TRUE(r.certificates[0].passed());
  EXPECT_NEAR(r.curve.find(DyadicKey(1, 1))->t, 0.5, 1e-15);
  EXPECT_THROW((void)synthesize_geodesic(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(0, 1.0), o), Error);
}

TEST(Geodesic, FullCertificateSetOnMinkowski) {
  GeodesicOptions o;
  o.build.depth = 12;
  o.sample_budget = 300;
  const auto r = synthesize_geodesic(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(2, 0.5), o);
  std::vector<std::string> names;
  for (const auto& c : r.certificates) {
    names.push_back(c.name);
    EXPECT_TRUE(c.passed()) << c.name;
  }
  EXPECT_EQ(names, (std::vector<std::string>{"midpoint_levels", "subsequent_bound", "holder", "extension",
                                             "causal_extension", "realizer"}));
  EXPECT_TRUE(r.skipped.empty());
}

TEST(Geodesic, FiniteSpacesSkipExtensionCertificates) {
  const auto d = lt::diamond();
  GeodesicOptions o;
  o.build.depth = 4;
  const auto r = synthesize_geodesic(d, causet_time(d), d.at("p"), d.at("q"), o);
  for (const auto& c : r.certificates) EXPECT_TRUE(c.passed()) << c.name;
  EXPECT_EQ(r.skipped.size(), 3u);
}

TEST(Geodesic, DeterministicAndRefinementConsistent) {
  MinkowskiSpace m;
  const auto a = straight(8, Event(3, 1.0));
  const auto b = straight(8, Event(3, 1.0));
  EXPECT_EQ(curve_to_json(m, a).dump(), curve_to_json(m, b).dump());
  const auto coarse = straight(5, Event(3, 1.0));
  for (const auto& [key, y] : coarse.values) EXPECT_EQ(*a.find(key), y);
}

TEST(Geodesic, SerialEqualsParallel) {
  const auto s = lt::random_causet(21, 30, 0.2);
  const auto T = causet_time(s);
  BuildOptions o;
  o.depth = 6;
  o.c = 0.1;
  Vertex p = s.point(0), q = s.point(0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.tau(p, s.point(i)) > s.tau(p, q)) q = s.point(i);
  }
  ASSERT_TRUE(s.chronological(p, q));
  o.exec = Execution::kParallel;
  try {
    const auto par = build_dyadic_curve(s, T, p, q, o);
    o.exec = Execution::kSerial;
    const auto ser = build_dyadic_curve(s, T, p, q, o);
    EXPECT_EQ(curve_to_json(s, par).dump(), curve_to_json(s, ser).dump());
  } catch (const MidpointUnavailable& e) {
    o.exec = Execution::kSerial;
    try {
      (void)build_dyadic_curve(s, T, p, q, o);
      FAIL() << "serial build succeeded where parallel failed";
    } catch (const MidpointUnavailable& f) {
      EXPECT_STREQ(e.what(), f.what());
    }
  }
  MinkowskiSpace m;
  BuildOptions mo;
  mo.depth = 8;
  const auto par = build_dyadic_curve(m, canonical_time(), Event(0, 0.0), Event(2, 1.0), mo);
  mo.exec = Execution::kSerial;
  const auto ser = build_dyadic_curve(m, canonical_time(), Event(0, 0.0), Event(2, 1.0), mo);
  EXPECT_EQ(curve_to_json(m, par).dump(), curve_to_json(m, ser).dump());
}
