#include <gtest/gtest.h>

#include "lorentz/geodesic.hpp"
#include "lorentz/replay.hpp"
#include "support.hpp"

using namespace lorentz;
namespace lt = lorentz::testing;

namespace {

// Serialise to text and back, as a stored certificate would be.
Certificate reload(const Certificate& c) { return nlohmann::json::parse(nlohmann::json(c).dump()).get<Certificate>(); }

DyadicCurve<Event> corrupted_curve() {
  BuildOptions o;
  o.depth = 4;
  auto curve = build_dyadic_curve(MinkowskiSpace(), canonical_time(), Event(0, 0.0), Event(2, 0.0), o);
  // gamma(1/4) pushed far up the time axis, past gamma(1/2).
  curve.values[DyadicKey(1, 2)] = Event(1.9, 0.0);
  return curve;
}

}  // namespace

TEST(Replay, CheckFailuresReplayAfterSerialisation) {
  MinkowskiSpace m;
  CheckOptions o;
  o.sample_budget = 2000;
  const auto anti = check_anti_lipschitz(m, cubic_time(), o);
  ASSERT_FALSE(anti.passed());
  EXPECT_TRUE(replay_certificate(m, cubic_time(), reload(anti)));
  // The witness is a concrete pair: under canonical T it is no violation.
  EXPECT_FALSE(replay_certificate(m, canonical_time(), reload(anti)));

  const auto s = lt::skewed_diamond();
  const auto compat = certify_compatibility(s, causet_time(s), 0.2, 0.0);
  ASSERT_FALSE(compat.passed());
  EXPECT_TRUE(replay_certificate(s, causet_time(s), reload(compat)));

  const auto d = lt::diamond();
  const lt::CorruptedCauset bad(d, d.at("b"));
  const auto chrono = check_chronology(bad);
  ASSERT_FALSE(chrono.passed());
  EXPECT_TRUE(replay_certificate(bad, causet_time(d), reload(chrono)));
  EXPECT_FALSE(replay_certificate(d, causet_time(d), reload(chrono)));
}

TEST(Replay, CurveFailuresReplay) {
  MinkowskiSpace m;
  const auto T = canonical_time();
  const auto curve = corrupted_curve();
  const auto levels = check_midpoint_levels(m, curve);
  ASSERT_FALSE(levels.passed());
  EXPECT_TRUE(replay_certificate(m, T, reload(levels)));
  const auto bound = check_subsequent_bound(m, T, curve);
  ASSERT_FALSE(bound.passed());
  EXPECT_TRUE(replay_certificate(m, T, reload(bound)));
  HolderOptions h;
  h.k_scale = 0.1;
  const auto holder = check_holder(m, T, curve, h);
  ASSERT_FALSE(holder.passed());
  EXPECT_TRUE(replay_certificate(m, T, reload(holder.certificate)));
  CurveCheckOptions co;
  co.sample_budget = 200;
  co.extension.cauchy_tolerance = 100.0;
  const auto realizer = check_realizer(m, curve, co);
  ASSERT_FALSE(realizer.passed());
  EXPECT_TRUE(replay_certificate(m, T, reload(realizer)));
  const auto causal = check_causal_extension(m, curve, co);
  ASSERT_FALSE(causal.passed());
  EXPECT_TRUE(replay_certificate(m, T, reload(causal)));
}

TEST(Replay, RequiresAWitnessAndAKnownName) {
  Certificate c;
  c.name = "chronology";
  EXPECT_THROW((void)replay_certificate(MinkowskiSpace(), canonical_time(), c), Error);
  c.name = "nonsense";
  c.witness = nlohmann::json{{"x", {0.0, 0.0}}};
  EXPECT_THROW((void)replay_certificate(MinkowskiSpace(), canonical_time(), c), Error);
}
