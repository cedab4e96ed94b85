// Randomized property suites. Each test runs a fixed seed so failures replay.

#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

void expect_ok(const props::Outcome& o) {
    EXPECT_TRUE(o.ok) << o.detail;
    EXPECT_GT(o.cases, 0);
}

}  // namespace

TEST(GradedRingProperties, AlgebraLaws) { expect_ok(props::ring_algebra_laws(11, 200)); }
TEST(GradedRingProperties, TruncationConsistency) { expect_ok(props::truncation_consistency(12, 200)); }
TEST(GradedRingProperties, PClassesMultiplicative) { expect_ok(props::p_classes_multiplicativity(13, 40)); }
TEST(GradedRingProperties, DivideRoundTrip) { expect_ok(props::divide_round_trip(14, 200)); }

TEST(MilnorProperties, CoordinateChangeInvariance) { expect_ok(props::milnor_coordinate_invariance(21, 24)); }
TEST(MilnorProperties, DimensionSequenceMonotone) { expect_ok(props::milnor_sequence_monotone()); }

TEST(NcdProperties, RandomValidModels) { expect_ok(props::ncd_random_models(31, 500)); }
TEST(NcdProperties, SemistableModels) { expect_ok(props::semistable_models(32, 300)); }

TEST(InvariantsProperties, YoshikawaRoutesAgree) { expect_ok(props::yoshikawa_routes(41, 300)); }
TEST(InvariantsProperties, BcovLinearInDeltaChi) { expect_ok(props::bcov_linearity(42, 200)); }

TEST(PeriodfitProperties, ExactRecovery) { expect_ok(props::fit_exact_recovery(51, 200)); }
TEST(PeriodfitProperties, LegendreMonotone) { expect_ok(props::legendre_monotone()); }
