#include <gtest/gtest.h>

#include <cmath>

#include "ddl/design_tradeoff.hpp"
#include "ddl/error.hpp"

namespace ddl {
namespace {

TEST(PowerRatio, ClosedForms) {
    EXPECT_EQ(power_ratio(ArmChoice::ThreeArm), 1.0);
    EXPECT_NEAR(power_ratio(ArmChoice::TwoArmExtremes), std::sqrt(1.5), 1e-15);
    EXPECT_NEAR(power_ratio(ArmChoice::TwoArmAdjacent), std::sqrt(0.375), 1e-15);
    EXPECT_NEAR(power_ratio(ArmChoice::TwoArmExtremes) * power_ratio(ArmChoice::TwoArmAdjacent),
                0.75, 1e-12);
    EXPECT_NEAR(power_ratio(ArmChoice::TwoArmAdjacent), power_ratio(ArmChoice::TwoArmExtremes) / 2,
                1e-12);
}

// Total N split over 3 arms (L vs H keeps delta) against 2 arms.
TEST(PowerRatio, AgreesWithRelativeStrength) {
    const double n_total = 90.0;
    const EffectSize delta(0.4);
    const SampleSize three(n_total / 3.0);
    const SampleSize two(n_total / 2.0);
    EXPECT_NEAR(relative_strength(delta, two, delta, three),
                power_ratio(ArmChoice::TwoArmExtremes), 1e-12);
    EXPECT_NEAR(relative_strength(EffectSize(0.2), two, delta, three),
                power_ratio(ArmChoice::TwoArmAdjacent), 1e-12);
    EXPECT_LT(relative_strength(EffectSize(0.1), two, delta, three), 1.0);
}

TEST(LambdaThreshold, ExcludeMiddle) {
    const LambdaThreshold t = exclude_middle_threshold();
    EXPECT_EQ(t.verdict, LambdaThreshold::Verdict::Threshold);
    EXPECT_NEAR(t.lambda, std::sqrt(8.0 / 3.0) - 1.0, 1e-12);
    EXPECT_NEAR(t.lambda, 0.632993, 1e-6);
    EXPECT_TRUE(t.justified_above);
    EXPECT_TRUE(t.justifies(PriorBelief(0.7)));
    EXPECT_FALSE(t.justifies(PriorBelief(0.6)));
    EXPECT_FALSE(t.justifies(PriorBelief(t.lambda)));
}

TEST(LambdaThreshold, AdjacentPair) {
    const LambdaThreshold t = adjacent_pair_threshold();
    EXPECT_EQ(t.verdict, LambdaThreshold::Verdict::Threshold);
    EXPECT_NEAR(t.lambda, 2.0 - std::sqrt(1.5), 1e-12);
    EXPECT_NEAR(t.lambda, 0.775255, 1e-6);
    EXPECT_TRUE(t.justified_above);
    EXPECT_TRUE(t.justifies(PriorBelief(0.8)));
    EXPECT_FALSE(t.justifies(PriorBelief(0.77)));
    EXPECT_FALSE(t.justifies(PriorBelief(t.lambda)));
    EXPECT_GT(t.lambda, exclude_middle_threshold().lambda);
    const double s = std::sqrt(8.0 / 3.0);
    EXPECT_NEAR((s - 1.0) / (s - std::sqrt(2.0 / 3.0)), t.lambda, 1e-12);
}

TEST(LambdaThreshold, NamedThresholdsInUpperHalf) {
    for (const LambdaThreshold& t : {exclude_middle_threshold(), adjacent_pair_threshold()}) {
        EXPECT_GT(t.lambda, 0.5);
        EXPECT_LT(t.lambda, 1.0);
    }
}

TEST(LambdaThreshold, ExactRootProperty) {
    for (double a : {0.3, 0.8, 1.1, 1.5, 2.5})
        for (double b : {0.2, 0.6, 0.9, 1.2, 3.0}) {
            if (a == b) continue;
            for (auto dir : {ThresholdDirection::ExpectedExceedsOne,
                             ThresholdDirection::ExpectedBelowOne}) {
                const LambdaThreshold t = lambda_threshold(a, b, dir);
                EXPECT_NEAR(t.lambda * a + (1 - t.lambda) * b, 1.0, 1e-12);
                // Every belief the threshold approves satisfies the inequality.
                for (int i = 0; i <= 100; ++i) {
                    const double l = i / 100.0;
                    const double e = l * a + (1 - l) * b;
                    const bool holds = dir == ThresholdDirection::ExpectedExceedsOne ? e > 1 : e < 1;
                    if (std::abs(e - 1.0) > 1e-12)
                        EXPECT_EQ(t.justifies(PriorBelief(l)), holds) << a << " " << b << " " << l;
                }
            }
        }
}

TEST(LambdaThreshold, AlwaysAndNever) {
    const LambdaThreshold always = lambda_threshold(1.5, 1.2, ThresholdDirection::ExpectedExceedsOne);
    EXPECT_EQ(always.verdict, LambdaThreshold::Verdict::Always);
    EXPECT_TRUE(always.justifies(PriorBelief(0.0)));
    const LambdaThreshold never = lambda_threshold(0.5, 0.8, ThresholdDirection::ExpectedExceedsOne);
    EXPECT_EQ(never.verdict, LambdaThreshold::Verdict::Never);
    EXPECT_FALSE(never.justifies(PriorBelief(1.0)));
}

TEST(LambdaThreshold, Errors) {
    EXPECT_THROW(lambda_threshold(1.2, 1.2, ThresholdDirection::ExpectedExceedsOne), DomainError);
    EXPECT_THROW(PriorBelief(-0.1), DomainError);
    EXPECT_THROW(PriorBelief(1.1), DomainError);
}

}  // namespace
}  // namespace ddl
