#pragma once

// Power trade-off between a three-arm dose-optimization study and two-arm
// alternatives with the same total sample size, under a linear dose response.
//
// Powers are expressed relative to the three-arm study's power C, which
// cancels out of every comparison made here. With per-arm n = N/2 versus N/3,
// the extreme pair (L, H) keeps the full effect delta while an adjacent pair
// (L, M or M, H) sees delta / 2.

#include <string_view>

#include "ddl/stat_core.hpp"

namespace ddl {

enum class ArmChoice {
    ThreeArm,
    TwoArmExtremes,  // L + H
    TwoArmAdjacent,  // L + M or M + H
};

std::string_view to_string(ArmChoice choice);

// Degree of prior belief lambda in [0, 1].
class PriorBelief {
   public:
    explicit PriorBelief(double lambda);
    constexpr double value() const { return lambda_; }

   private:
    double lambda_;
};

/// delta1 sqrt(n1) / (delta2 sqrt(n2)); may be below one.
double relative_strength(EffectSize delta1, SampleSize n1, EffectSize delta2, SampleSize n2);

/// Power of the given layout relative to the three-arm baseline.
double power_ratio(ArmChoice choice);

enum class ThresholdDirection {
    ExpectedExceedsOne,  // justified when lambda a + (1 - lambda) b > 1
    ExpectedBelowOne,    // justified when lambda a + (1 - lambda) b < 1
};

// Solution of lambda a + (1 - lambda) b = 1 and the side of it on which the
// design question is answered "yes".
struct LambdaThreshold {
    enum class Verdict {
        Threshold,  // root lies in [0, 1]
        Always,     // every lambda in [0, 1] satisfies the inequality
        Never,      // no lambda in [0, 1] does
    };

    Verdict verdict;
    double lambda;          // the root, even when it falls outside [0, 1]
    bool justified_above;   // true: lambda > root justifies; false: lambda < root

    /// Strict inequality: a belief exactly at the root is not sufficient.
    bool justifies(PriorBelief belief) const;
};

/// Throws DomainError when a == b (no crossing).
LambdaThreshold lambda_threshold(double favorable_ratio, double unfavorable_ratio,
                                 ThresholdDirection direction);

/// Belief that M is not optimal needed before dropping it for an (L, H) study.
/// Root is sqrt(8/3) - 1.
LambdaThreshold exclude_middle_threshold();

/// Belief that the optimum lies between two adjacent doses needed before
/// running only that pair. Root is 2 - sqrt(3/2).
LambdaThreshold adjacent_pair_threshold();

}  // namespace ddl
