#include "ddl/design_tradeoff.hpp"

#include <cmath>

#include "ddl/error.hpp"

namespace ddl {

std::string_view to_string(ArmChoice choice) {
    switch (choice) {
        case ArmChoice::ThreeArm: return "three-arm";
        case ArmChoice::TwoArmExtremes: return "two-arm-extremes";
        case ArmChoice::TwoArmAdjacent: return "two-arm-adjacent";
    }
    return "unknown";
}

PriorBelief::PriorBelief(double lambda) : lambda_(lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("prior belief must lie in [0, 1]");
}

double relative_strength(EffectSize delta1, SampleSize n1, EffectSize delta2, SampleSize n2) {
    return delta1.value() * std::sqrt(n1.value()) / (delta2.value() * std::sqrt(n2.value()));
}

double power_ratio(ArmChoice choice) {
    switch (choice) {
        case ArmChoice::ThreeArm: return 1.0;
        case ArmChoice::TwoArmExtremes: return std::sqrt(1.5);
        case ArmChoice::TwoArmAdjacent: return std::sqrt(0.375);
    }
    return 1.0;
}

bool LambdaThreshold::justifies(PriorBelief belief) const {
    switch (verdict) {
        case Verdict::Always: return true;
        case Verdict::Never: return false;
        case Verdict::Threshold: break;
    }
    return justified_above ? belief.value() > lambda : belief.value() < lambda;
}

LambdaThreshold lambda_threshold(double favorable_ratio, double unfavorable_ratio,
                                 ThresholdDirection direction) {
    const double a = favorable_ratio;
    const double b = unfavorable_ratio;
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("lambda_threshold: non-finite ratio");
    if (a == b) throw DomainError("lambda_threshold: equal ratios have no threshold");

    // b + lambda (a - b) crosses one at lambda = (1 - b) / (a - b).
    LambdaThreshold t{};
    t.lambda = (1.0 - b) / (a - b);
    const bool increasing = a > b;
    t.justified_above = direction == ThresholdDirection::ExpectedExceedsOne ? increasing : !increasing;

    if (t.lambda >= 0.0 && t.lambda <= 1.0) {
        t.verdict = LambdaThreshold::Verdict::Threshold;
    } else {
        // Every lambda in [0, 1] sits on the same side of the root.
        const bool above = 0.5 > t.lambda;
        t.verdict = above == t.justified_above ? LambdaThreshold::Verdict::Always
                                               : LambdaThreshold::Verdict::Never;
    }
    return t;
}

LambdaThreshold exclude_middle_threshold() {
    return lambda_threshold(power_ratio(ArmChoice::TwoArmExtremes),
                            power_ratio(ArmChoice::TwoArmAdjacent),
                            ThresholdDirection::ExpectedExceedsOne);
}

LambdaThreshold adjacent_pair_threshold() {
    // Baseline is now the adjacent two-arm study, so both ratios are the
    // reciprocals of power_ratio(TwoArmExtremes) and power_ratio(TwoArmAdjacent).
    return lambda_threshold(std::sqrt(2.0 / 3.0), std::sqrt(8.0 / 3.0),
                            ThresholdDirection::ExpectedBelowOne);
}

}  // namespace ddl
