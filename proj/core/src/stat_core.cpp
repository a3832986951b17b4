#include "ddl/stat_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ddl/error.hpp"

namespace ddl {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

// Acklam's rational approximation, relative error ~1.15e-9 before refinement.
double quantile_initial(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

SignificanceLevel::SignificanceLevel(double alpha) : alpha_(alpha) {
    require(alpha > 0.0 && alpha < 0.5, "significance level must lie in (0, 0.5)");
}

PowerValue::PowerValue(double power) : power_(power) {
    require(power > 0.0 && power < 1.0, "power must lie in (0, 1)");
}

EffectSize::EffectSize(double delta) : delta_(delta) {
    require(std::isfinite(delta) && delta > 0.0, "effect size must be positive");
}

SampleSize::SampleSize(double n_total) : n_total_(n_total) {
    require(std::isfinite(n_total) && n_total > 0.0, "sample size must be positive");
}

RelativeStrength::RelativeStrength(double r) : r_(r) {
    require(std::isfinite(r) && r > 1.0 + 1e-9, "relative strength must exceed 1");
}

double normal_cdf(double x) {
    require(std::isfinite(x), "normal_cdf: non-finite argument");
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, "normal_quantile: p must lie in (0, 1)");
    if (p == 0.5) return 0.0;
    // Solve for the lower tail and reflect, so q(1 - p) = -q(p) holds exactly
    // whenever 1 - p is representable.
    const bool upper = p > 0.5;
    const double tail = upper ? 1.0 - p : p;
    double x = quantile_initial(tail);

    // Halley step on Phi(x) - tail. erfc keeps the residual accurate in the tail.
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - tail;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return upper ? -x : x;
}

SampleSize sample_size(SignificanceLevel alpha, double beta_err, EffectSize delta) {
    require(beta_err > 0.0 && beta_err < 0.5, "sample_size: beta must lie in (0, 0.5)");
    const double z = normal_quantile(alpha.value()) + normal_quantile(beta_err);
    const double d = delta.value();
    return SampleSize(4.0 * z * z / (d * d));
}

double power_exact(SampleSize n_total, EffectSize delta, SignificanceLevel alpha) {
    return normal_cdf(0.5 * std::sqrt(n_total.value()) * delta.value() +
                      normal_quantile(alpha.value()));
}

double power_linear(SampleSize n_total, EffectSize delta, SignificanceLevel alpha) {
    return 0.5 * kInvSqrt2Pi * std::sqrt(n_total.value()) * delta.value() +
           kInvSqrt2Pi * normal_quantile(alpha.value()) + 0.5;
}

double g_function(PowerValue x, RelativeStrength r) {
    const double rv = r.value();
    const double xv = x.value();
    return (normal_quantile(1.0 - xv) - rv * normal_quantile(1.0 - xv / rv)) / (rv - 1.0);
}

double linear_cdf_error(double x) {
    return std::abs(normal_cdf(x) - (0.5 + x * kInvSqrt2Pi));
}

}  // namespace ddl
