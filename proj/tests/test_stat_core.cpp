#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ddl/error.hpp"
#include "ddl/stat_core.hpp"
#include "oracles.hpp"

namespace ddl {
namespace {

using test::phi_oracle;
using test::quantile_oracle;

TEST(NormalCdf, Examples) {
    EXPECT_EQ(normal_cdf(0.0), 0.5);
    EXPECT_NEAR(normal_cdf(1.959964), 0.975, 1e-6);
    EXPECT_NEAR(normal_cdf(-1.644854), 0.05, 1e-6);
}

TEST(NormalCdf, MatchesSeriesOracle) {
    for (double x = -8.0; x <= 8.0; x += 0.0625) EXPECT_NEAR(normal_cdf(x), phi_oracle(x), 1e-12) << x;
}

TEST(NormalCdf, SymmetryAndMonotonicity) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = dist(gen);
        EXPECT_NEAR(normal_cdf(-x) + normal_cdf(x), 1.0, 1e-12);
    }
    double prev = normal_cdf(-6.0);
    for (double x = -5.99; x <= 6.0; x += 0.01) {
        const double v = normal_cdf(x);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(NormalCdf, RejectsNonFinite) {
    EXPECT_THROW(normal_cdf(std::numeric_limits<double>::quiet_NaN()), DomainError);
    EXPECT_THROW(normal_cdf(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(NormalQuantile, Examples) {
    EXPECT_EQ(normal_quantile(0.5), 0.0);
    EXPECT_NEAR(normal_quantile(0.05), -1.644854, 1e-5);
    EXPECT_NEAR(normal_quantile(0.975), 1.959964, 1e-5);
    // Frozen from the bisection oracle.
    EXPECT_NEAR(normal_quantile(0.05), quantile_oracle(0.05), 1e-12);
    EXPECT_NEAR(normal_quantile(0.75), quantile_oracle(0.75), 1e-12);
}

TEST(NormalQuantile, InvertsCdf) {
    for (double p : {1e-12, 1e-8, 1e-4, 0.001, 0.01, 0.02425, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9,
                     0.97575, 0.99, 0.999, 1 - 1e-6}) {
        EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-10) << p;
    }
    for (int i = 1; i < 1000; ++i) {
        const double p = i / 1000.0;
        EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-10) << p;
        EXPECT_NEAR(normal_quantile(p), -normal_quantile(1.0 - p), 1e-12) << p;
        if (i > 1) EXPECT_GT(normal_quantile(p), normal_quantile((i - 1) / 1000.0));
    }
}

TEST(NormalQuantile, DomainErrors) {
    EXPECT_THROW(normal_quantile(0.0), DomainError);
    EXPECT_THROW(normal_quantile(1.0), DomainError);
    EXPECT_THROW(normal_quantile(-0.1), DomainError);
    EXPECT_THROW(normal_quantile(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST(StrongTypes, RejectInvalidValues) {
    EXPECT_THROW(SignificanceLevel(0.0), DomainError);
    EXPECT_THROW(SignificanceLevel(0.5), DomainError);
    EXPECT_THROW(PowerValue(1.0), DomainError);
    EXPECT_THROW(EffectSize(0.0), DomainError);
    EXPECT_THROW(SampleSize(-1.0), DomainError);
    EXPECT_THROW(RelativeStrength(1.0), DomainError);
    EXPECT_THROW(RelativeStrength(1.0 + 1e-10), DomainError);
    EXPECT_NO_THROW(RelativeStrength(1.0 + 1e-8));
}

TEST(SampleSize, Examples) {
    // 4 (z_a + z_b)^2 / delta^2 with oracle quantiles, frozen.
    const double n1 = sample_size(SignificanceLevel(0.05), 0.20, EffectSize(0.5)).value();
    EXPECT_NEAR(n1, 98.92091571231633, 1e-8);
    EXPECT_NEAR(sample_size(SignificanceLevel(0.025), 0.10, EffectSize(0.4)).value(),
                262.68557653601556, 1e-8);
    EXPECT_NEAR(sample_size(SignificanceLevel(0.05), 0.20, EffectSize(1.0)).value(), n1 / 4.0,
                1e-12);
    EXPECT_THROW(sample_size(SignificanceLevel(0.05), 0.5, EffectSize(0.5)), DomainError);
    EXPECT_THROW(sample_size(SignificanceLevel(0.05), 0.2, EffectSize(0.0)), DomainError);
}

TEST(PowerExact, Examples) {
    const SignificanceLevel alpha(0.05);
    EXPECT_NEAR(power_exact(SampleSize(98.92), EffectSize(0.5), alpha), 0.80, 1e-3);
    EXPECT_NEAR(power_exact(SampleSize(100), EffectSize(0.5), alpha), 0.8037649400154937, 1e-9);
    EXPECT_NEAR(power_exact(SampleSize(1e-12), EffectSize(0.5), alpha), 0.05, 1e-6);
}

TEST(PowerExact, RoundTripGrid) {
    for (double a : {0.025, 0.05, 0.1})
        for (double b : {0.1, 0.2, 0.3, 0.4, 0.5 - 1e-9})
            for (double d : {0.2, 0.4, 0.6, 0.8, 1.0}) {
                const SignificanceLevel alpha(a);
                const EffectSize delta(d);
                const double p = power_exact(sample_size(alpha, b, delta), delta, alpha);
                EXPECT_NEAR(p, 1.0 - b, 1e-9) << a << " " << b << " " << d;
            }
}

TEST(PowerExact, Monotone) {
    const SignificanceLevel alpha(0.05);
    for (double n = 10; n < 400; n += 10) {
        EXPECT_LT(power_exact(SampleSize(n), EffectSize(0.3), alpha),
                  power_exact(SampleSize(n + 10), EffectSize(0.3), alpha));
    }
    for (double d = 0.05; d < 1.0; d += 0.05) {
        EXPECT_LT(power_exact(SampleSize(60), EffectSize(d), alpha),
                  power_exact(SampleSize(60), EffectSize(d + 0.05), alpha));
    }
}

TEST(PowerLinear, Examples) {
    const SignificanceLevel alpha(0.10);
    const double lin = power_linear(SampleSize(90), EffectSize(0.3), alpha);
    EXPECT_NEAR(lin, 0.556439713444147, 1e-9);
    EXPECT_LT(std::abs(lin - power_exact(SampleSize(90), EffectSize(0.3), alpha)), 0.02);

    // sqrt(N)/2 delta + z_alpha = 0 puts both forms at 0.5.
    const double z = normal_quantile(0.05);
    const double n_centre = 4.0 * z * z;  // delta = 1
    EXPECT_NEAR(power_linear(SampleSize(n_centre), EffectSize(1.0), SignificanceLevel(0.05)), 0.5,
                1e-12);
    EXPECT_NEAR(power_exact(SampleSize(n_centre), EffectSize(1.0), SignificanceLevel(0.05)), 0.5,
                1e-12);

    // Constant term at alpha = 0.1 is close to zero, so power ~ sqrt(N) delta.
    const double constant = kInvSqrt2Pi * normal_quantile(0.10) + 0.5;
    EXPECT_NEAR(constant, -0.011265104010389049, 1e-12);
}

TEST(PowerLinear, NotClamped) {
    EXPECT_GT(power_linear(SampleSize(1e4), EffectSize(1.0), SignificanceLevel(0.05)), 1.0);
}

TEST(GFunction, Examples) {
    const double g = g_function(PowerValue(0.5), RelativeStrength(1.5));
    EXPECT_NEAR(g, -1.292181897886373, 1e-9);
    EXPECT_NEAR(normal_cdf(g), 0.09814707954362306, 1e-9);
    EXPECT_NEAR(normal_cdf(g_function(PowerValue(0.3), RelativeStrength(2.0))),
                0.060755038738316745, 1e-9);
}

TEST(GFunction, BandOverPracticalRange) {
    for (int xi = 25; xi <= 75; ++xi)
        for (int ri = 12; ri <= 20; ++ri) {
            const double v = normal_cdf(g_function(PowerValue(xi / 100.0), RelativeStrength(ri / 10.0)));
            EXPECT_GE(v, 0.04);
            EXPECT_LE(v, 0.11);
        }
}

TEST(GFunction, ImpliedAlphaReproducesPowers) {
    // Two studies at level Phi(G) with strengths in ratio r have powers x and x/r.
    const double x = 0.6;
    const double r = 1.7;
    const double z_alpha = g_function(PowerValue(x), RelativeStrength(r));
    // Solve each study's signal from its power, then compare the signals.
    const double s1 = normal_quantile(x) - z_alpha;
    const double s2 = normal_quantile(x / r) - z_alpha;
    EXPECT_NEAR(s1 / s2, r, 1e-9);
}

TEST(LinearCdfError, Examples) {
    EXPECT_EQ(linear_cdf_error(0.0), 0.0);
    EXPECT_NEAR(linear_cdf_error(normal_quantile(0.75)), 0.01908247905061755, 1e-12);
    double worst = 0.0;
    const double lo = normal_quantile(0.25);
    const double hi = normal_quantile(0.75);
    for (double x = lo; x <= hi; x += 1e-4) worst = std::max(worst, linear_cdf_error(x));
    EXPECT_LT(worst, 0.02);
    EXPECT_GT(linear_cdf_error(3.0), 0.02);
}

// Power is roughly proportional to r for underpowered studies at alpha = 0.1.
TEST(Properties, ProportionalityLaw) {
    const SignificanceLevel alpha(0.10);
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> n_dist(10.0, 400.0);
    std::uniform_real_distribution<double> d_dist(0.05, 1.0);
    int checked = 0;
    double worst = 0.0;
    double at_x1 = 0.0, at_x2 = 0.0, at_r = 0.0;
    for (int i = 0; i < 200000 && checked < 5000; ++i) {
        const SampleSize n1(n_dist(gen)), n2(n_dist(gen));
        const EffectSize d1(d_dist(gen)), d2(d_dist(gen));
        const double x1 = power_exact(n1, d1, alpha);
        const double x2 = power_exact(n2, d2, alpha);
        const double r = d1.value() * std::sqrt(n1.value()) / (d2.value() * std::sqrt(n2.value()));
        if (x1 < 0.25 || x1 > 0.75 || x2 < 0.25 || x2 > 0.75 || r < 1.0 || r > 2.0) continue;
        ++checked;
        if (std::abs(x1 / x2 - r) > worst) {
            worst = std::abs(x1 / x2 - r);
            at_x1 = x1, at_x2 = x2, at_r = r;
        }
    }
    EXPECT_GT(checked, 1000);
    EXPECT_LE(worst, 0.08) << "x1 " << at_x1 << " x2 " << at_x2 << " r " << at_r;
}

// Worst case of the law over the whole region: with s = Phi^-1(x) - z_alpha the
// ratio r is s1 / s2, so x1 = Phi(r s2 + z_alpha). Dense scan over (x2, r).
TEST(Properties, ProportionalityLawWorstCase) {
    const double z = normal_quantile(0.10);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double x2 = 0.25 + 0.5 * i / 1000.0;
        for (int k = 0; k <= 500; ++k) {
            const double r = 1.0 + k / 500.0;
            const double x1 = normal_cdf(r * (normal_quantile(x2) - z) + z);
            if (x1 <= 0.75) worst = std::max(worst, std::abs(x1 / x2 - r));
        }
    }
    // Attained at x2 = 0.25, r = 2 (x1 = 0.473).
    EXPECT_NEAR(worst, 0.10751793800657938, 1e-9);
}

}  // namespace
}  // namespace ddl
