#pragma once

// Standard-normal machinery and closed-form power approximations for a
// two-arm comparison with equal allocation.
//
//   N        ~= 4 (z_alpha + z_beta)^2 / delta^2
//   power     = Phi(sqrt(N)/2 * delta + z_alpha)
//   linear   ~= sqrt(N) delta / (2 sqrt(2 pi)) + z_alpha / sqrt(2 pi) + 0.5
//   G(x | r)  = (z_{1-x} - r z_{1-x/r}) / (r - 1)
//
// z_p denotes the standard normal quantile, so z_alpha < 0 for alpha < 0.5.

namespace ddl {

// One-sided Type I error level, 0 < alpha < 0.5.
class SignificanceLevel {
   public:
    explicit SignificanceLevel(double alpha);
    constexpr double value() const { return alpha_; }

   private:
    double alpha_;
};

// Study power 1 - beta, 0 < power < 1.
class PowerValue {
   public:
    explicit PowerValue(double power);
    constexpr double value() const { return power_; }

   private:
    double power_;
};

// Standardized effect size, strictly positive.
class EffectSize {
   public:
    explicit EffectSize(double delta);
    constexpr double value() const { return delta_; }

   private:
    double delta_;
};

// Total sample size over both arms. Continuous; rounding is left to callers.
class SampleSize {
   public:
    explicit SampleSize(double n_total);
    constexpr double value() const { return n_total_; }

   private:
    double n_total_;
};

// Relative signal strength delta1 sqrt(N1) / (delta2 sqrt(N2)). Values within
// 1e-9 of one are rejected: G(x | r) degenerates at r = 1.
class RelativeStrength {
   public:
    explicit RelativeStrength(double r);
    constexpr double value() const { return r_; }

   private:
    double r_;
};

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

/// Standard normal CDF. Throws DomainError for non-finite x.
double normal_cdf(double x);

/// Standard normal quantile, accurate to ~1e-15 after one Halley refinement.
/// Throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

/// Total sample size 4 (z_alpha + z_beta)^2 / delta^2; 0 < beta_err < 0.5.
SampleSize sample_size(SignificanceLevel alpha, double beta_err, EffectSize delta);

/// Exact power Phi(sqrt(N)/2 * delta + z_alpha).
/// Saturates to exactly 1.0 in double precision for very large N * delta^2.
double power_exact(SampleSize n_total, EffectSize delta, SignificanceLevel alpha);

/// Affine approximation of power_exact obtained by linearizing Phi at zero.
/// Not clamped: the value may leave (0, 1) far from the centre.
double power_linear(SampleSize n_total, EffectSize delta, SignificanceLevel alpha);

/// G(x | r). Phi(G) is the significance level implied when two studies with
/// relative strength r have powers x and x / r.
double g_function(PowerValue x, RelativeStrength r);

/// |Phi(x) - (0.5 + x / sqrt(2 pi))|
double linear_cdf_error(double x);

}  // namespace ddl
