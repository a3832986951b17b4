#pragma once

// Bayesian classification of dose-response shape over three doses (L, M, H).
//
// Response rates p_L, p_M, p_H have independent Beta priors. A triple is
// assigned one of four shapes by comparing adjacent differences against a
// comparability margin m (default 2.5 percentage points):
//
//   S1  p_M - p_L <= m  and  p_H - p_M <= m    flat
//   S2  p_M - p_L <= m  and  p_H - p_M >  m    flat, then rise
//   S3  p_M - p_L >  m  and  p_H - p_M <= m    rise, then plateau
//   S4  p_M - p_L >  m  and  p_H - p_M >  m    rise, rise
//
// Decreasing differences fall in the "<= m" branch. Observed responders are
// binomial per arm; the posterior over shapes is the posterior mass of each
// region of [0, 1]^3.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ddl/random.hpp"

namespace ddl {

enum class Dose : int { L = 0, M = 1, H = 2 };
inline constexpr std::array<Dose, 3> kAllDoses = {Dose::L, Dose::M, Dose::H};
std::string_view to_string(Dose dose);
constexpr std::size_t index(Dose d) { return static_cast<std::size_t>(d); }

enum class ShapeId : int { S1 = 0, S2 = 1, S3 = 2, S4 = 3 };
inline constexpr std::array<ShapeId, 4> kAllShapes = {ShapeId::S1, ShapeId::S2, ShapeId::S3,
                                                      ShapeId::S4};
std::string_view to_string(ShapeId shape);
std::string_view describe(ShapeId shape);
constexpr std::size_t index(ShapeId s) { return static_cast<std::size_t>(s); }

class BetaParams {
   public:
    BetaParams(double a, double b);

    double a() const { return a_; }
    double b() const { return b_; }
    double mean() const { return a_ / (a_ + b_); }
    double variance() const;

    /// Conjugate update after observing `responders` out of `n`.
    BetaParams updated(int responders, int n) const;

    bool operator==(const BetaParams&) const = default;

   private:
    double a_;
    double b_;
};

struct DosePriorSet {
    BetaParams low;
    BetaParams mid;
    BetaParams high;

    /// Beta(0.1, 1.9), Beta(0.6, 1.4), Beta(0.8, 1.2): prior means 5%, 30%, 40%.
    static DosePriorSet defaults();

    const BetaParams& operator[](Dose d) const;
    bool operator==(const DosePriorSet&) const = default;
};

class ResponseTriple {
   public:
    ResponseTriple(double low, double mid, double high);

    double operator[](Dose d) const { return p_[index(d)]; }
    const std::array<double, 3>& values() const { return p_; }
    bool operator==(const ResponseTriple&) const = default;

   private:
    std::array<double, 3> p_;
};

class ComparabilityMargin {
   public:
    ComparabilityMargin() = default;
    explicit ComparabilityMargin(double margin);
    double value() const { return margin_; }

   private:
    double margin_ = 0.025;
};

// Responders out of n for one arm. n = 0 (no observations) is allowed.
class ArmCounts {
   public:
    ArmCounts(int responders, int n);
    int responders() const { return responders_; }
    int n() const { return n_; }
    bool operator==(const ArmCounts&) const = default;

   private:
    int responders_;
    int n_;
};

struct TrialCounts {
    ArmCounts low;
    ArmCounts mid;
    ArmCounts high;

    /// Same n on every arm.
    static TrialCounts uniform(int low, int mid, int high, int n);
    const ArmCounts& operator[](Dose d) const;
};

struct ShapePosterior {
    std::array<double, 4> probs{};

    double operator[](ShapeId s) const { return probs[index(s)]; }

    /// Highest-probability shape. Exact ties go to the shape whose selected
    /// dose is lower: S1, then S3, then S2, then S4.
    ShapeId most_probable() const;
};

ShapeId classify_shape(const ResponseTriple& p, ComparabilityMargin margin);

/// One independent draw from each dose prior.
ResponseTriple sample_prior(const DosePriorSet& priors, Rng& rng);

/// log C(n, x) + x log p + (n - x) log(1 - p), with 0 log 0 = 0. Returns
/// -infinity when p = 0 and x > 0, or p = 1 and x < n.
double binomial_log_likelihood(const ArmCounts& counts, double p);
double binomial_log_likelihood(const TrialCounts& counts, const ResponseTriple& p);

// Fixed sample of prior triples, stored as log p / log(1 - p) with the shape
// label of each draw. Draws are made in blocks of kBlockSize, block k seeded
// from derive_seed(seed, {k}), so the bank is identical for any worker count.
class PriorSampleBank {
   public:
    static constexpr std::size_t kBlockSize = 4096;

    PriorSampleBank(const DosePriorSet& priors, ComparabilityMargin margin, std::size_t samples,
                    std::uint64_t seed, unsigned workers = 0);

    std::size_t size() const { return shapes_.size(); }
    ComparabilityMargin margin() const { return margin_; }
    std::span<const std::uint8_t> shapes() const { return shapes_; }
    std::span<const double> log_p(Dose d) const { return log_p_[index(d)]; }
    std::span<const double> log1m_p(Dose d) const { return log1m_p_[index(d)]; }

    /// Shape frequencies among the prior draws.
    ShapePosterior prior_frequencies() const;

    /// Self-normalized importance estimate: each prior draw weighted by the
    /// binomial likelihood of `counts`. Throws NumericalError when every
    /// weight is zero.
    ShapePosterior posterior(const TrialCounts& counts) const;

    /// Same estimate restricted to the first `samples` draws found by walking
    /// the listed blocks in order.
    ShapePosterior posterior(const TrialCounts& counts, std::span<const std::size_t> blocks,
                             std::size_t samples) const;

    std::size_t blocks() const { return (size() + kBlockSize - 1) / kBlockSize; }

   private:
    ShapePosterior estimate(const TrialCounts& counts,
                            std::span<const std::pair<std::size_t, std::size_t>> ranges) const;

    ComparabilityMargin margin_;
    std::array<std::vector<double>, 3> log_p_;
    std::array<std::vector<double>, 3> log1m_p_;
    std::vector<std::uint8_t> shapes_;
};

/// Monte Carlo shape frequencies under the prior.
ShapePosterior shape_prior_probs(const DosePriorSet& priors, ComparabilityMargin margin,
                                 std::size_t samples, std::uint64_t seed, unsigned workers = 0);

/// Prior-importance-sampling posterior over shapes.
ShapePosterior posterior_shapes(const TrialCounts& counts, const DosePriorSet& priors,
                                ComparabilityMargin margin, std::size_t samples,
                                std::uint64_t seed, unsigned workers = 0);

// Deterministic cell-sum over a grid_cells^3 partition of [0, 1]^3. Each axis
// carries the exact prior mass of its cells (regularized incomplete Beta
// differences, finite even where the density is unbounded at 0); the
// likelihood and the shape label are evaluated at cell midpoints.
class ShapeQuadrature {
   public:
    ShapeQuadrature(const DosePriorSet& priors, ComparabilityMargin margin, int grid_cells);

    int grid_cells() const { return cells_; }
    ShapePosterior posterior(const TrialCounts& counts) const;

   private:
    ComparabilityMargin margin_;
    int cells_;
    std::vector<double> mid_;
    std::array<std::vector<double>, 3> log_mass_;
};

ShapePosterior posterior_shapes_quadrature(const TrialCounts& counts, const DosePriorSet& priors,
                                           ComparabilityMargin margin, int grid_cells);

/// P(p_high - p_low > margin | data) from paired draws of the two conjugate
/// Beta posteriors.
double pairwise_superiority(const ArmCounts& lower, const ArmCounts& higher,
                            const BetaParams& lower_prior, const BetaParams& higher_prior,
                            ComparabilityMargin margin, std::size_t samples, std::uint64_t seed);

/// Same probability by one-dimensional quadrature: exact posterior cell mass
/// of the lower arm times the exact posterior survival of the higher arm at
/// the cell midpoint plus the margin.
double pairwise_superiority_quadrature(const ArmCounts& lower, const ArmCounts& higher,
                                       const BetaParams& lower_prior,
                                       const BetaParams& higher_prior,
                                       ComparabilityMargin margin, int grid_cells = 4000);

}  // namespace ddl
