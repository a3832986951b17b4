#include "ddl/shape_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "ddl/error.hpp"
#include "parallel.hpp"

namespace ddl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// x log p + (n - x) log(1 - p) from precomputed logs, skipping zero
// coefficients so that log 0 never meets a zero count.
double kernel(const ArmCounts& c, double log_p, double log1m_p) {
    double s = 0.0;
    const int x = c.responders();
    const int y = c.n() - x;
    if (x > 0) s += x * log_p;
    if (y > 0) s += y * log1m_p;
    return s;
}

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

ShapePosterior normalized(const std::array<double, 4>& mass) {
    double total = 0.0;
    for (double m : mass) total += m;
    if (!(total > 0.0) || !std::isfinite(total))
        throw NumericalError("shape posterior: total weight is zero or non-finite");
    ShapePosterior out;
    for (std::size_t s = 0; s < 4; ++s) out.probs[s] = mass[s] / total;
    return out;
}

}  // namespace

std::string_view to_string(Dose dose) {
    switch (dose) {
        case Dose::L: return "L";
        case Dose::M: return "M";
        case Dose::H: return "H";
    }
    return "?";
}

std::string_view to_string(ShapeId shape) {
    switch (shape) {
        case ShapeId::S1: return "S1";
        case ShapeId::S2: return "S2";
        case ShapeId::S3: return "S3";
        case ShapeId::S4: return "S4";
    }
    return "?";
}

std::string_view describe(ShapeId shape) {
    switch (shape) {
        case ShapeId::S1: return "flat";
        case ShapeId::S2: return "flat then rise";
        case ShapeId::S3: return "rise then plateau";
        case ShapeId::S4: return "rise, rise";
    }
    return "?";
}

BetaParams::BetaParams(double a, double b) : a_(a), b_(b) {
    if (!(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0))
        throw DomainError("Beta shape parameters must be positive and finite");
}

double BetaParams::variance() const {
    const double s = a_ + b_;
    return a_ * b_ / (s * s * (s + 1.0));
}

BetaParams BetaParams::updated(int responders, int n) const {
    return BetaParams(a_ + responders, b_ + (n - responders));
}

DosePriorSet DosePriorSet::defaults() {
    return {BetaParams(0.1, 1.9), BetaParams(0.6, 1.4), BetaParams(0.8, 1.2)};
}

const BetaParams& DosePriorSet::operator[](Dose d) const {
    switch (d) {
        case Dose::L: return low;
        case Dose::M: return mid;
        case Dose::H: return high;
    }
    return low;
}

ResponseTriple::ResponseTriple(double low, double mid, double high) : p_{low, mid, high} {
    for (double p : p_)
        if (!is_probability(p)) throw DomainError("response rates must lie in [0, 1]");
}

ComparabilityMargin::ComparabilityMargin(double margin) : margin_(margin) {
    if (!(margin >= 0.0 && margin <= 1.0)) throw DomainError("margin must lie in [0, 1]");
}

ArmCounts::ArmCounts(int responders, int n) : responders_(responders), n_(n) {
    if (n < 0 || responders < 0 || responders > n)
        throw DomainError("arm counts require 0 <= responders <= n");
}

TrialCounts TrialCounts::uniform(int low, int mid, int high, int n) {
    return {ArmCounts(low, n), ArmCounts(mid, n), ArmCounts(high, n)};
}

const ArmCounts& TrialCounts::operator[](Dose d) const {
    switch (d) {
        case Dose::L: return low;
        case Dose::M: return mid;
        case Dose::H: return high;
    }
    return low;
}

ShapeId ShapePosterior::most_probable() const {
    static constexpr std::array<ShapeId, 4> preference = {ShapeId::S1, ShapeId::S3, ShapeId::S2,
                                                          ShapeId::S4};
    ShapeId best = preference[0];
    for (ShapeId s : preference)
        if ((*this)[s] > (*this)[best]) best = s;
    return best;
}

ShapeId classify_shape(const ResponseTriple& p, ComparabilityMargin margin) {
    const double m = margin.value();
    const bool rise_low = p[Dose::M] - p[Dose::L] > m;
    const bool rise_high = p[Dose::H] - p[Dose::M] > m;
    if (!rise_low) return rise_high ? ShapeId::S2 : ShapeId::S1;
    return rise_high ? ShapeId::S4 : ShapeId::S3;
}

ResponseTriple sample_prior(const DosePriorSet& priors, Rng& rng) {
    std::array<double, 3> p{};
    for (Dose d : kAllDoses) p[index(d)] = beta_variate(rng, priors[d].a(), priors[d].b()).p;
    return ResponseTriple(p[0], p[1], p[2]);
}

double binomial_log_likelihood(const ArmCounts& counts, double p) {
    if (!is_probability(p)) throw DomainError("binomial_log_likelihood: p outside [0, 1]");
    const int x = counts.responders();
    const int n = counts.n();
    if ((p == 0.0 && x > 0) || (p == 1.0 && x < n)) return kNegInf;
    return log_choose(n, x) + kernel(counts, std::log(p), std::log1p(-p));
}

double binomial_log_likelihood(const TrialCounts& counts, const ResponseTriple& p) {
    double s = 0.0;
    for (Dose d : kAllDoses) s += binomial_log_likelihood(counts[d], p[d]);
    return s;
}

PriorSampleBank::PriorSampleBank(const DosePriorSet& priors, ComparabilityMargin margin,
                                 std::size_t samples, std::uint64_t seed, unsigned workers)
    : margin_(margin) {
    if (samples == 0) throw DomainError("prior sample bank needs at least one sample");
    for (std::size_t d = 0; d < 3; ++d) {
        log_p_[d].resize(samples);
        log1m_p_[d].resize(samples);
    }
    shapes_.resize(samples);

    const std::size_t blocks = (samples + kBlockSize - 1) / kBlockSize;
    detail::parallel_chunks(blocks, workers, [&](std::size_t b0, std::size_t b1, unsigned) {
        for (std::size_t block = b0; block < b1; ++block) {
            Rng rng(derive_seed(seed, {block}));
            const std::size_t end = std::min(samples, (block + 1) * kBlockSize);
            for (std::size_t i = block * kBlockSize; i < end; ++i) {
                std::array<double, 3> p{};
                for (Dose d : kAllDoses) {
                    const BetaVariate v = beta_variate(rng, priors[d].a(), priors[d].b());
                    p[index(d)] = v.p;
                    log_p_[index(d)][i] = v.log_p;
                    log1m_p_[index(d)][i] = v.log1m_p;
                }
                shapes_[i] = static_cast<std::uint8_t>(
                    classify_shape(ResponseTriple(p[0], p[1], p[2]), margin_));
            }
        }
    });
}

ShapePosterior PriorSampleBank::prior_frequencies() const {
    std::array<std::size_t, 4> counts{};
    for (std::uint8_t s : shapes_) ++counts[s];
    ShapePosterior out;
    for (std::size_t s = 0; s < 4; ++s)
        out.probs[s] = static_cast<double>(counts[s]) / static_cast<double>(size());
    return out;
}

ShapePosterior PriorSampleBank::posterior(const TrialCounts& counts) const {
    const std::pair<std::size_t, std::size_t> all{0, size()};
    return estimate(counts, {&all, 1});
}

ShapePosterior PriorSampleBank::posterior(const TrialCounts& counts,
                                          std::span<const std::size_t> blocks,
                                          std::size_t samples) const {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    std::size_t remaining = samples;
    for (std::size_t b : blocks) {
        if (remaining == 0) break;
        if (b >= this->blocks()) throw DomainError("prior sample bank: block index out of range");
        const std::size_t begin = b * kBlockSize;
        const std::size_t end = std::min({size(), begin + kBlockSize, begin + remaining});
        ranges.emplace_back(begin, end);
        remaining -= end - begin;
    }
    if (remaining != 0) throw DomainError("prior sample bank: blocks hold fewer draws than requested");
    return estimate(counts, ranges);
}

ShapePosterior PriorSampleBank::estimate(
    const TrialCounts& counts, std::span<const std::pair<std::size_t, std::size_t>> ranges) const {
    std::size_t n = 0;
    for (const auto& [begin, end] : ranges) n += end - begin;
    std::vector<double> loglik(n, 0.0);
    for (Dose d : kAllDoses) {
        const ArmCounts& c = counts[d];
        const auto lp = log_p(d);
        const auto lq = log1m_p(d);
        std::size_t k = 0;
        for (const auto& [begin, end] : ranges)
            for (std::size_t i = begin; i < end; ++i) loglik[k++] += kernel(c, lp[i], lq[i]);
    }
    const double top = *std::max_element(loglik.begin(), loglik.end());
    if (!std::isfinite(top))
        throw NumericalError("importance weights are all zero for the observed counts");

    std::array<double, 4> mass{};
    std::size_t k = 0;
    for (const auto& [begin, end] : ranges)
        for (std::size_t i = begin; i < end; ++i) mass[shapes_[i]] += std::exp(loglik[k++] - top);
    return normalized(mass);
}

ShapePosterior shape_prior_probs(const DosePriorSet& priors, ComparabilityMargin margin,
                                 std::size_t samples, std::uint64_t seed, unsigned workers) {
    return PriorSampleBank(priors, margin, samples, seed, workers).prior_frequencies();
}

ShapePosterior posterior_shapes(const TrialCounts& counts, const DosePriorSet& priors,
                                ComparabilityMargin margin, std::size_t samples,
                                std::uint64_t seed, unsigned workers) {
    return PriorSampleBank(priors, margin, samples, seed, workers).posterior(counts);
}

ShapeQuadrature::ShapeQuadrature(const DosePriorSet& priors, ComparabilityMargin margin,
                                 int grid_cells)
    : margin_(margin), cells_(grid_cells) {
    if (grid_cells < 2) throw DomainError("quadrature needs at least two cells per axis");
    const auto g = static_cast<std::size_t>(grid_cells);
    mid_.resize(g);
    for (std::size_t i = 0; i < g; ++i) mid_[i] = (static_cast<double>(i) + 0.5) / grid_cells;

    for (Dose d : kAllDoses) {
        const BetaParams& prior = priors[d];
        auto& out = log_mass_[index(d)];
        out.resize(g);
        double lower_cdf = 0.0;
        for (std::size_t i = 0; i < g; ++i) {
            const double upper = static_cast<double>(i + 1) / grid_cells;
            const double upper_cdf =
                i + 1 == g ? 1.0 : boost::math::ibeta(prior.a(), prior.b(), upper);
            const double mass = upper_cdf - lower_cdf;
            out[i] = mass > 0.0 ? std::log(mass) : kNegInf;
            lower_cdf = upper_cdf;
        }
    }
}

ShapePosterior ShapeQuadrature::posterior(const TrialCounts& counts) const {
    const auto g = static_cast<std::size_t>(cells_);
    const double m = margin_.value();

    // Per-axis cell weights: prior mass times likelihood at the midpoint.
    std::array<std::vector<double>, 3> w;
    for (Dose d : kAllDoses) {
        auto& wd = w[index(d)];
        wd.resize(g);
        const ArmCounts& c = counts[d];
        double top = kNegInf;
        for (std::size_t i = 0; i < g; ++i) {
            const double lm = log_mass_[index(d)][i];
            wd[i] = lm == kNegInf ? kNegInf
                                  : lm + kernel(c, std::log(mid_[i]), std::log1p(-mid_[i]));
            top = std::max(top, wd[i]);
        }
        for (double& v : wd) v = std::exp(v - top);
    }
    const auto& w_low = w[0];
    const auto& w_mid = w[1];
    const auto& w_high = w[2];

    double total_low = 0.0;
    double total_high = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        total_low += w_low[i];
        total_high += w_high[i];
    }

    // For each middle cell j the shape depends only on whether the low cell
    // lies below mid_j - m and whether the high cell lies above mid_j + m.
    // Both sets are a prefix/suffix whose boundary only moves right as j
    // grows, so the g^3 cell sum collapses to running sums.
    std::array<double, 4> mass{};
    std::size_t lo_end = 0;   // low cells [0, lo_end) rise into mid_j
    double lo_sum = 0.0;
    std::size_t hi_begin = 0; // high cells [hi_begin, g) rise out of mid_j
    double hi_below = 0.0;    // weight of high cells [0, hi_begin)
    for (std::size_t j = 0; j < g; ++j) {
        while (lo_end < g && mid_[j] - mid_[lo_end] > m) lo_sum += w_low[lo_end++];
        while (hi_begin < g && !(mid_[hi_begin] - mid_[j] > m)) hi_below += w_high[hi_begin++];
        const double hi_sum = total_high - hi_below;
        const double lo_rest = total_low - lo_sum;
        mass[index(ShapeId::S1)] += w_mid[j] * lo_rest * hi_below;
        mass[index(ShapeId::S2)] += w_mid[j] * lo_rest * hi_sum;
        mass[index(ShapeId::S3)] += w_mid[j] * lo_sum * hi_below;
        mass[index(ShapeId::S4)] += w_mid[j] * lo_sum * hi_sum;
    }
    return normalized(mass);
}

ShapePosterior posterior_shapes_quadrature(const TrialCounts& counts, const DosePriorSet& priors,
                                           ComparabilityMargin margin, int grid_cells) {
    return ShapeQuadrature(priors, margin, grid_cells).posterior(counts);
}

double pairwise_superiority(const ArmCounts& lower, const ArmCounts& higher,
                            const BetaParams& lower_prior, const BetaParams& higher_prior,
                            ComparabilityMargin margin, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw DomainError("pairwise_superiority needs at least one sample");
    const BetaParams post_low = lower_prior.updated(lower.responders(), lower.n());
    const BetaParams post_high = higher_prior.updated(higher.responders(), higher.n());
    const double m = margin.value();
    Rng rng(seed);
    std::size_t wins = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double pl = beta_variate(rng, post_low.a(), post_low.b()).p;
        const double ph = beta_variate(rng, post_high.a(), post_high.b()).p;
        if (ph - pl > m) ++wins;
    }
    return static_cast<double>(wins) / static_cast<double>(samples);
}

double pairwise_superiority_quadrature(const ArmCounts& lower, const ArmCounts& higher,
                                       const BetaParams& lower_prior,
                                       const BetaParams& higher_prior,
                                       ComparabilityMargin margin, int grid_cells) {
    if (grid_cells < 2) throw DomainError("quadrature needs at least two cells");
    const BetaParams post_low = lower_prior.updated(lower.responders(), lower.n());
    const BetaParams post_high = higher_prior.updated(higher.responders(), higher.n());
    const double m = margin.value();
    double total = 0.0;
    double lower_cdf = 0.0;
    for (int i = 0; i < grid_cells; ++i) {
        const double upper = static_cast<double>(i + 1) / grid_cells;
        const double upper_cdf =
            i + 1 == grid_cells ? 1.0 : boost::math::ibeta(post_low.a(), post_low.b(), upper);
        const double cut = (i + 0.5) / grid_cells + m;
        if (cut < 1.0) {
            total += (upper_cdf - lower_cdf) *
                     boost::math::ibetac(post_high.a(), post_high.b(), cut);
        }
        lower_cdf = upper_cdf;
    }
    return total;
}

}  // namespace ddl
