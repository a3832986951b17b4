#include "ddl/trial_sim.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "ddl/error.hpp"
#include "parallel.hpp"

namespace ddl {

namespace {

// Stream domains for derive_seed.
constexpr std::uint64_t kReplicateDomain = 1;
constexpr std::uint64_t kBankDomain = 2;
constexpr std::uint64_t kPairDomain = 3;
constexpr std::uint64_t kBlockChoiceDomain = 4;

// The three-arm rule draws each decision's prior sample from a shared pool
// several times larger than posterior_samples, so that the Monte Carlo errors
// of different count vectors are nearly independent.
constexpr std::size_t kPoolFactor = 8;
constexpr std::size_t kPoolCap = std::size_t{1} << 21;

std::size_t pool_size(std::size_t samples) {
    const std::size_t target = std::max(samples, std::min(samples * kPoolFactor, kPoolCap));
    const std::size_t block = PriorSampleBank::kBlockSize;
    return (target + block - 1) / block * block;
}

constexpr int kMaxEnumeratedArmSize = 6;

BetaParams superiority_prior(const SelectionSettings& s, Dose d) {
    return s.superiority_prior == SuperiorityPrior::Uniform ? BetaParams(1.0, 1.0) : s.priors[d];
}

void finish(PcsReport& report, double total) {
    for (std::size_t d = 0; d < 3; ++d)
        report.selected_frequency[d] = static_cast<double>(report.selected_count[d]) / total;
    report.pcs = report.frequency(report.scenario.optimal);
}

}  // namespace

std::string_view to_string(DosePair pair) {
    switch (pair) {
        case DosePair::LM: return "LM";
        case DosePair::LH: return "LH";
        case DosePair::MH: return "MH";
    }
    return "?";
}

Dose lower_dose(DosePair pair) { return pair == DosePair::MH ? Dose::M : Dose::L; }

Dose higher_dose(DosePair pair) { return pair == DosePair::LM ? Dose::M : Dose::H; }

PairDistribution::PairDistribution(double lm, double lh, double mh) : lm_(lm), lh_(lh), mh_(mh) {
    for (double p : {lm, lh, mh})
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("pair probabilities must lie in [0, 1]");
    if (std::abs(lm + lh + mh - 1.0) > 1e-9) throw DomainError("pair probabilities must sum to 1");
}

PairDistribution PairDistribution::defaults() { return {0.40, 0.20, 0.40}; }

double PairDistribution::probability(DosePair pair) const {
    switch (pair) {
        case DosePair::LM: return lm_;
        case DosePair::LH: return lh_;
        case DosePair::MH: return mh_;
    }
    return 0.0;
}

std::string_view to_string(DesignKind kind) {
    switch (kind) {
        case DesignKind::ThreeArm: return "three-arm";
        case DesignKind::TwoArmMixed: return "two-arm-mixed";
        case DesignKind::TwoArmFixed: return "two-arm-fixed";
    }
    return "?";
}

DesignSpec DesignSpec::three_arm(int n_per_arm) {
    DesignSpec d;
    d.kind = DesignKind::ThreeArm;
    d.n_per_arm = n_per_arm;
    return d;
}

DesignSpec DesignSpec::two_arm_mixed(int n_per_arm, PairDistribution distribution) {
    DesignSpec d;
    d.kind = DesignKind::TwoArmMixed;
    d.n_per_arm = n_per_arm;
    d.distribution = distribution;
    return d;
}

DesignSpec DesignSpec::two_arm_fixed(DosePair pair, int n_per_arm) {
    DesignSpec d;
    d.kind = DesignKind::TwoArmFixed;
    d.n_per_arm = n_per_arm;
    d.pair = pair;
    return d;
}

void DesignSpec::validate() const {
    if (n_per_arm < 1) throw DomainError("design needs at least one patient per arm");
}

Dose optimal_dose(const ResponseTriple& truth, ComparabilityMargin margin) {
    Dose best = Dose::L;
    for (Dose d : {Dose::M, Dose::H})
        if (truth[d] - truth[best] > margin.value()) best = d;
    return best;
}

TrueScenario TrueScenario::from_truth(const ResponseTriple& truth, ComparabilityMargin margin) {
    return {truth, optimal_dose(truth, margin)};
}

std::string_view to_string(PosteriorMethod method) {
    return method == PosteriorMethod::Quadrature ? "quadrature" : "sampling";
}

std::string_view to_string(SuperiorityPrior prior) {
    return prior == SuperiorityPrior::Uniform ? "uniform" : "dose";
}

Dose dose_for_shape(ShapeId shape) {
    switch (shape) {
        case ShapeId::S1: return Dose::L;
        case ShapeId::S2: return Dose::H;
        case ShapeId::S3: return Dose::M;
        case ShapeId::S4: return Dose::H;
    }
    return Dose::L;
}

Dose select_dose_3arm(const TrialCounts& counts, const DosePriorSet& priors,
                      ComparabilityMargin margin, std::size_t samples, std::uint64_t seed) {
    return dose_for_shape(posterior_shapes(counts, priors, margin, samples, seed).most_probable());
}

Dose select_dose_2arm(DosePair pair, const ArmCounts& lower, const ArmCounts& higher,
                      const DosePriorSet& priors, ComparabilityMargin margin, std::size_t samples,
                      std::uint64_t seed, SuperiorityPrior prior_mode) {
    const Dose lo = lower_dose(pair);
    const Dose hi = higher_dose(pair);
    const bool uniform = prior_mode == SuperiorityPrior::Uniform;
    const BetaParams lo_prior = uniform ? BetaParams(1.0, 1.0) : priors[lo];
    const BetaParams hi_prior = uniform ? BetaParams(1.0, 1.0) : priors[hi];
    const double p = pairwise_superiority(lower, higher, lo_prior, hi_prior, margin, samples, seed);
    return p > 0.5 ? hi : lo;
}

DosePair draw_pair(const PairDistribution& distribution, Rng& rng) {
    const double u = uniform_open(rng);
    double cumulative = 0.0;
    for (DosePair pair : {DosePair::LM, DosePair::LH}) {
        cumulative += distribution.probability(pair);
        if (u < cumulative) return pair;
    }
    // Guard the rounding gap when MH has zero probability.
    if (distribution.probability(DosePair::MH) == 0.0)
        return distribution.probability(DosePair::LH) > 0.0 ? DosePair::LH : DosePair::LM;
    return DosePair::MH;
}

DoseSelector::DoseSelector(SelectionSettings settings, std::uint64_t seed, unsigned workers)
    : settings_(std::move(settings)), seed_(seed) {
    if (settings_.method == PosteriorMethod::Sampling) {
        if (settings_.posterior_samples == 0) throw DomainError("posterior_samples must be positive");
        bank_ = std::make_unique<PriorSampleBank>(settings_.priors, settings_.margin,
                                                  pool_size(settings_.posterior_samples),
                                                  derive_seed(seed_, {kBankDomain}), workers);
    } else {
        quadrature_ = std::make_unique<ShapeQuadrature>(settings_.priors, settings_.margin,
                                                        settings_.shape_grid_cells);
    }
}

DoseSelector::~DoseSelector() = default;

Dose DoseSelector::compute(const TrialCounts& counts) const {
    if (!bank_) return dose_for_shape(quadrature_->posterior(counts).most_probable());

    // Partial Fisher-Yates over the pool's blocks, seeded by the counts.
    const std::size_t needed =
        (settings_.posterior_samples + PriorSampleBank::kBlockSize - 1) / PriorSampleBank::kBlockSize;
    std::vector<std::size_t> blocks(bank_->blocks());
    std::iota(blocks.begin(), blocks.end(), std::size_t{0});
    Rng rng(derive_seed(seed_, {kBlockChoiceDomain,
                                static_cast<std::uint64_t>(counts.low.responders()),
                                static_cast<std::uint64_t>(counts.low.n()),
                                static_cast<std::uint64_t>(counts.mid.responders()),
                                static_cast<std::uint64_t>(counts.mid.n()),
                                static_cast<std::uint64_t>(counts.high.responders()),
                                static_cast<std::uint64_t>(counts.high.n())}));
    for (std::size_t i = 0; i < needed && i + 1 < blocks.size(); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (blocks.size() - i));
        std::swap(blocks[i], blocks[j]);
    }
    const std::span<const std::size_t> chosen(blocks.data(), needed);
    return dose_for_shape(
        bank_->posterior(counts, chosen, settings_.posterior_samples).most_probable());
}

Dose DoseSelector::compute(DosePair pair, const ArmCounts& lower, const ArmCounts& higher) const {
    const BetaParams lo_prior = superiority_prior(settings_, lower_dose(pair));
    const BetaParams hi_prior = superiority_prior(settings_, higher_dose(pair));
    double p;
    if (settings_.method == PosteriorMethod::Sampling) {
        const std::uint64_t stream = derive_seed(
            seed_, {kPairDomain, static_cast<std::uint64_t>(pair),
                    static_cast<std::uint64_t>(lower.responders()),
                    static_cast<std::uint64_t>(lower.n()),
                    static_cast<std::uint64_t>(higher.responders()),
                    static_cast<std::uint64_t>(higher.n())});
        p = pairwise_superiority(lower, higher, lo_prior, hi_prior, settings_.margin,
                                 settings_.posterior_samples, stream);
    } else {
        p = pairwise_superiority_quadrature(lower, higher, lo_prior, hi_prior, settings_.margin,
                                            settings_.pair_grid_cells);
    }
    return p > 0.5 ? higher_dose(pair) : lower_dose(pair);
}

Dose DoseSelector::select(const TrialCounts& counts) {
    const std::array<int, 7> key = {-1,
                                    counts.low.responders(),  counts.low.n(),
                                    counts.mid.responders(),  counts.mid.n(),
                                    counts.high.responders(), counts.high.n()};
    {
        std::shared_lock lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const Dose d = compute(counts);
    std::unique_lock lock(mutex_);
    cache_.emplace(key, d);
    return d;
}

Dose DoseSelector::select(DosePair pair, const ArmCounts& lower, const ArmCounts& higher) {
    const std::array<int, 7> key = {static_cast<int>(pair), lower.responders(), lower.n(),
                                    higher.responders(),    higher.n(),         0, 0};
    {
        std::shared_lock lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const Dose d = compute(pair, lower, higher);
    std::unique_lock lock(mutex_);
    cache_.emplace(key, d);
    return d;
}

PcsReport simulate_pcs(const DesignSpec& design, const TrueScenario& scenario,
                       std::uint64_t replicates, std::uint64_t seed,
                       const SelectionSettings& settings, unsigned workers) {
    design.validate();
    if (replicates == 0) throw DomainError("simulate_pcs needs at least one replicate");

    DoseSelector selector(settings, seed, workers);
    const int n = design.n_per_arm;
    const ResponseTriple& truth = scenario.truth;

    std::vector<std::array<std::uint64_t, 3>> tallies(detail::resolve_workers(workers));
    detail::parallel_chunks(replicates, workers, [&](std::size_t r0, std::size_t r1, unsigned w) {
        auto& tally = tallies[w];
        for (std::size_t r = r0; r < r1; ++r) {
            Rng rng(derive_seed(seed, {kReplicateDomain, r}));
            Dose chosen;
            if (design.kind == DesignKind::ThreeArm) {
                const int xl = binomial_variate(rng, n, truth[Dose::L]);
                const int xm = binomial_variate(rng, n, truth[Dose::M]);
                const int xh = binomial_variate(rng, n, truth[Dose::H]);
                chosen = selector.select(TrialCounts::uniform(xl, xm, xh, n));
            } else {
                const DosePair pair = design.kind == DesignKind::TwoArmMixed
                                          ? draw_pair(design.distribution, rng)
                                          : design.pair;
                const int xlo = binomial_variate(rng, n, truth[lower_dose(pair)]);
                const int xhi = binomial_variate(rng, n, truth[higher_dose(pair)]);
                chosen = selector.select(pair, ArmCounts(xlo, n), ArmCounts(xhi, n));
            }
            ++tally[index(chosen)];
        }
    });

    PcsReport report{design, scenario, seed, replicates, {}, {}, 0.0, 0.0};
    for (const auto& t : tallies)
        for (std::size_t d = 0; d < 3; ++d) report.selected_count[d] += t[d];
    finish(report, static_cast<double>(replicates));
    report.pcs_std_error = std::sqrt(report.pcs * (1.0 - report.pcs) / static_cast<double>(replicates));
    return report;
}

PcsReport pcs_oracle_exhaustive(const DesignSpec& design, const TrueScenario& scenario,
                                const SelectionSettings& settings) {
    design.validate();
    const int n = design.n_per_arm;
    if (n > kMaxEnumeratedArmSize)
        throw DomainError("pcs_oracle_exhaustive: n_per_arm must be at most 6");

    SelectionSettings quad = settings;
    quad.method = PosteriorMethod::Quadrature;
    DoseSelector selector(quad, 0, 1);

    // pmf[d][x] = P(X = x) for X ~ Binomial(n, truth[d]).
    std::array<std::vector<double>, 3> pmf;
    for (Dose d : kAllDoses) {
        for (int x = 0; x <= n; ++x)
            pmf[index(d)].push_back(std::exp(binomial_log_likelihood(ArmCounts(x, n), scenario.truth[d])));
    }

    std::array<double, 3> prob{};
    if (design.kind == DesignKind::ThreeArm) {
        for (int xl = 0; xl <= n; ++xl)
            for (int xm = 0; xm <= n; ++xm)
                for (int xh = 0; xh <= n; ++xh) {
                    const double w = pmf[0][xl] * pmf[1][xm] * pmf[2][xh];
                    if (w == 0.0) continue;
                    prob[index(selector.select(TrialCounts::uniform(xl, xm, xh, n)))] += w;
                }
    } else {
        for (DosePair pair : kAllPairs) {
            const double pair_prob = design.kind == DesignKind::TwoArmMixed
                                         ? design.distribution.probability(pair)
                                         : (pair == design.pair ? 1.0 : 0.0);
            if (pair_prob == 0.0) continue;
            const auto& lo = pmf[index(lower_dose(pair))];
            const auto& hi = pmf[index(higher_dose(pair))];
            for (int xl = 0; xl <= n; ++xl)
                for (int xh = 0; xh <= n; ++xh) {
                    const double w = pair_prob * lo[xl] * hi[xh];
                    if (w == 0.0) continue;
                    prob[index(selector.select(pair, ArmCounts(xl, n), ArmCounts(xh, n)))] += w;
                }
        }
    }

    PcsReport report{design, scenario, 0, 0, {}, prob, 0.0, 0.0};
    report.pcs = report.frequency(scenario.optimal);
    return report;
}

}  // namespace ddl
