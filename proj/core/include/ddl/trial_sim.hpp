#pragma once

// Monte Carlo probability of correct selection (PCS) for dose-optimization
// designs that share one total sample size: a three-arm study (L, M, H) versus
// two-arm studies on a fixed or randomly chosen pair of doses.
//
// Three-arm selection: most probable shape a posteriori, mapped to a dose.
// Two-arm selection: the higher dose when P(p_high - p_low > margin | data)
// exceeds one half, otherwise the lower dose.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string_view>

#include "ddl/random.hpp"
#include "ddl/shape_model.hpp"

namespace ddl {

enum class DosePair { LM, LH, MH };
inline constexpr std::array<DosePair, 3> kAllPairs = {DosePair::LM, DosePair::LH, DosePair::MH};
std::string_view to_string(DosePair pair);
Dose lower_dose(DosePair pair);
Dose higher_dose(DosePair pair);

// Probability of running each pair in a two-arm study.
class PairDistribution {
   public:
    PairDistribution(double lm, double lh, double mh);

    /// LM 40%, LH 20%, MH 40%: the prior shape probabilities, with the
    /// (near-zero) flat shape folded into LM.
    static PairDistribution defaults();

    double probability(DosePair pair) const;
    bool operator==(const PairDistribution&) const = default;

   private:
    double lm_;
    double lh_;
    double mh_;
};

enum class DesignKind { ThreeArm, TwoArmMixed, TwoArmFixed };
std::string_view to_string(DesignKind kind);

struct DesignSpec {
    DesignKind kind = DesignKind::ThreeArm;
    int n_per_arm = 30;
    DosePair pair = DosePair::MH;                                  // TwoArmFixed only
    PairDistribution distribution = PairDistribution::defaults();  // TwoArmMixed only

    static DesignSpec three_arm(int n_per_arm);
    static DesignSpec two_arm_mixed(int n_per_arm,
                                    PairDistribution distribution = PairDistribution::defaults());
    static DesignSpec two_arm_fixed(DosePair pair, int n_per_arm);

    int arms() const { return kind == DesignKind::ThreeArm ? 3 : 2; }
    int total_sample_size() const { return arms() * n_per_arm; }

    /// Throws DomainError for n_per_arm < 1.
    void validate() const;
};

/// Highest true rate, where a dose only displaces a lower one when it is
/// better by more than the margin.
Dose optimal_dose(const ResponseTriple& truth, ComparabilityMargin margin);

struct TrueScenario {
    ResponseTriple truth;
    Dose optimal;

    static TrueScenario from_truth(const ResponseTriple& truth, ComparabilityMargin margin);
};

enum class PosteriorMethod { Sampling, Quadrature };
std::string_view to_string(PosteriorMethod method);

// Prior used for the conjugate update in the two-arm rule. Uniform Beta(1, 1)
// is the default; DoseSpecific reuses the three-arm dose priors.
enum class SuperiorityPrior { DoseSpecific, Uniform };
std::string_view to_string(SuperiorityPrior prior);

struct SelectionSettings {
    DosePriorSet priors = DosePriorSet::defaults();
    ComparabilityMargin margin{};
    std::size_t posterior_samples = 100'000;
    PosteriorMethod method = PosteriorMethod::Sampling;
    SuperiorityPrior superiority_prior = SuperiorityPrior::Uniform;
    int shape_grid_cells = 200;
    int pair_grid_cells = 4000;
};

/// S1 -> L, S2 -> H, S3 -> M, S4 -> H: the better dose, or the lower one
/// when responses are comparable.
Dose dose_for_shape(ShapeId shape);

Dose select_dose_3arm(const TrialCounts& counts, const DosePriorSet& priors,
                      ComparabilityMargin margin, std::size_t samples, std::uint64_t seed);

Dose select_dose_2arm(DosePair pair, const ArmCounts& lower, const ArmCounts& higher,
                      const DosePriorSet& priors, ComparabilityMargin margin, std::size_t samples,
                      std::uint64_t seed,
                      SuperiorityPrior prior_mode = SuperiorityPrior::Uniform);

DosePair draw_pair(const PairDistribution& distribution, Rng& rng);

// Applies the selection rules with results memoized per observed count
// vector. Each decision is a pure function of (settings, seed, counts): the
// three-arm rule weights posterior_samples prior draws taken from a shared
// pool of blocks chosen by the counts, and the two-arm rule draws from a
// stream derived from the counts. Safe for concurrent use.
class DoseSelector {
   public:
    DoseSelector(SelectionSettings settings, std::uint64_t seed, unsigned workers = 0);
    ~DoseSelector();
    DoseSelector(const DoseSelector&) = delete;
    DoseSelector& operator=(const DoseSelector&) = delete;

    const SelectionSettings& settings() const { return settings_; }

    Dose select(const TrialCounts& counts);
    Dose select(DosePair pair, const ArmCounts& lower, const ArmCounts& higher);

   private:
    Dose compute(const TrialCounts& counts) const;
    Dose compute(DosePair pair, const ArmCounts& lower, const ArmCounts& higher) const;

    SelectionSettings settings_;
    std::uint64_t seed_;
    std::unique_ptr<PriorSampleBank> bank_;
    std::unique_ptr<ShapeQuadrature> quadrature_;

    std::shared_mutex mutex_;
    std::map<std::array<int, 7>, Dose> cache_;
};

struct PcsReport {
    DesignSpec design;
    TrueScenario scenario;
    std::uint64_t seed = 0;
    std::uint64_t replicates = 0;  // 0 for exact enumeration
    std::array<std::uint64_t, 3> selected_count{};
    std::array<double, 3> selected_frequency{};
    double pcs = 0.0;
    double pcs_std_error = 0.0;

    double frequency(Dose d) const { return selected_frequency[index(d)]; }
};

/// Replicate r draws its arm outcomes (and, for mixed designs, its pair) from
/// Rng(derive_seed(seed, {replicate domain, r})), so the report is identical
/// for every worker count.
PcsReport simulate_pcs(const DesignSpec& design, const TrueScenario& scenario,
                       std::uint64_t replicates, std::uint64_t seed,
                       const SelectionSettings& settings = {}, unsigned workers = 0);

/// Exact PCS by enumerating every outcome vector for n_per_arm <= 6, using the
/// quadrature posterior. Throws DomainError for larger designs.
PcsReport pcs_oracle_exhaustive(const DesignSpec& design, const TrueScenario& scenario,
                                const SelectionSettings& settings = {});

}  // namespace ddl
