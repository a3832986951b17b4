#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "ddl/error.hpp"
#include "ddl/trial_sim.hpp"

namespace ddl {
namespace {

const ComparabilityMargin kMargin{};
const DosePriorSet kPriors = DosePriorSet::defaults();

SelectionSettings quadrature_settings() {
    SelectionSettings s;
    s.method = PosteriorMethod::Quadrature;
    return s;
}

TEST(DoseForShape, Mapping) {
    EXPECT_EQ(dose_for_shape(ShapeId::S1), Dose::L);
    EXPECT_EQ(dose_for_shape(ShapeId::S2), Dose::H);
    EXPECT_EQ(dose_for_shape(ShapeId::S3), Dose::M);
    EXPECT_EQ(dose_for_shape(ShapeId::S4), Dose::H);
}

TEST(OptimalDose, Rule) {
    EXPECT_EQ(optimal_dose({0.1, 0.2, 0.3}, kMargin), Dose::H);
    EXPECT_EQ(optimal_dose({0.1, 0.2, 0.2}, kMargin), Dose::M);
    EXPECT_EQ(optimal_dose({0.1, 0.2, 0.21}, kMargin), Dose::M);
    EXPECT_EQ(optimal_dose({0.2, 0.2, 0.2}, kMargin), Dose::L);
    EXPECT_EQ(optimal_dose({0.3, 0.2, 0.1}, kMargin), Dose::L);
    EXPECT_EQ(optimal_dose({0.1, 0.1, 0.3}, kMargin), Dose::H);
}

TEST(Select3Arm, Examples) {
    EXPECT_EQ(select_dose_3arm(TrialCounts::uniform(3, 6, 9, 30), kPriors, kMargin, 1'000'000, 1),
              Dose::H);
    EXPECT_EQ(select_dose_3arm(TrialCounts::uniform(3, 6, 6, 30), kPriors, kMargin, 1'000'000, 1),
              Dose::M);
    EXPECT_EQ(select_dose_3arm(TrialCounts::uniform(6, 6, 6, 30), kPriors, kMargin, 1'000'000, 1),
              Dose::M);
}

TEST(Select2Arm, Examples) {
    for (auto mode : {SuperiorityPrior::Uniform, SuperiorityPrior::DoseSpecific}) {
        EXPECT_EQ(select_dose_2arm(DosePair::LH, ArmCounts(0, 45), ArmCounts(45, 45), kPriors,
                                   kMargin, 100000, 1, mode),
                  Dose::H);
        EXPECT_EQ(select_dose_2arm(DosePair::LH, ArmCounts(4, 45), ArmCounts(13, 45), kPriors,
                                   kMargin, 100000, 1, mode),
                  Dose::H);
    }
    // Identical data and priors: superiority by more than the margin is below 1/2.
    EXPECT_EQ(select_dose_2arm(DosePair::MH, ArmCounts(9, 45), ArmCounts(9, 45), kPriors, kMargin,
                               100000, 1, SuperiorityPrior::Uniform),
              Dose::M);
}

TEST(DrawPair, Frequencies) {
    Rng rng(5);
    std::array<int, 3> hits{};
    const int draws = 1'000'000;
    for (int i = 0; i < draws; ++i) ++hits[static_cast<int>(draw_pair(PairDistribution::defaults(), rng))];
    EXPECT_NEAR(hits[0] / double(draws), 0.4, 0.003);
    EXPECT_NEAR(hits[1] / double(draws), 0.2, 0.003);
    EXPECT_NEAR(hits[2] / double(draws), 0.4, 0.003);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(draw_pair(PairDistribution(1, 0, 0), rng), DosePair::LM);
        EXPECT_EQ(draw_pair(PairDistribution(0, 0, 1), rng), DosePair::MH);
    }
}

TEST(Design, Validation) {
    EXPECT_THROW(PairDistribution(0.5, 0.5, 0.5), DomainError);
    EXPECT_THROW(PairDistribution(-0.1, 0.6, 0.5), DomainError);
    EXPECT_THROW(DesignSpec::three_arm(0).validate(), DomainError);
    const TrueScenario sc = TrueScenario::from_truth({0.1, 0.2, 0.3}, kMargin);
    EXPECT_THROW(simulate_pcs(DesignSpec::three_arm(0), sc, 100, 1), DomainError);
    EXPECT_THROW(simulate_pcs(DesignSpec::three_arm(5), sc, 0, 1), DomainError);
    EXPECT_THROW(pcs_oracle_exhaustive(DesignSpec::three_arm(7), sc), DomainError);
    EXPECT_EQ(DesignSpec::three_arm(30).total_sample_size(),
              DesignSpec::two_arm_mixed(45).total_sample_size());
}

TEST(Oracle, DegenerateTruth) {
    const TrueScenario sc{ResponseTriple(0, 0, 1), Dose::H};
    const PcsReport r = pcs_oracle_exhaustive(DesignSpec::three_arm(4), sc);
    EXPECT_NEAR(r.pcs, 1.0, 1e-12);
}

TEST(Oracle, FrequenciesSumToOne) {
    const TrueScenario sc = TrueScenario::from_truth({0.1, 0.2, 0.3}, kMargin);
    for (const DesignSpec& d : {DesignSpec::three_arm(4), DesignSpec::two_arm_mixed(5),
                                DesignSpec::two_arm_fixed(DosePair::LH, 6)}) {
        const PcsReport r = pcs_oracle_exhaustive(d, sc);
        EXPECT_NEAR(r.selected_frequency[0] + r.selected_frequency[1] + r.selected_frequency[2], 1.0,
                    1e-9);
        EXPECT_DOUBLE_EQ(r.pcs, r.frequency(sc.optimal));
    }
}

TEST(SimulatePcs, MatchesOracleSmallDesigns) {
    const TrueScenario sc = TrueScenario::from_truth({0.1, 0.2, 0.3}, kMargin);
    const SelectionSettings s = quadrature_settings();
    for (const DesignSpec& d : {DesignSpec::two_arm_mixed(5), DesignSpec::two_arm_fixed(DosePair::MH, 4),
                                DesignSpec::three_arm(3)}) {
        const PcsReport exact = pcs_oracle_exhaustive(d, sc, s);
        const PcsReport sim = simulate_pcs(d, sc, 200000, 17, s);
        EXPECT_LE(std::abs(sim.pcs - exact.pcs), 3.0 * sim.pcs_std_error + 1e-12)
            << to_string(d.kind) << " " << sim.pcs << " vs " << exact.pcs;
    }
}

TEST(SimulatePcs, ReportInvariants) {
    const TrueScenario sc = TrueScenario::from_truth({0.1, 0.2, 0.3}, kMargin);
    const PcsReport r = simulate_pcs(DesignSpec::three_arm(30), sc, 2000, 3);
    EXPECT_EQ(r.selected_count[0] + r.selected_count[1] + r.selected_count[2], 2000u);
    EXPECT_NEAR(r.selected_frequency[0] + r.selected_frequency[1] + r.selected_frequency[2], 1.0,
                1e-9);
    EXPECT_DOUBLE_EQ(r.pcs, r.frequency(Dose::H));
    EXPECT_NEAR(r.pcs_std_error, std::sqrt(r.pcs * (1 - r.pcs) / 2000), 1e-12);
}

TEST(SimulatePcs, IndependentOfWorkerCount) {
    const TrueScenario sc = TrueScenario::from_truth({0.1, 0.2, 0.3}, kMargin);
    SelectionSettings s;
    s.posterior_samples = 20000;
    for (const DesignSpec& d : {DesignSpec::three_arm(30), DesignSpec::two_arm_mixed(45)}) {
        const PcsReport a = simulate_pcs(d, sc, 3000, 99, s, 1);
        const PcsReport b = simulate_pcs(d, sc, 3000, 99, s, 3);
        EXPECT_EQ(a.selected_count, b.selected_count);
    }
}

TEST(SimulatePcs, ThreeArmDominatesMixed) {
    const TrueScenario sc = TrueScenario::from_truth({0.1, 0.2, 0.3}, kMargin);
    const SelectionSettings s = quadrature_settings();
    const double three = simulate_pcs(DesignSpec::three_arm(30), sc, 10000, 1, s).pcs;
    const double mixed = simulate_pcs(DesignSpec::two_arm_mixed(45), sc, 10000, 1, s).pcs;
    EXPECT_GE(three - mixed, 0.10) << three << " " << mixed;
}

TEST(SimulatePcs, PlateauComparable) {
    const TrueScenario sc = TrueScenario::from_truth({0.1, 0.2, 0.2}, kMargin);
    ASSERT_EQ(sc.optimal, Dose::M);
    const SelectionSettings s = quadrature_settings();
    const double three = simulate_pcs(DesignSpec::three_arm(30), sc, 10000, 2, s).pcs;
    const double mh = simulate_pcs(DesignSpec::two_arm_fixed(DosePair::MH, 45), sc, 10000, 2, s).pcs;
    EXPECT_LE(std::abs(three - mh), 0.10) << three << " " << mh;
}

TEST(SimulatePcs, PosteriorSampleConvergence) {
    const TrueScenario sc = TrueScenario::from_truth({0.1, 0.2, 0.3}, kMargin);
    SelectionSettings coarse;
    SelectionSettings fine;
    fine.posterior_samples = 1'000'000;
    const double a = simulate_pcs(DesignSpec::three_arm(30), sc, 10000, 4, coarse).pcs;
    const double b = simulate_pcs(DesignSpec::three_arm(30), sc, 10000, 4, fine).pcs;
    EXPECT_LT(std::abs(a - b), 0.01) << a << " " << b;
}

}  // namespace
}  // namespace ddl
