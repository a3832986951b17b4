#include <benchmark/benchmark.h>

#include "ddl/shape_model.hpp"
#include "ddl/stat_core.hpp"
#include "ddl/trial_sim.hpp"

namespace {

using namespace ddl;

void BM_NormalQuantile(benchmark::State& state) {
    double p = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_quantile(p));
        p += 1e-6;
        if (p >= 0.999) p = 0.001;
    }
}
BENCHMARK(BM_NormalQuantile);

void BM_PriorBank(benchmark::State& state) {
    for (auto _ : state) {
        PriorSampleBank bank(DosePriorSet::defaults(), ComparabilityMargin{},
                             static_cast<std::size_t>(state.range(0)), 1, 1);
        benchmark::DoNotOptimize(bank.size());
    }
}
BENCHMARK(BM_PriorBank)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_BankPosterior(benchmark::State& state) {
    const PriorSampleBank bank(DosePriorSet::defaults(), ComparabilityMargin{},
                               static_cast<std::size_t>(state.range(0)), 1, 1);
    const TrialCounts counts = TrialCounts::uniform(3, 6, 9, 30);
    for (auto _ : state) benchmark::DoNotOptimize(bank.posterior(counts));
}
BENCHMARK(BM_BankPosterior)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_Quadrature(benchmark::State& state) {
    const ShapeQuadrature quad(DosePriorSet::defaults(), ComparabilityMargin{},
                               static_cast<int>(state.range(0)));
    const TrialCounts counts = TrialCounts::uniform(6, 6, 6, 30);
    for (auto _ : state) benchmark::DoNotOptimize(quad.posterior(counts));
}
BENCHMARK(BM_Quadrature)->Arg(200)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_PairwiseSuperiority(benchmark::State& state) {
    const DosePriorSet priors = DosePriorSet::defaults();
    for (auto _ : state)
        benchmark::DoNotOptimize(pairwise_superiority(ArmCounts(6, 45), ArmCounts(9, 45), priors.mid,
                                                      priors.high, ComparabilityMargin{}, 100'000, 1));
}
BENCHMARK(BM_PairwiseSuperiority)->Unit(benchmark::kMillisecond);

void BM_SimulateThreeArm(benchmark::State& state) {
    const TrueScenario sc = TrueScenario::from_truth({0.1, 0.2, 0.3}, ComparabilityMargin{});
    SelectionSettings settings;
    settings.posterior_samples = 20'000;
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_pcs(DesignSpec::three_arm(30), sc, 1000, 1, settings, 1));
}
BENCHMARK(BM_SimulateThreeArm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
