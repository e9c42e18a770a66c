#include "qgt/mixed_geometry.hpp"
#include "qgt/pure_geometry.hpp"
#include "qgt/random.hpp"

#include <benchmark/benchmark.h>

using namespace qgt;

namespace {

void BM_spectral_decompose(benchmark::State& state) {
    Rng rng(1);
    const HermitianOperator a(rng.hermitian(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_decompose(a));
    }
}
BENCHMARK(BM_spectral_decompose)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(64);

void BM_gibbs_state(benchmark::State& state) {
    Rng rng(2);
    const HermitianOperator h(rng.hermitian(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gibbs_state(h, 0.5));
    }
}
BENCHMARK(BM_gibbs_state)->Arg(2)->Arg(8)->Arg(32);

void BM_uhlmann_fidelity(benchmark::State& state) {
    Rng rng(3);
    const Eigen::Index n = state.range(0);
    const DensityMatrix a = gibbs_state(HermitianOperator(rng.hermitian(n)), 1.0);
    const DensityMatrix b = gibbs_state(HermitianOperator(rng.hermitian(n)), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann_fidelity(a, b));
    }
}
BENCHMARK(BM_uhlmann_fidelity)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_fubini_study_qgt(benchmark::State& state) {
    const ParameterizedModel model = make_random_model(7, state.range(0), 2);
    const ParamPoint r = ParamPoint::Zero(2);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    for (auto _ : state) {
        benchmark::DoNotOptimize(fubini_study_qgt(model, r, plan));
    }
}
BENCHMARK(BM_fubini_study_qgt)->Arg(2)->Arg(4)->Arg(8);

void BM_bures_metric(benchmark::State& state) {
    const ParameterizedModel model = make_random_model(8, state.range(0), 2, 0.8);
    const ParamPoint r = ParamPoint::Zero(2);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    for (auto _ : state) {
        benchmark::DoNotOptimize(bures_metric(model, r, plan));
    }
}
BENCHMARK(BM_bures_metric)->Arg(2)->Arg(4)->Arg(8);

void BM_uhlmann_connection(benchmark::State& state) {
    const ParameterizedModel model = make_random_model(9, state.range(0), 2, 0.8);
    const ParamPoint r = ParamPoint::Zero(2);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann_connection(model, r, plan));
    }
}
BENCHMARK(BM_uhlmann_connection)->Arg(2)->Arg(4)->Arg(8);

void BM_uhlmann_holonomy(benchmark::State& state) {
    const ParameterizedModel pm = make_paramagnet(1.0, 0.5);
    ParamPoint base(2);
    base << 1.0, 0.0;
    const ParamLoop loop =
        ParamLoop::coordinate_sweep(base, 1, 0.0, 2.0 * M_PI, state.range(0));
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann_holonomy(pm, loop, plan));
    }
}
BENCHMARK(BM_uhlmann_holonomy)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
