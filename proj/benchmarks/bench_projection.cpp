#include "minecast/carbon_model.hpp"
#include "minecast/projection.hpp"
#include "minecast/sensitivity.hpp"

#include <benchmark/benchmark.h>

using namespace minecast;

namespace {

ScenarioConfig reference_case()
{
    ScenarioConfig s;
    s.market.v0 = calibrate_v0(49.0, s.cost.alpha, s.cost.p_ele, s.market.beta, s.issuance);
    s.trajectory = ScenarioTrajectory::linear(0.03);
    return s;
}

void BM_SupplyTable(benchmark::State& state)
{
    const IssuanceParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(supply_table(params, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_SupplyTable)->Arg(80)->Arg(120);

void BM_Project(benchmark::State& state)
{
    auto s = reference_case();
    s.trajectory = ScenarioTrajectory::exponential(bau_annual_reduction);
    s.horizon = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(project(s));
    }
}
BENCHMARK(BM_Project)->Arg(80)->Arg(120);

void BM_AnalyticDerivatives(benchmark::State& state)
{
    const auto s = to_neutrality(reference_case());
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic_derivatives(s));
    }
}
BENCHMARK(BM_AnalyticDerivatives);

void BM_Sweep(benchmark::State& state)
{
    const auto s = reference_case();
    const std::vector<double> values{0.01, 0.02, 0.03, 0.04, 0.05};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(s, Parameter::Theta, values));
    }
}
BENCHMARK(BM_Sweep);

}

BENCHMARK_MAIN();
