#include "bbtea/assessment.hpp"
#include "bbtea/capacity.hpp"
#include "bbtea/fiber.hpp"
#include "bbtea/synthetic.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace bbtea;

namespace {

const CapacityLookup& shared_lookup() {
    static const CapacityLookup lookup = build_capacity_lookup(LookupSpec{});
    return lookup;
}

void BM_BuildLookup(benchmark::State& state) {
    LookupSpec spec;
    spec.samples_per_isd = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_capacity_lookup(spec));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.bands.size()) * 3 *
                            static_cast<std::int64_t>(spec.isd_grid_km.size()) * spec.samples_per_isd);
}
BENCHMARK(BM_BuildLookup)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FullSweep(benchmark::State& state) {
    const ModelConfig config;
    SyntheticParams params;
    params.n_areas = static_cast<int>(state.range(0));
    const Assessment assessment(generate_synthetic_country(params, config), config, UnitCosts{},
                                shared_lookup());
    const RunOptions options;
    std::vector<Scenario> scenarios;
    for (const auto& name : options.scenarios) scenarios.push_back(scenario_by_name(name));
    std::vector<Strategy> strategies;
    for (const auto& name : options.strategies) strategies.push_back(parse_strategy(name));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            assessment.sweep(scenarios, strategies, options.spectrum_scalars, 1));
    }
}
BENCHMARK(BM_FullSweep)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Preparation(benchmark::State& state) {
    const ModelConfig config;
    SyntheticParams params;
    params.n_areas = 10000;
    const Country country = generate_synthetic_country(params, config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Assessment(country, config, UnitCosts{}, shared_lookup()));
    }
}
BENCHMARK(BM_Preparation)->Unit(benchmark::kMillisecond);

void BM_DesignFiber(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    std::vector<Settlement> settlements;
    for (int i = 0; i < n; ++i) {
        Settlement s;
        s.settlement_id = "S" + std::to_string(i);
        s.region_id = "R1";
        s.population = i == 0 ? 50000.0 : 2000.0;
        s.position = Point{coord(gen), coord(gen)};
        settlements.push_back(s);
    }
    const std::vector<Polyline> core{{{settlements[0].position->x - 1, settlements[0].position->y},
                                      {settlements[0].position->x + 1, settlements[0].position->y}}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(design_fiber(settlements, core, {"R1"}, {}));
    }
}
BENCHMARK(BM_DesignFiber)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
