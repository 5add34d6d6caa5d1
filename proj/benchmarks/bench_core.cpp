#include <benchmark/benchmark.h>

#include "ebr/galmod.hpp"
#include "ebr/piclat.hpp"
#include "ebr/suites.hpp"

using namespace ebr;

namespace {

const Triplet kWitness{12, 111, 13};

void BM_TowerBuild(benchmark::State& state) {
    const Preset p = static_cast<Preset>(state.range(0));
    // A fresh triplet each time keeps the build cache out of the timing.
    long c = 13;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tower_build(Triplet{12, 111, c}, p));
        c += 70;
    }
}
BENCHMARK(BM_TowerBuild)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CheckRelations(benchmark::State& state) {
    const PresetField k = tower_build(kWitness, Preset::K);
    for (auto _ : state) benchmark::DoNotOptimize(check_relations(k));
}
BENCHMARK(BM_CheckRelations)->Unit(benchmark::kMillisecond);

// Condition (8) reuses the cached K tower after the first iteration.
void BM_CheckAll(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(check_all(kWitness));
}
BENCHMARK(BM_CheckAll)->Unit(benchmark::kMillisecond);

void BM_LatticeQuotient(benchmark::State& state) {
    for (auto _ : state) {
        PicLattice lat;
        QuotientF2 q(lat, pullback_sublattice(lat));
        benchmark::DoNotOptimize(q.dim());
    }
}
BENCHMARK(BM_LatticeQuotient)->Unit(benchmark::kMillisecond);

void BM_InvarianceScan(benchmark::State& state) {
    const PresetField k = tower_build(kWitness, Preset::K);
    auto perms = point_perms(select_scan_rows(k, load_galois_rows()).rows);
    for (auto _ : state) benchmark::DoNotOptimize(invariance_scan(perms));
}
BENCHMARK(BM_InvarianceScan);

void BM_DeskCoverResidues(benchmark::State& state) {
    auto cases = desk_cover_cases();
    for (auto _ : state)
        for (const auto& dc : cases)
            for (const auto& l : dc.functions) benchmark::DoNotOptimize(compare_with_cores(l, dc.cover));
}
BENCHMARK(BM_DeskCoverResidues)->Unit(benchmark::kMillisecond);

void BM_Faddeev(benchmark::State& state) {
    Tower q;
    auto prof = parse_profile({"t:-1", "t^2+1:theta + 2", "t-3:5", "inf:-5"}, q);
    for (auto _ : state) benchmark::DoNotOptimize(faddeev_reconstruct(prof));
}
BENCHMARK(BM_Faddeev)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
