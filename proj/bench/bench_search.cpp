// Serial reference vs OpenMP kernels on three workloads:
//   shutters  - incompatible quartets on 9 labels, pruning does the work
//   lp        - every 7-leaf topology goes to the rational LP (sun 3 plus a
//               universal vertex, not a leaf power)
//   compat    - quartet compatibility of an incompatible 8-label family
#include <benchmark/benchmark.h>

#include <omp.h>

#include "leafpower/grq.hpp"
#include "leafpower/leafroot.hpp"
#include "leafpower/quartets.hpp"
#include "leafpower/topology_search.hpp"

using namespace leafpower;

namespace {

TopologySearch shutters_search() {
    return TopologySearch::from_quartets(shutters_family(3, 4), {"z1", "z2"});
}

TopologySearch lp_search() {
    static const Graph sun = [] {
        Graph g = gen_sun(3);
        for (const auto& l : g.labels()) g.add_edge("u", l);
        return g;
    }();
    static const ConstraintPair constraints = graph_constraints(sun);
    TopologySearch search;
    search.labels = sun.labels();
    std::sort(search.labels.begin(), search.labels.end());
    search.accept = [](const PhyloTree& t) { return can_satisfy(t, constraints).feasible; };
    return search;
}

void BM_ShuttersSerial(benchmark::State& state) {
    const auto search = shutters_search();
    for (auto _ : state) benchmark::DoNotOptimize(search_topologies_serial(search));
}

void BM_ShuttersParallel(benchmark::State& state) {
    const auto search = shutters_search();
    for (auto _ : state) benchmark::DoNotOptimize(search_topologies_parallel(search, static_cast<int>(state.range(0))));
    state.counters["partial_trees"] = static_cast<double>(last_search_stats().partial_trees);
}

void BM_LpSerial(benchmark::State& state) {
    const auto search = lp_search();
    for (auto _ : state) benchmark::DoNotOptimize(search_topologies_serial(search));
}

void BM_LpParallel(benchmark::State& state) {
    const auto search = lp_search();
    for (auto _ : state) benchmark::DoNotOptimize(search_topologies_parallel(search, static_cast<int>(state.range(0))));
}

void BM_CompatSerial(benchmark::State& state) {
    const auto family = shutters_family(4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(is_compatible_serial(family));
}

void BM_CompatParallel(benchmark::State& state) {
    const auto family = shutters_family(4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(is_compatible(family, kDefaultTopologyCap, static_cast<int>(state.range(0))));
}

void thread_counts(benchmark::internal::Benchmark* b) {
    for (int jobs = 1; jobs < omp_get_max_threads(); jobs *= 2) b->Arg(jobs);
    b->Arg(omp_get_max_threads());
}

} // namespace

BENCHMARK(BM_ShuttersSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShuttersParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LpSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LpParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CompatSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompatParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
