// Lockstep (single-thread reference) against real threads for the
// two-search solvers and the parallel initialisation.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "wcsp/bounds.hpp"
#include "wcsp/cli.hpp"
#include "wcsp/graph.hpp"
#include "wcsp/solvers.hpp"

using namespace wcsp;

namespace {

// Grid with arcs both ways; cost2 falls as cost1 rises.
Graph tradeoff_grid(int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    auto add = [&](StateId a, StateId b) {
        const auto c1 = static_cast<std::uint32_t>(1 + rng() % 100);
        const auto c2 = static_cast<std::uint32_t>(101 - c1 + rng() % 10);
        edges.push_back({a, b, c1, c2});
    };
    auto id = [k](int r, int c) { return static_cast<StateId>(r * k + c); };
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            if (c + 1 < k) {
                add(id(r, c), id(r, c + 1));
                add(id(r, c + 1), id(r, c));
            }
            if (r + 1 < k) {
                add(id(r, c), id(r + 1, c));
                add(id(r + 1, c), id(r, c));
            }
        }
    }
    return Graph::from_edges(static_cast<StateId>(k * k), std::move(edges));
}

struct Fixture {
    Graph g;
    ProblemInstance inst;
};

const Fixture& fixture(int k) {
    static std::vector<std::pair<int, Fixture>> cache;
    for (const auto& [size, f] : cache) {
        if (size == k) return f;
    }
    Graph g = tradeoff_grid(k, 42);
    const StateId s = 0, t = g.state_count() - 1;
    const auto pb = cli::pair_bounds(g, s, t);
    const Cost w = cli::weight_from_delta(pb->h2, pb->ub2, 0.5);
    cache.push_back({k, Fixture{std::move(g), {s, t, w}}});
    return cache.back().second;
}

Schedule schedule_of(int threaded) { return threaded ? Schedule::threads() : Schedule::lockstep(1); }

void solver_bench(benchmark::State& state, Algorithm a) {
    const Fixture& f = fixture(static_cast<int>(state.range(0)));
    SolveOptions o;
    o.schedule = schedule_of(static_cast<int>(state.range(1)));
    std::uint64_t expansions = 0;
    for (auto _ : state) {
        const SolveOutcome r = solve(a, f.g, f.inst, {}, o);
        expansions = r.metrics.expansions();
        benchmark::DoNotOptimize(r.costs);
    }
    state.counters["expansions"] = static_cast<double>(expansions);
}

void BM_WcBaStar(benchmark::State& state) { solver_bench(state, Algorithm::wc_bastar); }
void BM_WcEbbaPar(benchmark::State& state) { solver_bench(state, Algorithm::wc_ebba_par); }
void BM_WcEbba(benchmark::State& state) { solver_bench(state, Algorithm::wc_ebba); }
void BM_WcAStar(benchmark::State& state) { solver_bench(state, Algorithm::wc_astar); }

void BM_ParallelInit(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<int>(state.range(0)));
    InitOptions o;
    o.schedule = schedule_of(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        const InitResult r = init_parallel_bidirectional(f.g, f.inst, o);
        benchmark::DoNotOptimize(r.bounds.f1_bar);
    }
}

// Args: grid side, threaded (0 = lockstep reference, 1 = two threads).
void grid_args(benchmark::internal::Benchmark* b) {
    for (int k : {40, 60}) {
        for (int threaded : {0, 1}) b->Args({k, threaded});
    }
    b->ArgNames({"side", "threads"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_WcBaStar)->Apply(grid_args);
BENCHMARK(BM_WcEbbaPar)->Apply(grid_args);
BENCHMARK(BM_ParallelInit)->Apply(grid_args);
BENCHMARK(BM_WcEbba)->Args({40, 0})->Args({60, 0})->ArgNames({"side", "threads"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WcAStar)->Args({40, 0})->Args({60, 0})->ArgNames({"side", "threads"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
