#include <gtest/gtest.h>

#include <map>
#include <set>

#include "test_util.hpp"
#include "wcsp/cli.hpp"
#include "wcsp/oracle.hpp"
#include "wcsp/solvers.hpp"

using namespace wcsp;
using namespace wcsp::testing_util;

namespace {

const Algorithm kAll[] = {Algorithm::wc_astar, Algorithm::wc_bastar, Algorithm::wc_ebba, Algorithm::wc_ebba_par};

QueueSettings bucket() { return {}; }
QueueSettings heap_tie() { return {QueueKind::binary_heap, TiePolicy::secondary, 1}; }

struct Case {
    Graph g;
    ProblemInstance inst;
};

std::vector<Case> small_suite(unsigned graphs, StateId states) {
    cli::OracleCheckConfig c;
    c.seed = 21;
    c.graphs = graphs;
    c.max_states = states;
    std::vector<Case> out;
    for (const cli::SuiteCase& sc : cli::random_suite(c)) {
        for (Cost w : sc.weights) out.push_back({sc.graph, {sc.start, sc.goal, w}});
    }
    return out;
}

}  // namespace

TEST(Solver, AStarTraceOnSmallGraph) {
    const Graph g = small_graph();
    SolveOptions o;
    o.trace = true;
    o.keep_parent_arrays = true;
    const SolveOutcome r = solve_wc_astar(g, {kStart, kGoal, 6}, bucket(), o);
    ASSERT_EQ(r.status, SolveStatus::optimal);
    EXPECT_EQ(*r.costs, (std::pair<Cost, Cost>{5, 5}));
    EXPECT_EQ(r.path, (std::vector<StateId>{kStart, kU2, kGoal}));
    const SideMetrics& m = r.metrics.side[0];
    EXPECT_EQ(m.expansions, 1u);
    EXPECT_EQ(m.pruned_global, 1u);
    EXPECT_EQ(m.generations, 2u);
    EXPECT_EQ(m.queue.pops, 3u);
    EXPECT_EQ(m.terminal_skips, 1u);
    ASSERT_EQ(r.trace[0].size(), 2u);
    EXPECT_EQ(r.trace[0][0].state, kStart);
    EXPECT_EQ(r.trace[0][1].state, kU2);
    EXPECT_EQ(r.trace[0][1].g1, 3u);
    EXPECT_EQ(r.trace[0][1].g2, 4u);
    EXPECT_EQ(r.record.kind, SolutionRecord::Kind::single_node);
    EXPECT_EQ(r.incumbent_history, (std::vector<std::pair<Cost, Cost>>{{7, 3}, {5, 5}}));
    const ParentArrays& pa = *r.parents[0];
    EXPECT_EQ(pa.parent_states(kStart), (std::vector<StateId>{kNoState}));
    EXPECT_EQ(pa.parent_path_ids(kStart), (std::vector<std::uint32_t>{0}));
    EXPECT_EQ(pa.parent_states(kU2), (std::vector<StateId>{kStart}));
    EXPECT_EQ(pa.parent_path_ids(kU2), (std::vector<std::uint32_t>{1}));
    for (StateId u : {kU1, kU3, kGoal}) EXPECT_TRUE(pa.parent_states(u).empty());
}

TEST(Solver, AllSolversOnSmallGraph) {
    const Graph g = small_graph();
    for (Algorithm a : kAll) {
        for (const QueueSettings& q : cli::all_queue_settings()) {
            const SolveOutcome r = solve(a, g, {kStart, kGoal, 6}, q);
            ASSERT_EQ(r.status, SolveStatus::optimal) << to_string(a);
            EXPECT_EQ(*r.costs, (std::pair<Cost, Cost>{5, 5})) << to_string(a);
            EXPECT_EQ(r.path, (std::vector<StateId>{kStart, kU2, kGoal}));
            EXPECT_EQ(solve(a, g, {kStart, kGoal, 2}, q).status, SolveStatus::infeasible);
        }
    }
}

TEST(Solver, HeuristicTuningFromFirstForwardExpansion) {
    const Graph g = small_graph();
    SolveOptions o;
    o.trace = true;
    o.keep_tables = true;
    const SolveOutcome r = solve_wc_bastar(g, {kStart, kGoal, 6}, bucket(), o);
    ASSERT_EQ(r.status, SolveStatus::optimal);
    EXPECT_EQ(*r.costs, (std::pair<Cost, Cost>{5, 5}));
    const auto& fw = r.trace[0];
    const auto first = std::find_if(fw.begin(), fw.end(), [](const ExpansionEvent& e) { return e.state == kU2; });
    ASSERT_NE(first, fw.end());
    EXPECT_EQ(first->g1, 3u);
    EXPECT_EQ(first->g2, 4u);
    ASSERT_TRUE(r.tables);
    EXPECT_EQ(r.tables->h_at(Direction::backward, kCost1, kU2), 3u);
    EXPECT_EQ(r.tables->ub_at(Direction::backward, kCost2, kU2), 4u);
}

TEST(Solver, ExpansionLimitZeroReturnsInitialIncumbent) {
    SolveOptions o;
    o.expansion_limit = 0;
    std::map<Algorithm, int> checked;
    for (const Case& c : small_suite(30, 30)) {
        for (Algorithm a : kAll) {
            const SolveOutcome full = solve(a, c.g, c.inst, bucket());
            if (full.metrics.settled() == 0) continue;  // settled during initialisation
            const SolveOutcome r = solve(a, c.g, c.inst, bucket(), o);
            EXPECT_EQ(r.status, SolveStatus::timeout) << to_string(a);
            ASSERT_TRUE(r.costs);
            EXPECT_EQ(r.record.kind, SolutionRecord::Kind::initial);
            EXPECT_GE(*r.costs, *full.costs);
            EXPECT_LE(r.costs->second, c.inst.weight_limit);
            EXPECT_EQ(path_cost(c.g, r.path), r.costs);
            EXPECT_EQ(r.metrics.expansions(), 0u);
            ++checked[a];
        }
    }
    for (Algorithm a : kAll) EXPECT_GT(checked[a], 0) << to_string(a);
}

TEST(Solver, RejectsBadInput) {
    const Graph g = small_graph();
    EXPECT_THROW(solve_wc_astar(g, {0, 9, 6}, bucket()), std::invalid_argument);
    EXPECT_THROW(solve_wc_astar(g, {0, 4, 6}, {QueueKind::bucket, TiePolicy::secondary, 1}), QueueError);
}

TEST(Solver, StartEqualsGoal) {
    const Graph g = small_graph();
    for (Algorithm a : kAll) {
        const SolveOutcome r = solve(a, g, {kU2, kU2, 0}, bucket());
        ASSERT_EQ(r.status, SolveStatus::optimal);
        EXPECT_EQ(*r.costs, (std::pair<Cost, Cost>{0, 0}));
        EXPECT_EQ(r.path, (std::vector<StateId>{kU2}));
    }
}

TEST(Solver, UnreachableGoalIsInfeasible) {
    const Graph g = small_graph();
    for (Algorithm a : kAll) EXPECT_EQ(solve(a, g, {kGoal, kStart, 100}, bucket()).status, SolveStatus::infeasible);
}

TEST(Solver, AgreesWithOracleOnRandomGraphs) {
    for (const Case& c : small_suite(40, 20)) {
        const auto want = oracle::constrained_optimum(c.g, c.inst.start, c.inst.goal, c.inst.weight_limit);
        for (Algorithm a : kAll) {
            for (const QueueSettings& q : cli::all_queue_settings()) {
                const SolveOutcome r = solve(a, c.g, c.inst, q);
                ASSERT_EQ(r.costs, want) << to_string(a) << ' ' << to_string(q.kind) << ' ' << to_string(q.tie);
                if (r.costs) EXPECT_EQ(path_cost(c.g, r.path), r.costs);
            }
        }
    }
}

// Per-state expansions under secondary ties never include a weakly
// dominated path, and the primary key never decreases.
// Grids with conflicting costs keep the main searches busy: the
// initialisation rarely settles them, so joins and matches are exercised.
TEST(Solver, AgreesWithOracleOnTradeoffGrids) {
    std::map<Algorithm, int> improved;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const Graph g = tradeoff_grid(8, seed);
        const StateId s = 0, t = g.state_count() - 1;
        const auto front = oracle::enumerate_pareto(g, s, t);
        ASSERT_FALSE(front.empty());
        for (double delta : {0.0, 0.2, 0.5, 0.8}) {
            const Cost w = cli::weight_from_delta(front.back().c2, front.front().c2, delta);
            const auto expect = oracle::constrained_optimum(front, w);
            for (Algorithm a : kAll) {
                for (const QueueSettings& q : cli::all_queue_settings()) {
                    for (Schedule sch : {Schedule::lockstep(1), Schedule::lockstep(3), Schedule::threads()}) {
                        SolveOptions o;
                        o.schedule = sch;
                        const SolveOutcome r = solve(a, g, {s, t, w}, q, o);
                        ASSERT_EQ(r.costs, expect) << to_string(a) << " seed " << seed << " W " << w;
                        EXPECT_EQ(path_cost(g, r.path), r.costs);
                        EXPECT_EQ(r.metrics.coupling_violations(), 0u);
                        if (r.record.kind == SolutionRecord::Kind::single_node ||
                            r.record.kind == SolutionRecord::Kind::node_pair)
                            ++improved[a];
                    }
                }
            }
        }
    }
    for (Algorithm a : kAll) EXPECT_GT(improved[a], 0) << to_string(a);
}

TEST(Solver, NoDominatedExpansionWithTies) {
    SolveOptions o;
    o.trace = true;
    for (const Case& c : small_suite(30, 25)) {
        for (Algorithm a : kAll) {
            const SolveOutcome r = solve(a, c.g, c.inst, heap_tie(), o);
            for (int k = 0; k < 2; ++k) {
                const int p = (a == Algorithm::wc_bastar && k == 1) ? kCost2 : kCost1;
                std::map<StateId, std::pair<Cost, Cost>> last;
                for (const ExpansionEvent& e : r.trace[k]) {
                    const Cost gp = p == kCost1 ? e.g1 : e.g2;
                    const Cost gs = p == kCost1 ? e.g2 : e.g1;
                    auto it = last.find(e.state);
                    if (it != last.end()) {
                        EXPECT_GT(gp, it->second.first);
                        EXPECT_LT(gs, it->second.second);
                    }
                    last[e.state] = {gp, gs};
                }
                EXPECT_EQ(r.metrics.side[k].key_order_violations, 0u);
            }
        }
    }
}

// Every expanded path recorded in the parent arrays is simple.
TEST(Solver, ExpandedPathsAreSimple) {
    SolveOptions o;
    o.keep_parent_arrays = true;
    for (const Case& c : small_suite(20, 20)) {
        for (Algorithm a : kAll) {
            const SolveOutcome r = solve(a, c.g, c.inst, bucket(), o);
            for (int k = 0; k < 2; ++k) {
                if (!r.parents[k]) continue;
                const ParentArrays& pa = *r.parents[k];
                for (StateId u = 0; u < pa.state_count(); ++u) {
                    for (std::uint32_t i = 1; i <= pa.entries(u).size(); ++i) {
                        const auto path = pa.backtrack(u, i);
                        const std::set<StateId> uniq(path.begin(), path.end());
                        EXPECT_EQ(uniq.size(), path.size());
                    }
                }
            }
            if (r.costs) {
                const std::set<StateId> uniq(r.path.begin(), r.path.end());
                EXPECT_EQ(uniq.size(), r.path.size());
            }
        }
    }
}

TEST(Solver, IncumbentHistoryStrictlyDecreases) {
    for (const Case& c : small_suite(30, 25)) {
        const auto pareto = oracle::enumerate_pareto(c.g, c.inst.start, c.inst.goal);
        for (Algorithm a : kAll) {
            const SolveOutcome r = solve(a, c.g, c.inst, heap_tie());
            const auto& h = r.incumbent_history;
            for (std::size_t i = 1; i < h.size(); ++i) EXPECT_LT(h[i], h[i - 1]);
            for (const auto& [c1, c2] : h) EXPECT_LE(c2, c.inst.weight_limit);
            if (a != Algorithm::wc_bastar || h.empty()) continue;
            // The last incumbent is the optimum and so on the frontier.
            const bool on_frontier = std::any_of(pareto.begin(), pareto.end(), [&](const oracle::ParetoPoint& p) {
                return p.c1 == h.back().first && p.c2 == h.back().second;
            });
            EXPECT_TRUE(on_frontier);
        }
    }
}

TEST(Solver, LockstepIsReproducible) {
    SolveOptions o;
    o.trace = true;
    for (const Case& c : small_suite(15, 30)) {
        for (Algorithm a : {Algorithm::wc_bastar, Algorithm::wc_ebba_par}) {
            const SolveOutcome x = solve(a, c.g, c.inst, bucket(), o);
            const SolveOutcome y = solve(a, c.g, c.inst, bucket(), o);
            EXPECT_EQ(x.costs, y.costs);
            EXPECT_EQ(x.path, y.path);
            EXPECT_EQ(x.metrics.expansions(), y.metrics.expansions());
            for (int k = 0; k < 2; ++k) {
                ASSERT_EQ(x.trace[k].size(), y.trace[k].size());
                for (std::size_t i = 0; i < x.trace[k].size(); ++i) {
                    EXPECT_EQ(x.trace[k][i].state, y.trace[k][i].state);
                    EXPECT_EQ(x.trace[k][i].g1, y.trace[k][i].g1);
                    EXPECT_EQ(x.trace[k][i].g2, y.trace[k][i].g2);
                }
            }
        }
    }
}

TEST(Solver, ThreadsMatchLockstep) {
    SolveOptions th;
    th.schedule = Schedule::threads();
    for (const Case& c : small_suite(15, 30)) {
        for (Algorithm a : {Algorithm::wc_bastar, Algorithm::wc_ebba_par}) {
            EXPECT_EQ(solve(a, c.g, c.inst, bucket()).costs, solve(a, c.g, c.inst, bucket(), th).costs);
        }
    }
}

TEST(Solver, TuningDoesNotChangeResult) {
    SolveOptions off;
    off.htf = false;
    for (const Case& c : small_suite(30, 25)) {
        for (const QueueSettings& q : cli::all_queue_settings()) {
            EXPECT_EQ(solve_wc_bastar(c.g, c.inst, q).costs, solve_wc_bastar(c.g, c.inst, q, off).costs);
        }
    }
}

TEST(Solver, CouplingConditionHolds) {
    for (const Case& c : small_suite(30, 25)) {
        for (Algorithm a : {Algorithm::wc_ebba, Algorithm::wc_ebba_par}) {
            const SolveOutcome r = solve(a, c.g, c.inst, bucket());
            EXPECT_EQ(r.metrics.coupling_violations(), 0u);
            const BudgetFactors& b = r.metrics.budget;
            EXPECT_EQ(b.num_f + b.num_b, b.den);
        }
    }
}

TEST(Solver, ParseNames) {
    for (Algorithm a : kAll) EXPECT_EQ(parse_algorithm(to_string(a)), a);
    EXPECT_FALSE(parse_algorithm("dijkstra"));
    EXPECT_STREQ(to_string(SolveStatus::timeout), "timeout");
}
