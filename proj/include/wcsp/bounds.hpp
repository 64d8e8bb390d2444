#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <vector>

#include "wcsp/graph.hpp"
#include "wcsp/types.hpp"

namespace wcsp {

struct ProblemInstance {
    StateId start = 0;
    StateId goal = 0;
    Cost weight_limit = 0;
};

/// How two concurrent searches are driven.
struct Schedule {
    enum class Mode : std::uint8_t { real_threads, lockstep };
    Mode mode = Mode::lockstep;
    unsigned steps = 1;  // expansions per side per turn in lockstep mode

    static Schedule threads() { return {Mode::real_threads, 1}; }
    static Schedule lockstep(unsigned k = 1) { return {Mode::lockstep, k}; }
};

/**
 * Lower and upper bound tables for both directions.
 *
 * Indexing is [direction][attribute]. Direction forward means "toward the
 * goal" (computed by a backward search from the goal). For a state u the
 * p-optimal path to the target of that direction costs
 * (h[d][p][u], ub[d][other(p)][u]) and is found by following tree[d][p].
 */
struct BoundsTables {
    StateId state_count = 0;
    std::vector<Cost> h[2][2];
    std::vector<Cost> ub[2][2];
    std::vector<StateId> tree[2][2];
    bool filled[2][2] = {{false, false}, {false, false}};
    std::vector<std::uint8_t> valid;  // membership in the reduced state set

    explicit BoundsTables(StateId n = 0);

    Cost& h_at(Direction d, int p, StateId u) { return h[index_of(d)][p][u]; }
    Cost h_at(Direction d, int p, StateId u) const { return h[index_of(d)][p][u]; }
    Cost& ub_at(Direction d, int p, StateId u) { return ub[index_of(d)][p][u]; }
    Cost ub_at(Direction d, int p, StateId u) const { return ub[index_of(d)][p][u]; }

    /// States from u to the target of direction d along tree[d][p],
    /// u first. Empty if the tree does not reach the target.
    std::vector<StateId> walk(Direction d, int p, StateId u, StateId target) const;

    /// Sets every table entry of states outside `valid` to infinity.
    void restrict_to_valid();
    std::size_t valid_count() const;
};

struct GlobalBounds {
    Cost f1_bar = kInf;
    Cost f2_bar = 0;
    Cost f2_sol = kInf;
};

/// Budget factors as exact fractions over a common denominator.
struct BudgetFactors {
    Cost num_f = 1;
    Cost num_b = 1;
    Cost den = 2;

    double beta_f() const { return static_cast<double>(num_f) / static_cast<double>(den); }
    double beta_b() const { return static_cast<double>(num_b) / static_cast<double>(den); }
    Cost num(Direction d) const { return d == Direction::forward ? num_f : num_b; }

    /// value <= beta_d * limit, evaluated exactly.
    bool within(Direction d, Cost value, Cost limit) const {
        return static_cast<unsigned __int128>(value) * den <=
               static_cast<unsigned __int128>(num(d)) * limit;
    }
};

BudgetFactors budget_factors(Cost sum_f, Cost sum_b);
BudgetFactors budget_factors(const BoundsTables& t);

/// Heuristic oracle for preliminary searches: a per-state lower bound on
/// cost_p to a fixed target. Null means zero.
using Heuristic = std::function<Cost(StateId)>;

/// Great-circle lower bound on cost_p to `target`, scaled so that it never
/// exceeds any edge's cost_p. Zero when the graph has no coordinates.
Heuristic coordinate_heuristic(const Graph& g, int attr, StateId target);

struct SsspConfig {
    StateId source = 0;
    Direction travel = Direction::forward;  // which adjacency to follow
    int attr = kCost1;
    Heuristic heuristic;                    // lower bound toward the search target
    const std::vector<Cost>* heuristic_table = nullptr;  // alternative to `heuristic`
    Cost bound = kInf;
    const std::atomic<Cost>* dynamic_bound = nullptr;  // read each step when set
    const std::vector<std::uint8_t>* allowed = nullptr;
    // Called when a state is settled with its (g_attr, g_other).
    std::function<void(const class BoundedSearch&, StateId, Cost, Cost)> on_settle;
};

/**
 * Label-setting A* on one attribute with lexicographic tie-breaking on
 * the other. Can be driven one expansion at a time.
 */
class BoundedSearch {
public:
    BoundedSearch(const Graph& g, SsspConfig cfg);

    /// Settles one state. Returns false once the search is exhausted or
    /// the next state exceeds the bound.
    bool step();
    void run() { while (step()) {} }
    bool done() const { return done_; }

    const std::vector<Cost>& g_attr() const { return gp_; }
    const std::vector<Cost>& g_other() const { return gs_; }
    const std::vector<StateId>& pred() const { return pred_; }
    const std::vector<std::uint8_t>& expanded() const { return expanded_; }
    bool settled(StateId u) const { return expanded_[u] != 0; }
    std::uint64_t expansions() const { return expansions_; }

    /// Moves results into tables[d][attr] where d is the direction whose
    /// target is this search's source. Unsettled states get infinity.
    void export_to(BoundsTables& t) const;

    /// States from u back to the source along the settled tree, u first.
    std::vector<StateId> walk_to_source(StateId u) const;
    StateId source() const { return cfg_.source; }
    Direction travel() const { return cfg_.travel; }
    int attr() const { return cfg_.attr; }

private:
    struct Label {
        Cost f;
        Cost gs;
        Cost gp;
        StateId u;
    };
    struct LabelGreater {
        bool operator()(const Label& a, const Label& b) const {
            if (a.f != b.f) return a.f > b.f;
            if (a.gs != b.gs) return a.gs > b.gs;
            return a.u > b.u;
        }
    };
    Cost h(StateId u) const;

    const Graph& g_;
    SsspConfig cfg_;
    std::vector<Cost> gp_, gs_;
    std::vector<StateId> pred_;
    std::vector<std::uint8_t> expanded_;
    std::vector<Label> heap_;
    std::uint64_t expansions_ = 0;
    bool done_ = false;
};

/// Best complete path found during initialisation.
struct InitialSolution {
    Cost c1 = kInf;
    Cost c2 = kInf;
    std::vector<StateId> path;
};

enum class InitStatus : std::uint8_t { search, infeasible, optimal };

struct InitStats {
    std::uint64_t expansions = 0;
    unsigned searches = 0;
    std::uint64_t matches_improved = 0;
    std::vector<Cost> f1_history;  // every value f1_bar took, in order
};

struct InitResult {
    InitStatus status = InitStatus::infeasible;
    BoundsTables tables;
    GlobalBounds bounds;
    std::optional<InitialSolution> incumbent;
    InitStats stats;
};

struct InitOptions {
    bool use_coordinates = true;
    bool reversed_order = false;  // cost1 searches before the bounded cost2 searches
    Schedule schedule = Schedule::lockstep(1);
};

InitResult init_unidirectional(const Graph& g, const ProblemInstance& inst,
                               const InitOptions& opt = {});
InitResult init_sequential_bidirectional(const Graph& g, const ProblemInstance& inst,
                                         const InitOptions& opt = {});
InitResult init_parallel_bidirectional(const Graph& g, const ProblemInstance& inst,
                                       const InitOptions& opt = {});

}  // namespace wcsp
