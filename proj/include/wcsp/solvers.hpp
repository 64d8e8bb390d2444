#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcsp/bounds.hpp"
#include "wcsp/graph.hpp"
#include "wcsp/nodepool.hpp"
#include "wcsp/pqueue.hpp"
#include "wcsp/types.hpp"

namespace wcsp {

enum class Algorithm : std::uint8_t { wc_astar, wc_bastar, wc_ebba, wc_ebba_par };

const char* to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);

enum class SolveStatus : std::uint8_t { optimal, infeasible, timeout };

const char* to_string(SolveStatus s);

/// Frozen reference to an expanded path: enough to rebuild it from the
/// parent arrays of its direction.
struct NodeSnapshot {
    Direction dir = Direction::forward;
    StateId state = kNoState;
    std::uint32_t path_index = 0;
    Cost g[2] = {0, 0};
};

struct SolutionRecord {
    enum class Kind : std::uint8_t { none, single_node, node_pair, initial };
    Kind kind = Kind::none;
    std::array<NodeSnapshot, 2> nodes{};
    // Attribute of the precomputed complement joined to a single node.
    int complement_attr = kCost1;
    Cost c1 = kInf;
    Cost c2 = kInf;
    std::vector<StateId> initial_path;  // only for Kind::initial
};

struct QueueSettings {
    QueueKind kind = QueueKind::bucket;
    TiePolicy tie = TiePolicy::none_lifo;
    Cost delta_f = 1;
};

struct SolveOptions {
    Schedule schedule = Schedule::lockstep(1);
    bool htf = true;                 // heuristic tuning in the two-ordering search
    bool store_refinement = true;    // only applied without secondary tie-breaking
    bool use_coordinates = true;
    bool reversed_init = false;
    std::optional<double> timeout_seconds;
    std::optional<std::uint64_t> expansion_limit;
    bool trace = false;              // keep per-direction expansion events
    bool keep_parent_arrays = false;
    bool keep_tables = false;        // keep bound tables after the search (tuned values included)
};

struct ExpansionEvent {
    StateId state;
    Cost g1;
    Cost g2;
    Cost f_primary;
    std::uint32_t path_index;
};

struct SideMetrics {
    std::uint64_t settled = 0;       // nodes that passed the dominance check
    std::uint64_t expansions = 0;    // ExP calls
    std::uint64_t generations = 0;   // nodes pushed
    std::uint64_t pruned_dominance = 0;
    std::uint64_t pruned_state_ub = 0;
    std::uint64_t pruned_global = 0;
    std::uint64_t stale_requeues = 0;
    std::uint64_t terminal_skips = 0;
    std::uint64_t budget_rejections = 0;
    std::uint64_t coupling_violations = 0;
    std::uint64_t matches = 0;       // Match calls
    std::uint64_t stored = 0;
    std::uint64_t key_order_violations = 0;
    QueueStats queue;
    std::size_t peak_pool_blocks = 0;
};

struct SolveMetrics {
    std::array<SideMetrics, 2> side{};
    InitStats init;
    std::size_t reduced_states = 0;
    BudgetFactors budget;
    std::uint64_t wall_us = 0;

    std::uint64_t expansions() const { return side[0].expansions + side[1].expansions; }
    std::uint64_t settled() const { return side[0].settled + side[1].settled; }
    std::uint64_t generations() const { return side[0].generations + side[1].generations; }
    std::uint64_t pruned_dominance() const { return side[0].pruned_dominance + side[1].pruned_dominance; }
    std::uint64_t pruned_state_ub() const { return side[0].pruned_state_ub + side[1].pruned_state_ub; }
    std::uint64_t pruned_global() const { return side[0].pruned_global + side[1].pruned_global; }
    std::uint64_t queue_ops() const { return side[0].queue.queue_ops + side[1].queue.queue_ops; }
    std::size_t peak_pool_blocks() const { return side[0].peak_pool_blocks + side[1].peak_pool_blocks; }
    std::uint64_t coupling_violations() const {
        return side[0].coupling_violations + side[1].coupling_violations;
    }
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::infeasible;
    std::optional<std::pair<Cost, Cost>> costs;
    std::vector<StateId> path;
    SolutionRecord record;
    SolveMetrics metrics;
    std::vector<std::pair<Cost, Cost>> incumbent_history;  // every recorded solution, in order
    std::array<std::vector<ExpansionEvent>, 2> trace;
    std::array<std::optional<ParentArrays>, 2> parents;
    std::optional<BoundsTables> tables;
};

SolveOutcome solve_wc_astar(const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                            const SolveOptions& opt = {});
SolveOutcome solve_wc_bastar(const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                             const SolveOptions& opt = {});
SolveOutcome solve_wc_ebba(const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                           const SolveOptions& opt = {});
SolveOutcome solve_wc_ebba_par(const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                               const SolveOptions& opt = {});

SolveOutcome solve(Algorithm a, const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                   const SolveOptions& opt = {});

/// Sum of (cost1, cost2) along consecutive edges of `path`.
std::optional<std::pair<Cost, Cost>> path_cost(const Graph& g, const std::vector<StateId>& path);

}  // namespace wcsp
