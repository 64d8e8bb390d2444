#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wcsp/graph.hpp"
#include "wcsp/types.hpp"

namespace wcsp::oracle {

inline constexpr StateId kMaxStates = 10000;

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParetoPoint {
    Cost c1;
    Cost c2;
    std::vector<StateId> path;
};

/// Strictly increasing in c1 and strictly decreasing in c2.
using ParetoSet = std::vector<ParetoPoint>;

/// Exhaustive label-correcting enumeration of the cost-unique Pareto
/// frontier of start-goal paths. Throws OracleError above kMaxStates.
ParetoSet enumerate_pareto(const Graph& g, StateId start, StateId goal);

/// Lexicographically smallest (cost1, cost2) with cost2 <= W.
std::optional<std::pair<Cost, Cost>> constrained_optimum(const ParetoSet& frontier, Cost weight_limit);
std::optional<std::pair<Cost, Cost>> constrained_optimum(const Graph& g, StateId start, StateId goal,
                                                         Cost weight_limit);

/// Cost-unique Pareto cost sets of all paths from `source` to every
/// state, or from every state to `source` with travel = backward.
std::vector<std::vector<std::pair<Cost, Cost>>> pareto_labels(const Graph& g, StateId source,
                                                              Direction travel);

/// Single-attribute distances by plain Bellman-Ford relaxation. With
/// travel = backward, distances are to `source` rather than from it.
std::vector<Cost> distances(const Graph& g, StateId source, int attr, Direction travel);

}  // namespace wcsp::oracle
