#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <utility>
#include <vector>

#include "wcsp/bounds.hpp"
#include "wcsp/solvers.hpp"
#include "wcsp/types.hpp"

namespace wcsp {

// Table entries that one search may tune while the other reads them.
inline Cost load_entry(const std::vector<Cost>& v, StateId u) {
    return std::atomic_ref<Cost>(const_cast<Cost&>(v[u])).load(std::memory_order_acquire);
}
inline void store_entry(std::vector<Cost>& v, StateId u, Cost value) {
    std::atomic_ref<Cost>(v[u]).store(value, std::memory_order_release);
}

/**
 * Best known solution and the global upper bound on cost1, shared by all
 * searches of one solve. f1_bar() may be read without the lock; it only
 * ever decreases.
 */
class Incumbent {
public:
    Incumbent() = default;

    Cost f1_bar() const { return f1_.load(std::memory_order_acquire); }
    Cost f2_sol() const;

    /// Installs the initial solution: f1_bar = c1, f2_sol = infinity.
    void set_initial(const InitialSolution& s);

    /// Replaces the record when (c1, c2) is lexicographically below both
    /// (f1_bar, f2_sol) and the current record's costs.
    bool try_record(const SolutionRecord& candidate);

    /// Lowers f1_bar without a record; resets f2_sol.
    bool tighten(Cost f1);

    SolutionRecord record() const;
    std::vector<std::pair<Cost, Cost>> history() const;

private:
    mutable std::mutex m_;
    std::atomic<Cost> f1_{kInf};
    Cost f2_sol_ = kInf;
    SolutionRecord rec_;
    std::vector<std::pair<Cost, Cost>> history_;
};

/// Joins x with both precomputed complements of its state. The complement
/// optimal on the ordering's primary attribute may become the solution;
/// the other one can only tighten f1_bar. `p` is the primary attribute.
/// Returns true if the incumbent changed.
bool early_solution_update(const NodeSnapshot& x, int p, const BoundsTables& t, Cost weight_limit,
                           Incumbent& inc);

/// h^d_p(u) == ub^d_p(u): the best completion is already known.
bool is_terminal(const BoundsTables& t, Direction d, int p, StateId u);

struct StoredPath {
    Cost g1;
    Cost g2;
    std::uint32_t path_index;
};
using StoredList = std::vector<StoredPath>;

/// Joins x with the opposite direction's stored paths of the same state,
/// in stored order, stopping once cost1 exceeds f1_bar.
/// Returns the number of entries examined.
std::size_t match_partial(const NodeSnapshot& x, const StoredList& theirs, Cost weight_limit,
                          Incumbent& inc);

/// Appends x's path. With `refinement`, first drops a tail entry of equal g1.
void store_partial(StoredList& list, const StoredPath& x, bool refinement);

}  // namespace wcsp
