#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "wcsp/types.hpp"

namespace wcsp {

/**
 * A partial path. `next` is an intrusive link shared by the bucket lists
 * of the queues and by the pool's free list; a node is never in both.
 */
struct SearchNode {
    Cost g[2];
    Cost f[2];
    StateId state;
    StateId parent_state;        // kNoState for the initial node
    std::uint32_t parent_path_id;  // 1-based index into parent_state's arrays, 0 = none
    std::uint32_t flags;
    std::uint64_t seq;  // push order, set by the queue
    SearchNode* next;
};

/// Block-based node allocator with a LIFO free list.
class NodePool {
public:
    static constexpr std::size_t kBlockNodes = 16384;

    NodePool() = default;
    NodePool(const NodePool&) = delete;
    NodePool& operator=(const NodePool&) = delete;
    NodePool(NodePool&&) noexcept = default;
    NodePool& operator=(NodePool&&) noexcept = default;

    SearchNode* allocate();

    /// Returns a node to the free list. Recycling twice throws.
    void recycle(SearchNode* node);

    std::size_t live() const { return live_; }
    std::size_t peak_live() const { return peak_live_; }
    std::size_t slots_created() const { return slots_created_; }
    std::size_t blocks() const { return blocks_.size(); }

private:
    std::vector<std::unique_ptr<SearchNode[]>> blocks_;
    std::size_t used_in_block_ = kBlockNodes;
    SearchNode* free_ = nullptr;
    std::size_t live_ = 0;
    std::size_t peak_live_ = 0;
    std::size_t slots_created_ = 0;
};

/**
 * Per-state parent arrays for one search direction. Entry i of state u
 * describes the i-th path of u that was expanded.
 */
class ParentArrays {
public:
    struct Entry {
        StateId parent_state;          // kNoState for the initial node
        std::uint32_t parent_path_id;  // 0 for the initial node
    };

    explicit ParentArrays(StateId state_count = 0) : entries_(state_count) {}

    /// Appends an entry and returns its 1-based index.
    std::uint32_t record_expansion(StateId state, StateId parent_state, std::uint32_t parent_path_id);

    const std::vector<Entry>& entries(StateId u) const { return entries_[u]; }
    std::vector<StateId> parent_states(StateId u) const;
    std::vector<std::uint32_t> parent_path_ids(StateId u) const;

    /// States from the search origin to `u` along the recorded path.
    std::vector<StateId> backtrack(StateId u, std::uint32_t path_index) const;

    StateId state_count() const { return static_cast<StateId>(entries_.size()); }

private:
    std::vector<std::vector<Entry>> entries_;
};

}  // namespace wcsp
