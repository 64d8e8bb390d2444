#include "wcsp/nodepool.hpp"

#include <algorithm>
#include <stdexcept>

namespace wcsp {

namespace {
constexpr std::uint32_t kRecycled = 1u;
}

SearchNode* NodePool::allocate() {
    SearchNode* node = nullptr;
    if (free_ != nullptr) {
        node = free_;
        free_ = node->next;
    } else {
        if (used_in_block_ == kBlockNodes) {
            blocks_.push_back(std::make_unique_for_overwrite<SearchNode[]>(kBlockNodes));
            used_in_block_ = 0;
        }
        node = &blocks_.back()[used_in_block_++];
        ++slots_created_;
    }
    node->flags = 0;
    node->next = nullptr;
    ++live_;
    peak_live_ = std::max(peak_live_, live_);
    return node;
}

void NodePool::recycle(SearchNode* node) {
    if (node->flags & kRecycled) throw std::logic_error("node recycled twice");
    node->flags |= kRecycled;
    node->next = free_;
    free_ = node;
    --live_;
}

std::uint32_t ParentArrays::record_expansion(StateId state, StateId parent_state,
                                             std::uint32_t parent_path_id) {
    if (parent_state != kNoState && parent_path_id > entries_[parent_state].size()) {
        throw std::logic_error("parent path index out of range");
    }
    entries_[state].push_back({parent_state, parent_path_id});
    return static_cast<std::uint32_t>(entries_[state].size());
}

std::vector<StateId> ParentArrays::parent_states(StateId u) const {
    std::vector<StateId> out;
    for (const Entry& e : entries_[u]) out.push_back(e.parent_state);
    return out;
}

std::vector<std::uint32_t> ParentArrays::parent_path_ids(StateId u) const {
    std::vector<std::uint32_t> out;
    for (const Entry& e : entries_[u]) out.push_back(e.parent_path_id);
    return out;
}

std::vector<StateId> ParentArrays::backtrack(StateId u, std::uint32_t path_index) const {
    std::vector<StateId> path;
    StateId s = u;
    std::uint32_t idx = path_index;
    while (s != kNoState) {
        if (idx == 0 || idx > entries_[s].size()) throw std::logic_error("dangling path index");
        path.push_back(s);
        if (path.size() > entries_.size()) throw std::logic_error("cycle in parent arrays");
        const Entry& e = entries_[s][idx - 1];
        s = e.parent_state;
        idx = e.parent_path_id;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace wcsp
