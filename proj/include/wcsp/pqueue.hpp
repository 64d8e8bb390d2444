#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wcsp/nodepool.hpp"
#include "wcsp/types.hpp"

namespace wcsp {

enum class QueueKind : std::uint8_t { bucket, hybrid, binary_heap };

// none_lifo / none_fifo: order by the primary key only. The bucket kind
// uses the policy for its linked lists; the heap kinds treat both as
// "no tie-breaking". secondary: order by (primary, secondary, push order),
// heap kinds only.
enum class TiePolicy : std::uint8_t { none_lifo, none_fifo, secondary };

struct QueueConfig {
    QueueKind kind = QueueKind::bucket;
    Cost f_min = 0;
    Cost f_max = 0;
    Cost delta_f = 1;
    TiePolicy tie = TiePolicy::none_lifo;
    int primary = kCost1;  // which f component is the primary key
};

struct QueueStats {
    std::uint64_t pushes = 0;
    std::uint64_t pops = 0;
    std::uint64_t queue_ops = 0;
    std::uint64_t peak_size = 0;
    std::uint64_t high_level_scans = 0;
};

class QueueError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/**
 * Monotone priority queue over pooled search nodes.
 *
 * Keys are read from the node: f[primary] and f[1 - primary]. Pushing a
 * primary key below the region already drained throws QueueError.
 */
class FrontierQueue {
public:
    static constexpr std::size_t kMaxBuckets = std::size_t{1} << 28;

    explicit FrontierQueue(const QueueConfig& cfg);

    void push(SearchNode* node);
    /// Minimum node without removing it, or nullptr when empty.
    SearchNode* top();
    SearchNode* pop();

    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }
    const QueueStats& stats() const { return stats_; }
    const QueueConfig& config() const { return cfg_; }
    /// Number of high-level buckets (0 for the binary heap).
    std::size_t bucket_count() const { return bs_; }

    static std::size_t bucket_size(Cost f_min, Cost f_max, Cost delta_f) {
        return static_cast<std::size_t>((f_max - f_min) / delta_f) + 1;
    }

private:
    struct List {
        SearchNode* head = nullptr;
        SearchNode* tail = nullptr;
    };
    struct HeapEntry {
        Cost kp;
        Cost ks;
        std::uint64_t seq;
        SearchNode* node;
    };

    bool less(const HeapEntry& a, const HeapEntry& b) const;
    void heap_push(const HeapEntry& e);
    HeapEntry heap_pop();
    void list_insert(List& l, SearchNode* n);
    bool advance_bucket();
    bool advance_hybrid();
    Cost key(const SearchNode* n, int which) const { return n->f[which]; }

    QueueConfig cfg_;
    QueueStats stats_;
    std::size_t size_ = 0;
    std::size_t bs_ = 0;
    std::uint64_t seq_ = 0;

    // bucket and hybrid
    std::vector<List> high_;
    std::size_t k_ = 0;
    bool opened_ = false;
    // bucket only
    std::vector<List> low_;
    std::size_t j_ = 0;
    // hybrid and binary heap
    std::vector<HeapEntry> heap_;
    Cost last_popped_ = 0;
};

const char* to_string(QueueKind k);
const char* to_string(TiePolicy t);

}  // namespace wcsp
