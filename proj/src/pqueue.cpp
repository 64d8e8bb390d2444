#include "wcsp/pqueue.hpp"

#include <algorithm>
#include <string>

namespace wcsp {

FrontierQueue::FrontierQueue(const QueueConfig& cfg) : cfg_(cfg) {
    if (cfg_.primary != kCost1 && cfg_.primary != kCost2) throw QueueError("bad primary index");
    if (cfg_.kind == QueueKind::binary_heap) return;
    if (cfg_.f_max < cfg_.f_min) throw QueueError("f_max below f_min");
    if (cfg_.delta_f < 1) throw QueueError("bucket width must be positive");
    if (cfg_.kind == QueueKind::bucket && cfg_.tie == TiePolicy::secondary) {
        throw QueueError("bucket queue cannot break ties on the secondary key");
    }
    const Cost span = (cfg_.f_max - cfg_.f_min) / cfg_.delta_f;
    if (span >= kMaxBuckets) throw QueueError("bucket range too large");
    bs_ = static_cast<std::size_t>(span) + 1;
    high_.assign(bs_, List{});
    if (cfg_.kind == QueueKind::bucket) {
        if (cfg_.delta_f > kMaxBuckets) throw QueueError("bucket width too large");
        low_.assign(static_cast<std::size_t>(cfg_.delta_f), List{});
    }
}

bool FrontierQueue::less(const HeapEntry& a, const HeapEntry& b) const {
    if (a.kp != b.kp) return a.kp < b.kp;
    if (cfg_.tie != TiePolicy::secondary) return false;
    if (a.ks != b.ks) return a.ks < b.ks;
    return a.seq < b.seq;
}

void FrontierQueue::heap_push(const HeapEntry& e) {
    std::size_t i = heap_.size();
    heap_.push_back(e);
    while (i > 0) {
        std::size_t parent = (i - 1) / 2;
        if (!less(e, heap_[parent])) break;
        heap_[i] = heap_[parent];
        ++stats_.queue_ops;
        i = parent;
    }
    heap_[i] = e;
}

FrontierQueue::HeapEntry FrontierQueue::heap_pop() {
    HeapEntry top = heap_.front();
    HeapEntry last = heap_.back();
    heap_.pop_back();
    const std::size_t n = heap_.size();
    if (n == 0) return top;
    std::size_t i = 0;
    for (;;) {
        std::size_t child = 2 * i + 1;
        if (child >= n) break;
        if (child + 1 < n && less(heap_[child + 1], heap_[child])) ++child;
        if (!less(heap_[child], last)) break;
        heap_[i] = heap_[child];
        ++stats_.queue_ops;
        i = child;
    }
    heap_[i] = last;
    return top;
}

void FrontierQueue::list_insert(List& l, SearchNode* n) {
    if (cfg_.tie == TiePolicy::none_fifo) {
        n->next = nullptr;
        if (l.tail) l.tail->next = n; else l.head = n;
        l.tail = n;
    } else {
        n->next = l.head;
        l.head = n;
        if (!l.tail) l.tail = n;
    }
}

void FrontierQueue::push(SearchNode* node) {
    const Cost kp = key(node, cfg_.primary);
    node->seq = seq_++;
    if (cfg_.kind == QueueKind::binary_heap) {
        if (stats_.pops > 0 && kp < last_popped_) throw QueueError("monotonicity violation");
        heap_push({kp, key(node, other(cfg_.primary)), node->seq, node});
    } else {
        if (kp < cfg_.f_min || kp > cfg_.f_max) throw QueueError("key outside queue range");
        const std::size_t idx = static_cast<std::size_t>((kp - cfg_.f_min) / cfg_.delta_f);
        if (idx < k_) throw QueueError("monotonicity violation");
        if (idx > k_) {
            list_insert(high_[idx], node);
        } else if (cfg_.kind == QueueKind::hybrid) {
            heap_push({kp, key(node, other(cfg_.primary)), node->seq, node});
        } else {
            const std::size_t slot =
                static_cast<std::size_t>(kp - cfg_.f_min - static_cast<Cost>(k_) * cfg_.delta_f);
            if (slot < j_) throw QueueError("monotonicity violation");
            list_insert(low_[slot], node);
        }
    }
    ++stats_.pushes;
    ++size_;
    stats_.peak_size = std::max<std::uint64_t>(stats_.peak_size, size_);
}

bool FrontierQueue::advance_bucket() {
    for (;;) {
        while (j_ < low_.size() && low_[j_].head == nullptr) {
            ++j_;
            if (j_ < low_.size()) ++stats_.queue_ops;
        }
        if (j_ < low_.size()) return true;
        if (k_ + 1 >= bs_) return false;
        ++k_;
        ++stats_.queue_ops;
        ++stats_.high_level_scans;
        List moved = high_[k_];
        high_[k_] = List{};
        for (SearchNode* n = moved.head; n != nullptr;) {
            SearchNode* nx = n->next;
            const std::size_t slot = static_cast<std::size_t>(
                key(n, cfg_.primary) - cfg_.f_min - static_cast<Cost>(k_) * cfg_.delta_f);
            List& l = low_[slot];
            n->next = nullptr;
            if (l.tail) l.tail->next = n; else l.head = n;
            l.tail = n;
            n = nx;
        }
        j_ = 0;
    }
}

bool FrontierQueue::advance_hybrid() {
    while (heap_.empty()) {
        if (k_ + 1 >= bs_) return false;
        ++k_;
        ++stats_.queue_ops;
        ++stats_.high_level_scans;
        for (SearchNode* n = high_[k_].head; n != nullptr;) {
            SearchNode* nx = n->next;
            heap_push({key(n, cfg_.primary), key(n, other(cfg_.primary)), n->seq, n});
            ++stats_.queue_ops;
            n = nx;
        }
        high_[k_] = List{};
    }
    return true;
}

SearchNode* FrontierQueue::top() {
    if (size_ == 0) return nullptr;
    if (cfg_.kind != QueueKind::binary_heap && !opened_) {
        opened_ = true;
        ++stats_.queue_ops;
        ++stats_.high_level_scans;
    }
    switch (cfg_.kind) {
        case QueueKind::binary_heap:
            return heap_.front().node;
        case QueueKind::hybrid:
            return advance_hybrid() ? heap_.front().node : nullptr;
        case QueueKind::bucket:
            return advance_bucket() ? low_[j_].head : nullptr;
    }
    return nullptr;
}

SearchNode* FrontierQueue::pop() {
    SearchNode* n = top();
    if (n == nullptr) return nullptr;
    if (cfg_.kind == QueueKind::bucket) {
        List& l = low_[j_];
        l.head = n->next;
        if (l.head == nullptr) l.tail = nullptr;
        n->next = nullptr;
    } else {
        heap_pop();
    }
    last_popped_ = key(n, cfg_.primary);
    ++stats_.pops;
    --size_;
    return n;
}

const char* to_string(QueueKind k) {
    switch (k) {
        case QueueKind::bucket: return "bucket";
        case QueueKind::hybrid: return "hybrid";
        case QueueKind::binary_heap: return "heap";
    }
    return "?";
}

const char* to_string(TiePolicy t) {
    switch (t) {
        case TiePolicy::none_lifo: return "lifo";
        case TiePolicy::none_fifo: return "fifo";
        case TiePolicy::secondary: return "secondary";
    }
    return "?";
}

}  // namespace wcsp
