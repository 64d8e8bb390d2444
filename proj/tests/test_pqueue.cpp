#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <random>

#include "wcsp/pqueue.hpp"

using namespace wcsp;

namespace {

// Owns the nodes pushed into a queue under test.
struct Nodes {
    std::deque<SearchNode> store;
    SearchNode* make(Cost kp, Cost ks, StateId tag = 0) {
        SearchNode n{};
        n.f[0] = kp;
        n.f[1] = ks;
        n.state = tag;
        store.push_back(n);
        return &store.back();
    }
};

QueueConfig cfg(QueueKind k, Cost lo, Cost hi, Cost df = 1, TiePolicy t = TiePolicy::none_lifo) {
    QueueConfig c;
    c.kind = k;
    c.f_min = lo;
    c.f_max = hi;
    c.delta_f = df;
    c.tie = t;
    return c;
}

}  // namespace

TEST(Queue, BucketCountFollowsRange) {
    EXPECT_EQ(FrontierQueue(cfg(QueueKind::bucket, 3, 7)).bucket_count(), 5u);
    EXPECT_EQ(FrontierQueue(cfg(QueueKind::hybrid, 0, 99, 10)).bucket_count(), 10u);
    EXPECT_EQ(FrontierQueue(cfg(QueueKind::bucket, 5, 5)).bucket_count(), 1u);
    EXPECT_EQ(FrontierQueue::bucket_size(0, 99, 10), 10u);
    EXPECT_EQ(FrontierQueue(cfg(QueueKind::binary_heap, 0, 0)).bucket_count(), 0u);
}

TEST(Queue, RejectsBucketWithSecondaryTies) {
    EXPECT_THROW(FrontierQueue(cfg(QueueKind::bucket, 0, 10, 1, TiePolicy::secondary)), QueueError);
    EXPECT_NO_THROW(FrontierQueue(cfg(QueueKind::hybrid, 0, 10, 1, TiePolicy::secondary)));
    EXPECT_THROW(FrontierQueue(cfg(QueueKind::bucket, 5, 4)), QueueError);
    EXPECT_THROW(FrontierQueue(cfg(QueueKind::hybrid, 0, 10, 0)), QueueError);
}

TEST(Queue, SingleElement) {
    Nodes nodes;
    FrontierQueue q(cfg(QueueKind::bucket, 0, 10));
    q.push(nodes.make(4, 0));
    EXPECT_EQ(q.pop()->f[0], 4u);
    EXPECT_EQ(q.pop(), nullptr);
    EXPECT_TRUE(q.empty());
}

TEST(Queue, BucketLifoAndFifo) {
    Nodes nodes;
    FrontierQueue lifo(cfg(QueueKind::bucket, 0, 10));
    lifo.push(nodes.make(4, 0, 1));
    lifo.push(nodes.make(4, 0, 2));
    EXPECT_EQ(lifo.pop()->state, 2u);
    EXPECT_EQ(lifo.pop()->state, 1u);

    FrontierQueue fifo(cfg(QueueKind::bucket, 0, 10, 1, TiePolicy::none_fifo));
    fifo.push(nodes.make(4, 0, 1));
    fifo.push(nodes.make(4, 0, 2));
    EXPECT_EQ(fifo.pop()->state, 1u);
    EXPECT_EQ(fifo.pop()->state, 2u);
}

TEST(Queue, SecondaryTieBreak) {
    for (QueueKind k : {QueueKind::hybrid, QueueKind::binary_heap}) {
        Nodes nodes;
        FrontierQueue q(cfg(k, 0, 10, 1, TiePolicy::secondary));
        q.push(nodes.make(4, 9, 1));
        q.push(nodes.make(4, 2, 2));
        EXPECT_EQ(q.pop()->state, 2u);
        EXPECT_EQ(q.pop()->state, 1u);
    }
}

TEST(Queue, MinOrdering) {
    for (QueueKind k : {QueueKind::bucket, QueueKind::hybrid, QueueKind::binary_heap}) {
        Nodes nodes;
        FrontierQueue q(cfg(k, 0, 10));
        for (Cost key : {7, 3, 5}) q.push(nodes.make(key, 0));
        EXPECT_EQ(q.pop()->f[0], 3u);
        EXPECT_EQ(q.pop()->f[0], 5u);
        EXPECT_EQ(q.pop()->f[0], 7u);
        EXPECT_EQ(q.pop(), nullptr);
    }
}

TEST(Queue, ScanCountsEveryBucketChecked) {
    Nodes nodes;
    FrontierQueue q(cfg(QueueKind::bucket, 0, 100));
    q.push(nodes.make(0, 0));
    q.pop();
    q.push(nodes.make(100, 0));
    q.pop();
    EXPECT_EQ(q.stats().queue_ops, 101u);
    EXPECT_EQ(q.stats().high_level_scans, 101u);
}

TEST(Queue, StatsCounters) {
    Nodes nodes;
    FrontierQueue q(cfg(QueueKind::hybrid, 0, 50, 5));
    EXPECT_EQ(q.stats().pushes, 0u);
    EXPECT_EQ(q.stats().pops, 0u);
    EXPECT_EQ(q.stats().queue_ops, 0u);
    for (Cost k = 0; k < 20; ++k) q.push(nodes.make(k * 2, 0));
    EXPECT_EQ(q.stats().pushes, 20u);
    EXPECT_EQ(q.stats().peak_size, 20u);
    while (q.pop()) {}
    EXPECT_EQ(q.stats().pops, 20u);
}

TEST(Queue, RejectsMonotonicityViolation) {
    for (QueueKind k : {QueueKind::bucket, QueueKind::hybrid, QueueKind::binary_heap}) {
        Nodes nodes;
        FrontierQueue q(cfg(k, 0, 20));
        q.push(nodes.make(10, 0));
        q.pop();
        EXPECT_THROW(q.push(nodes.make(3, 0)), QueueError) << to_string(k);
    }
    Nodes nodes;
    FrontierQueue q(cfg(QueueKind::bucket, 5, 20));
    EXPECT_THROW(q.push(nodes.make(21, 0)), QueueError);
    EXPECT_THROW(q.push(nodes.make(4, 0)), QueueError);
}

// Random monotone workloads: non-decreasing output, same multiset out as in.
TEST(Queue, RandomMonotoneWorkload) {
    const std::vector<std::pair<QueueKind, TiePolicy>> kinds = {
        {QueueKind::bucket, TiePolicy::none_lifo},     {QueueKind::bucket, TiePolicy::none_fifo},
        {QueueKind::hybrid, TiePolicy::none_lifo},     {QueueKind::hybrid, TiePolicy::secondary},
        {QueueKind::binary_heap, TiePolicy::none_lifo}, {QueueKind::binary_heap, TiePolicy::secondary}};
    for (const auto& [kind, tie] : kinds) {
        for (Cost df : {Cost{1}, Cost{3}}) {
            std::mt19937_64 rng(17);
            Nodes nodes;
            FrontierQueue q(cfg(kind, 0, 5000, df, tie));
            std::multiset<std::pair<Cost, Cost>> in, out;
            Cost last = 0;
            for (int i = 0; i < 20000; ++i) {
                if (q.empty() || rng() % 3 != 0) {
                    const Cost k = last + rng() % 20;
                    if (k > 5000) continue;
                    q.push(nodes.make(k, rng() % 10));
                    in.insert({k, nodes.store.back().f[1]});
                } else {
                    SearchNode* n = q.pop();
                    ASSERT_GE(n->f[0], last);
                    last = n->f[0];
                    out.insert({n->f[0], n->f[1]});
                }
            }
            while (SearchNode* n = q.pop()) {
                ASSERT_GE(n->f[0], last);
                last = n->f[0];
                out.insert({n->f[0], n->f[1]});
            }
            EXPECT_EQ(in, out);
            EXPECT_LE(q.stats().high_level_scans, q.bucket_count());
        }
    }
}

TEST(Queue, HybridAndHeapAgreeWithSecondaryTies) {
    std::mt19937_64 rng(5);
    Nodes na, nb;
    FrontierQueue a(cfg(QueueKind::hybrid, 0, 3000, 4, TiePolicy::secondary));
    FrontierQueue b(cfg(QueueKind::binary_heap, 0, 3000, 4, TiePolicy::secondary));
    Cost last = 0;
    for (int i = 0; i < 20000; ++i) {
        if (a.empty() || rng() % 3 != 0) {
            const Cost k = last + rng() % 6;
            const Cost s = rng() % 5;
            a.push(na.make(k, s, static_cast<StateId>(i)));
            b.push(nb.make(k, s, static_cast<StateId>(i)));
        } else {
            SearchNode* x = a.pop();
            SearchNode* y = b.pop();
            ASSERT_EQ(x->state, y->state);
            last = x->f[0];
        }
    }
}

TEST(Queue, SecondaryKeyCanBeCost2) {
    Nodes nodes;
    QueueConfig c = cfg(QueueKind::binary_heap, 0, 0, 1, TiePolicy::secondary);
    c.primary = kCost2;
    FrontierQueue q(c);
    q.push(nodes.make(1, 5, 1));
    q.push(nodes.make(0, 5, 2));
    q.push(nodes.make(9, 2, 3));
    EXPECT_EQ(q.pop()->state, 3u);
    EXPECT_EQ(q.pop()->state, 2u);
    EXPECT_EQ(q.pop()->state, 1u);
}
