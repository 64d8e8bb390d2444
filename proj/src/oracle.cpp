#include "wcsp/oracle.hpp"

#include <algorithm>
#include <deque>

namespace wcsp::oracle {

namespace {

struct Label {
    Cost c1;
    Cost c2;
    StateId state;
    std::size_t parent;  // index into the label store, npos for the root
    bool alive;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

void check_size(const Graph& g) {
    if (g.state_count() > kMaxStates) throw OracleError("graph too large for exhaustive enumeration");
}

struct LabelSets {
    std::vector<Label> store;
    std::vector<std::vector<std::size_t>> at;
};

LabelSets label_correcting(const Graph& g, StateId source, Direction travel) {
    check_size(g);
    LabelSets ls;
    auto& store = ls.store;
    auto& at = ls.at;
    at.resize(g.state_count());
    std::deque<std::size_t> fifo;

    store.push_back({0, 0, source, npos, true});
    at[source].push_back(0);
    fifo.push_back(0);

    while (!fifo.empty()) {
        const std::size_t li = fifo.front();
        fifo.pop_front();
        if (!store[li].alive) continue;
        const Label cur = store[li];
        for (const Arc& a : g.successors(cur.state, travel)) {
            const Cost n1 = cur.c1 + a.c1;
            const Cost n2 = cur.c2 + a.c2;
            auto& labels = at[a.to];
            bool dominated = false;
            for (std::size_t o : labels) {
                if (store[o].c1 <= n1 && store[o].c2 <= n2) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) continue;
            std::erase_if(labels, [&](std::size_t o) {
                if (n1 <= store[o].c1 && n2 <= store[o].c2) {
                    store[o].alive = false;
                    return true;
                }
                return false;
            });
            store.push_back({n1, n2, a.to, li, true});
            labels.push_back(store.size() - 1);
            fifo.push_back(store.size() - 1);
        }
    }
    return ls;
}

}  // namespace

ParetoSet enumerate_pareto(const Graph& g, StateId start, StateId goal) {
    const LabelSets ls = label_correcting(g, start, Direction::forward);
    const auto& store = ls.store;
    const auto& at = ls.at;
    ParetoSet out;
    for (std::size_t li : at[goal]) {
        ParetoPoint pt{store[li].c1, store[li].c2, {}};
        for (std::size_t k = li; k != npos; k = store[k].parent) pt.path.push_back(store[k].state);
        std::reverse(pt.path.begin(), pt.path.end());
        out.push_back(std::move(pt));
    }
    std::sort(out.begin(), out.end(), [](const ParetoPoint& a, const ParetoPoint& b) { return a.c1 < b.c1; });
    return out;
}

std::vector<std::vector<std::pair<Cost, Cost>>> pareto_labels(const Graph& g, StateId source,
                                                              Direction travel) {
    const LabelSets ls = label_correcting(g, source, travel);
    std::vector<std::vector<std::pair<Cost, Cost>>> out(g.state_count());
    for (StateId u = 0; u < g.state_count(); ++u) {
        for (std::size_t li : ls.at[u]) out[u].emplace_back(ls.store[li].c1, ls.store[li].c2);
        std::sort(out[u].begin(), out[u].end());
    }
    return out;
}

std::optional<std::pair<Cost, Cost>> constrained_optimum(const ParetoSet& frontier, Cost weight_limit) {
    for (const ParetoPoint& p : frontier) {
        if (p.c2 <= weight_limit) return std::pair<Cost, Cost>{p.c1, p.c2};
    }
    return std::nullopt;
}

std::optional<std::pair<Cost, Cost>> constrained_optimum(const Graph& g, StateId start, StateId goal,
                                                         Cost weight_limit) {
    return constrained_optimum(enumerate_pareto(g, start, goal), weight_limit);
}

std::vector<Cost> distances(const Graph& g, StateId source, int attr, Direction travel) {
    check_size(g);
    std::vector<Cost> dist(g.state_count(), kInf);
    dist[source] = 0;
    for (StateId round = 0; round < g.state_count(); ++round) {
        bool changed = false;
        for (StateId u = 0; u < g.state_count(); ++u) {
            if (dist[u] >= kInf) continue;
            for (const Arc& a : g.successors(u, travel)) {
                const Cost nd = dist[u] + (attr == kCost1 ? a.c1 : a.c2);
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    return dist;
}

}  // namespace wcsp::oracle
