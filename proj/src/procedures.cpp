#include "wcsp/procedures.hpp"

#include <tuple>

namespace wcsp {

Cost Incumbent::f2_sol() const {
    std::lock_guard<std::mutex> lock(m_);
    return f2_sol_;
}

void Incumbent::set_initial(const InitialSolution& s) {
    std::lock_guard<std::mutex> lock(m_);
    rec_ = SolutionRecord{};
    rec_.kind = SolutionRecord::Kind::initial;
    rec_.c1 = s.c1;
    rec_.c2 = s.c2;
    rec_.initial_path = s.path;
    f1_.store(s.c1, std::memory_order_release);
    f2_sol_ = kInf;
    history_.emplace_back(s.c1, s.c2);
}

bool Incumbent::try_record(const SolutionRecord& candidate) {
    std::lock_guard<std::mutex> lock(m_);
    const Cost f1 = f1_.load(std::memory_order_relaxed);
    if (std::tie(candidate.c1, candidate.c2) >= std::tie(f1, f2_sol_)) return false;
    if (rec_.kind != SolutionRecord::Kind::none &&
        std::tie(candidate.c1, candidate.c2) >= std::tie(rec_.c1, rec_.c2)) {
        return false;
    }
    rec_ = candidate;
    f1_.store(candidate.c1, std::memory_order_release);
    f2_sol_ = candidate.c2;
    history_.emplace_back(candidate.c1, candidate.c2);
    return true;
}

bool Incumbent::tighten(Cost f1) {
    std::lock_guard<std::mutex> lock(m_);
    if (f1 >= f1_.load(std::memory_order_relaxed)) return false;
    f1_.store(f1, std::memory_order_release);
    f2_sol_ = kInf;
    return true;
}

SolutionRecord Incumbent::record() const {
    std::lock_guard<std::mutex> lock(m_);
    return rec_;
}

std::vector<std::pair<Cost, Cost>> Incumbent::history() const {
    std::lock_guard<std::mutex> lock(m_);
    return history_;
}

bool early_solution_update(const NodeSnapshot& x, int p, const BoundsTables& t, Cost weight_limit,
                           Incumbent& inc) {
    const int d = index_of(x.dir);
    const StateId u = x.state;
    // The pair optimal on attribute q is (h[q], ub[other(q)]). One of the two
    // pairs can be tuned concurrently; ub is read before h so a fresh ub
    // always comes with a fresh h.
    auto join = [&](int q) {
        const Cost uo = load_entry(t.ub[d][other(q)], u);
        const Cost hq = load_entry(t.h[d][q], u);
        Cost c[2];
        c[q] = sat_add(x.g[q], hq);
        c[other(q)] = sat_add(x.g[other(q)], uo);
        return std::pair<Cost, Cost>{c[kCost1], c[kCost2]};
    };
    const auto [a1, a2] = join(p);
    const bool primary_ok = p == kCost1 ? a2 <= weight_limit : (a1 <= inc.f1_bar() && a2 <= weight_limit);
    if (primary_ok) {
        SolutionRecord r;
        r.kind = SolutionRecord::Kind::single_node;
        r.nodes[0] = x;
        r.complement_attr = p;
        r.c1 = a1;
        r.c2 = a2;
        return inc.try_record(r);
    }
    const auto [b1, b2] = join(other(p));
    if (b2 <= weight_limit && b1 < inc.f1_bar()) return inc.tighten(b1);
    return false;
}

bool is_terminal(const BoundsTables& t, Direction d, int p, StateId u) {
    const int k = index_of(d);
    const Cost hp = load_entry(t.h[k][p], u);
    return hp < kInf && hp == load_entry(t.ub[k][p], u);
}

std::size_t match_partial(const NodeSnapshot& x, const StoredList& theirs, Cost weight_limit,
                          Incumbent& inc) {
    std::size_t scanned = 0;
    for (std::size_t i = 0; i < theirs.size(); ++i) {
        const StoredPath& y = theirs[i];
        ++scanned;
        const Cost c1 = x.g[kCost1] + y.g1;
        const Cost c2 = x.g[kCost2] + y.g2;
        if (c1 > inc.f1_bar()) break;
        if (c2 > weight_limit) continue;
        SolutionRecord r;
        r.kind = SolutionRecord::Kind::node_pair;
        r.nodes[0] = x;
        r.nodes[1] = NodeSnapshot{opposite(x.dir), x.state, y.path_index, {y.g1, y.g2}};
        r.c1 = c1;
        r.c2 = c2;
        inc.try_record(r);
    }
    return scanned;
}

void store_partial(StoredList& list, const StoredPath& x, bool refinement) {
    if (refinement && !list.empty() && list.back().g1 == x.g1) list.pop_back();
    list.push_back(x);
}

}  // namespace wcsp
