#include "wcsp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace wcsp {

BoundsTables::BoundsTables(StateId n) : state_count(n), valid(n, 0) {
    for (int d = 0; d < 2; ++d) {
        for (int p = 0; p < 2; ++p) {
            h[d][p].assign(n, kInf);
            ub[d][p].assign(n, kInf);
            tree[d][p].assign(n, kNoState);
        }
    }
}

std::vector<StateId> BoundsTables::walk(Direction d, int p, StateId u, StateId target) const {
    std::vector<StateId> out;
    const auto& t = tree[index_of(d)][p];
    StateId s = u;
    while (s != kNoState) {
        out.push_back(s);
        if (s == target) return out;
        if (out.size() > state_count) break;
        s = t[s];
    }
    return {};
}

void BoundsTables::restrict_to_valid() {
    for (StateId u = 0; u < state_count; ++u) {
        if (valid[u]) continue;
        for (int d = 0; d < 2; ++d) {
            for (int p = 0; p < 2; ++p) {
                h[d][p][u] = kInf;
                ub[d][p][u] = kInf;
            }
        }
    }
}

std::size_t BoundsTables::valid_count() const {
    return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

BudgetFactors budget_factors(Cost sum_f, Cost sum_b) {
    BudgetFactors bf;
    const bool forward_smaller = sum_f <= sum_b;
    const Cost small = forward_smaller ? sum_f : sum_b;
    const Cost large = forward_smaller ? sum_b : sum_f;
    Cost num_small = 1;
    if (small == 0 && large == 0) {
        bf.den = 2;
        num_small = 1;
    } else if (small == 0) {
        bf.den = 1;
        num_small = 1;
    } else {
        // min(1, 0.5 * large / small) = min(2 * small, large) / (2 * small)
        bf.den = 2 * small;
        num_small = std::min(bf.den, large);
    }
    const Cost num_large = bf.den - num_small;
    bf.num_f = forward_smaller ? num_small : num_large;
    bf.num_b = forward_smaller ? num_large : num_small;
    return bf;
}

BudgetFactors budget_factors(const BoundsTables& t) {
    Cost sum_f = 0, sum_b = 0;
    const auto& hf = t.h[index_of(Direction::forward)][kCost1];
    const auto& hb = t.h[index_of(Direction::backward)][kCost1];
    for (StateId u = 0; u < t.state_count; ++u) {
        if (!t.valid[u] || hf[u] >= kInf || hb[u] >= kInf) continue;
        sum_f += hf[u];
        sum_b += hb[u];
    }
    return budget_factors(sum_f, sum_b);
}

namespace {

double haversine(const Coord& a, const Coord& b) {
    constexpr double kRad = 3.14159265358979323846 / 180.0;
    constexpr double kEarth = 6371000.0;
    const double dlat = (b.lat - a.lat) * kRad;
    const double dlon = (b.lon - a.lon) * kRad;
    const double s = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * std::sin(dlon / 2) *
                         std::sin(dlon / 2);
    return 2 * kEarth * std::asin(std::min(1.0, std::sqrt(s)));
}

}  // namespace

Heuristic coordinate_heuristic(const Graph& g, int attr, StateId target) {
    if (!g.has_coords()) return {};
    const auto& co = g.coords();
    double scale = -1.0;
    for (StateId u = 0; u < g.state_count(); ++u) {
        for (const Arc& a : g.successors(u, Direction::forward)) {
            const double d = haversine(co[u], co[a.to]);
            if (d <= 0.0) continue;
            const double c = attr == kCost1 ? a.c1 : a.c2;
            const double r = c / d;
            if (scale < 0.0 || r < scale) scale = r;
        }
    }
    if (scale <= 0.0) return {};
    const Coord t = co[target];
    return [co_ptr = &co, t, scale](StateId u) -> Cost {
        const double v = scale * haversine((*co_ptr)[u], t) * (1.0 - 1e-9);
        return v <= 0.0 ? 0 : static_cast<Cost>(std::floor(v));
    };
}

BoundedSearch::BoundedSearch(const Graph& g, SsspConfig cfg)
    : g_(g),
      cfg_(std::move(cfg)),
      gp_(g.state_count(), kInf),
      gs_(g.state_count(), kInf),
      pred_(g.state_count(), kNoState),
      expanded_(g.state_count(), 0) {
    const StateId s = cfg_.source;
    if (cfg_.allowed && !(*cfg_.allowed)[s]) {
        done_ = true;
        return;
    }
    const Cost hs = h(s);
    if (hs >= kInf) {
        done_ = true;
        return;
    }
    gp_[s] = 0;
    gs_[s] = 0;
    heap_.push_back({hs, 0, 0, s});
}

Cost BoundedSearch::h(StateId u) const {
    if (cfg_.heuristic_table) return (*cfg_.heuristic_table)[u];
    if (cfg_.heuristic) return cfg_.heuristic(u);
    return 0;
}

bool BoundedSearch::step() {
    if (done_) return false;
    const int p = cfg_.attr;
    while (!heap_.empty()) {
        const Label top = heap_.front();
        if (expanded_[top.u] || top.gp != gp_[top.u] || top.gs != gs_[top.u]) {
            std::pop_heap(heap_.begin(), heap_.end(), LabelGreater{});
            heap_.pop_back();
            continue;
        }
        Cost bound = cfg_.bound;
        if (cfg_.dynamic_bound) bound = std::min(bound, cfg_.dynamic_bound->load(std::memory_order_relaxed));
        if (top.f > bound) break;
        std::pop_heap(heap_.begin(), heap_.end(), LabelGreater{});
        heap_.pop_back();
        const StateId u = top.u;
        expanded_[u] = 1;
        ++expansions_;
        if (cfg_.on_settle) cfg_.on_settle(*this, u, top.gp, top.gs);
        for (const Arc& a : g_.successors(u, cfg_.travel)) {
            const StateId v = a.to;
            if (expanded_[v]) continue;
            if (cfg_.allowed && !(*cfg_.allowed)[v]) continue;
            const Cost np = top.gp + (p == kCost1 ? a.c1 : a.c2);
            const Cost ns = top.gs + (p == kCost1 ? a.c2 : a.c1);
            if (std::tie(np, ns) >= std::tie(gp_[v], gs_[v])) continue;
            const Cost hv = h(v);
            if (hv >= kInf) continue;
            gp_[v] = np;
            gs_[v] = ns;
            pred_[v] = u;
            heap_.push_back({np + hv, ns, np, v});
            std::push_heap(heap_.begin(), heap_.end(), LabelGreater{});
        }
        return true;
    }
    done_ = true;
    return false;
}

void BoundedSearch::export_to(BoundsTables& t) const {
    const int d = index_of(opposite(cfg_.travel));
    const int p = cfg_.attr;
    auto& h = t.h[d][p];
    auto& ub = t.ub[d][other(p)];
    auto& tree = t.tree[d][p];
    for (StateId u = 0; u < g_.state_count(); ++u) {
        if (expanded_[u]) {
            h[u] = gp_[u];
            ub[u] = gs_[u];
            tree[u] = pred_[u];
        } else {
            h[u] = kInf;
            ub[u] = kInf;
            tree[u] = kNoState;
        }
    }
    t.filled[d][p] = true;
}

std::vector<StateId> BoundedSearch::walk_to_source(StateId u) const {
    std::vector<StateId> out;
    for (StateId s = u; s != kNoState; s = pred_[s]) {
        out.push_back(s);
        if (out.size() > pred_.size()) return {};
    }
    return out;
}

namespace {

struct InitContext {
    const Graph& g;
    ProblemInstance inst;
    InitOptions opt;
    BoundsTables t;
    std::atomic<Cost> f1{kInf};
    std::mutex m;
    std::optional<InitialSolution> inc;
    InitStats stats;

    InitContext(const Graph& graph, const ProblemInstance& i, const InitOptions& o)
        : g(graph), inst(i), opt(o), t(graph.state_count()) {}

    Heuristic coords(int attr, StateId target) const {
        return opt.use_coordinates ? coordinate_heuristic(g, attr, target) : Heuristic{};
    }

    template <class PathFn>
    void offer(Cost c1, Cost c2, PathFn&& make_path) {
        if (c2 > inst.weight_limit) return;
        std::lock_guard<std::mutex> lock(m);
        if (inc && std::tie(c1, c2) >= std::tie(inc->c1, inc->c2)) return;
        inc = InitialSolution{c1, c2, make_path()};
        ++stats.matches_improved;
        if (c1 < f1.load(std::memory_order_relaxed)) {
            f1.store(c1, std::memory_order_relaxed);
            stats.f1_history.push_back(c1);
        }
    }

    // Joins the settled label of `s` at u with the complete opposite-side
    // trees listed in `opp` (pairs of direction and attribute).
    std::function<void(const BoundedSearch&, StateId, Cost, Cost)> joiner(
        std::vector<std::pair<Direction, int>> opp) {
        return [this, opp](const BoundedSearch& s, StateId u, Cost gp, Cost gs) {
            for (const auto& [od, q] : opp) {
                const Cost hq = t.h_at(od, q, u);
                const Cost uo = t.ub_at(od, other(q), u);
                if (hq >= kInf || uo >= kInf) continue;
                Cost c[2];
                c[s.attr()] = gp;
                c[other(s.attr())] = gs;
                c[q] += hq;
                c[other(q)] += uo;
                offer(c[kCost1], c[kCost2], [&] {
                    std::vector<StateId> own = s.walk_to_source(u);
                    std::vector<StateId> rest = t.walk(od, q, u, od == Direction::forward ? inst.goal : inst.start);
                    std::vector<StateId> path;
                    if (s.travel() == Direction::forward) {
                        path.assign(own.rbegin(), own.rend());
                        path.insert(path.end(), rest.begin() + 1, rest.end());
                    } else {
                        path.assign(rest.rbegin(), rest.rend());
                        path.insert(path.end(), own.begin() + 1, own.end());
                    }
                    return path;
                });
            }
        };
    }

    // Offers the cost2-optimal path from start once the backward cost2
    // search settles it.
    std::function<void(const BoundedSearch&, StateId, Cost, Cost)> seed_from_start() {
        return [this](const BoundedSearch& s, StateId u, Cost g2, Cost g1) {
            if (u != inst.start) return;
            offer(g1, g2, [&] { return s.walk_to_source(u); });
        };
    }

    void finish_search(const BoundedSearch& s) {
        s.export_to(t);
        stats.expansions += s.expansions();
        ++stats.searches;
    }

    SsspConfig cfg(StateId source, Direction travel, int attr) const {
        SsspConfig c;
        c.source = source;
        c.travel = travel;
        c.attr = attr;
        return c;
    }

    InitResult result(InitStatus status) {
        InitResult r;
        r.status = status;
        r.bounds.f2_bar = inst.weight_limit;
        r.bounds.f1_bar = inc ? inc->c1 : kInf;
        r.bounds.f2_sol = kInf;
        if (status == InitStatus::infeasible) {
            r.incumbent.reset();
            r.bounds.f1_bar = kInf;
        } else {
            r.incumbent = inc;
        }
        r.stats = stats;
        r.tables = std::move(t);
        return r;
    }

    // Three-way check once a cost1 shortest path toward `target_dir` is known.
    bool shortest_is_feasible(Direction d, StateId from) {
        const Cost h1 = t.h_at(d, kCost1, from);
        const Cost u2 = t.ub_at(d, kCost2, from);
        if (h1 >= kInf || u2 > inst.weight_limit) return false;
        std::vector<StateId> path = t.walk(d, kCost1, from, d == Direction::forward ? inst.goal : inst.start);
        if (d == Direction::backward) std::reverse(path.begin(), path.end());
        std::lock_guard<std::mutex> lock(m);
        inc = InitialSolution{h1, u2, std::move(path)};
        if (h1 < f1.load()) {
            f1.store(h1);
            stats.f1_history.push_back(h1);
        }
        return true;
    }

    void mark_valid(const std::vector<std::uint8_t>& expanded) {
        t.valid = expanded;
        t.restrict_to_valid();
    }
};

std::vector<std::uint8_t> intersect(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    std::vector<std::uint8_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
    return out;
}

std::vector<std::uint8_t> unite(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    std::vector<std::uint8_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
    return out;
}

// Runs two searches side by side. `stop` ends both early.
void drive_pair(BoundedSearch& a, BoundedSearch& b, const Schedule& sched, std::atomic<bool>& stop,
                const std::function<void()>& after_a, const std::function<void()>& after_b) {
    if (sched.mode == Schedule::Mode::lockstep) {
        const unsigned k = std::max(1u, sched.steps);
        bool a_reported = false, b_reported = false;
        while (!stop.load() && !(a.done() && b.done())) {
            for (unsigned i = 0; i < k && !stop.load() && !a.done(); ++i) a.step();
            if (a.done() && !a_reported) {
                a_reported = true;
                if (after_a) after_a();
            }
            for (unsigned i = 0; i < k && !stop.load() && !b.done(); ++i) b.step();
            if (b.done() && !b_reported) {
                b_reported = true;
                if (after_b) after_b();
            }
        }
        return;
    }
#pragma omp parallel sections num_threads(2)
    {
#pragma omp section
        {
            while (!stop.load(std::memory_order_relaxed) && a.step()) {
            }
            if (a.done() && after_a) after_a();
        }
#pragma omp section
        {
            while (!stop.load(std::memory_order_relaxed) && b.step()) {
            }
            if (b.done() && after_b) after_b();
        }
    }
}

}  // namespace

InitResult init_unidirectional(const Graph& g, const ProblemInstance& inst, const InitOptions& opt) {
    InitContext cx(g, inst, opt);
    const Cost W = inst.weight_limit;

    // cost2 lower bounds toward the goal; settles start with the seed bound.
    SsspConfig c1 = cx.cfg(inst.goal, Direction::backward, kCost2);
    c1.heuristic = cx.coords(kCost2, inst.start);
    c1.bound = opt.reversed_order ? kInf : W;
    c1.on_settle = cx.seed_from_start();
    BoundedSearch r1(g, c1);
    if (opt.reversed_order) {
        while (!r1.settled(inst.start) && r1.step()) {
        }
    } else {
        r1.run();
    }
    cx.finish_search(r1);
    if (!r1.settled(inst.start) || r1.g_attr()[inst.start] > W) return cx.result(InitStatus::infeasible);

    SsspConfig c2 = cx.cfg(inst.goal, Direction::backward, kCost1);
    c2.heuristic = cx.coords(kCost1, inst.start);
    c2.dynamic_bound = &cx.f1;
    if (!opt.reversed_order) c2.allowed = &r1.expanded();
    BoundedSearch r2(g, c2);
    r2.run();
    cx.finish_search(r2);
    if (cx.shortest_is_feasible(Direction::forward, inst.start)) {
        cx.mark_valid(r2.expanded());
        return cx.result(InitStatus::optimal);
    }

    if (!opt.reversed_order) {
        cx.mark_valid(r2.expanded());
        return cx.result(InitStatus::search);
    }
    SsspConfig c3 = cx.cfg(inst.goal, Direction::backward, kCost2);
    c3.heuristic = cx.coords(kCost2, inst.start);
    c3.bound = W;
    c3.allowed = &r2.expanded();
    BoundedSearch r3(g, c3);
    r3.run();
    cx.finish_search(r3);
    if (!r3.settled(inst.start)) return cx.result(InitStatus::infeasible);
    cx.mark_valid(r3.expanded());
    return cx.result(InitStatus::search);
}

InitResult init_sequential_bidirectional(const Graph& g, const ProblemInstance& inst,
                                         const InitOptions& opt) {
    InitContext cx(g, inst, opt);
    const Cost W = inst.weight_limit;
    const auto F = Direction::forward;
    const auto B = Direction::backward;

    if (!opt.reversed_order) {
        SsspConfig c1 = cx.cfg(inst.goal, B, kCost2);
        c1.heuristic = cx.coords(kCost2, inst.start);
        c1.bound = W;
        c1.on_settle = cx.seed_from_start();
        BoundedSearch r1(g, c1);
        r1.run();
        cx.finish_search(r1);
        if (!r1.settled(inst.start)) return cx.result(InitStatus::infeasible);

        SsspConfig c2 = cx.cfg(inst.start, F, kCost2);
        c2.heuristic_table = &cx.t.h[index_of(F)][kCost2];
        c2.bound = W;
        c2.allowed = &r1.expanded();
        c2.on_settle = cx.joiner({{F, kCost2}});
        BoundedSearch r2(g, c2);
        r2.run();
        cx.finish_search(r2);

        SsspConfig c3 = cx.cfg(inst.start, F, kCost1);
        c3.heuristic = cx.coords(kCost1, inst.goal);
        c3.dynamic_bound = &cx.f1;
        c3.allowed = &r2.expanded();
        c3.on_settle = cx.joiner({{F, kCost2}});
        BoundedSearch r3(g, c3);
        r3.run();
        cx.finish_search(r3);
        // Every feasible path survives the reduction, so a feasible
        // cost1-shortest path on the reduced graph is optimal.
        if (cx.shortest_is_feasible(B, inst.goal)) {
            cx.mark_valid(r3.expanded());
            return cx.result(InitStatus::optimal);
        }

        SsspConfig c4 = cx.cfg(inst.goal, B, kCost1);
        c4.heuristic_table = &cx.t.h[index_of(B)][kCost1];
        c4.dynamic_bound = &cx.f1;
        c4.allowed = &r3.expanded();
        c4.on_settle = cx.joiner({{B, kCost1}, {B, kCost2}});
        BoundedSearch r4(g, c4);
        r4.run();
        cx.finish_search(r4);
        cx.mark_valid(r4.expanded());
        return cx.result(InitStatus::search);
    }

    // Seed bound from a plain cost2 search, then cost1 searches, then the
    // bounded cost2 searches last.
    SsspConfig c1 = cx.cfg(inst.goal, B, kCost2);
    c1.heuristic = cx.coords(kCost2, inst.start);
    c1.on_settle = cx.seed_from_start();
    BoundedSearch r1(g, c1);
    while (!r1.settled(inst.start) && r1.step()) {
    }
    cx.stats.expansions += r1.expansions();
    ++cx.stats.searches;
    if (!r1.settled(inst.start) || r1.g_attr()[inst.start] > W) return cx.result(InitStatus::infeasible);

    SsspConfig c2 = cx.cfg(inst.start, F, kCost1);
    c2.heuristic = cx.coords(kCost1, inst.goal);
    c2.dynamic_bound = &cx.f1;
    BoundedSearch r2(g, c2);
    r2.run();
    cx.finish_search(r2);
    if (cx.shortest_is_feasible(B, inst.goal)) {
        cx.mark_valid(r2.expanded());
        return cx.result(InitStatus::optimal);
    }

    SsspConfig c3 = cx.cfg(inst.goal, B, kCost1);
    c3.heuristic_table = &cx.t.h[index_of(B)][kCost1];
    c3.dynamic_bound = &cx.f1;
    c3.allowed = &r2.expanded();
    c3.on_settle = cx.joiner({{B, kCost1}});
    BoundedSearch r3(g, c3);
    r3.run();
    cx.finish_search(r3);

    SsspConfig c4 = cx.cfg(inst.goal, B, kCost2);
    c4.heuristic = cx.coords(kCost2, inst.start);
    c4.bound = W;
    c4.allowed = &r3.expanded();
    c4.on_settle = cx.joiner({{B, kCost1}});
    BoundedSearch r4(g, c4);
    r4.run();
    cx.finish_search(r4);
    if (!r4.settled(inst.start)) return cx.result(InitStatus::infeasible);

    SsspConfig c5 = cx.cfg(inst.start, F, kCost2);
    c5.heuristic_table = &cx.t.h[index_of(F)][kCost2];
    c5.bound = W;
    c5.allowed = &r4.expanded();
    c5.on_settle = cx.joiner({{F, kCost1}, {F, kCost2}});
    BoundedSearch r5(g, c5);
    r5.run();
    cx.finish_search(r5);
    cx.mark_valid(r5.expanded());
    return cx.result(InitStatus::search);
}

InitResult init_parallel_bidirectional(const Graph& g, const ProblemInstance& inst,
                                       const InitOptions& opt) {
    InitContext cx(g, inst, opt);
    const Cost W = inst.weight_limit;
    const auto F = Direction::forward;
    const auto B = Direction::backward;
    std::atomic<bool> stop{false};
    std::atomic<bool> infeasible{false};
    std::atomic<bool> shortest_ok{false};

    // Round one: cost2 toward the goal and cost1 from the start.
    SsspConfig ca = cx.cfg(inst.goal, B, kCost2);
    ca.heuristic = cx.coords(kCost2, inst.start);
    ca.bound = W;
    ca.on_settle = cx.seed_from_start();
    SsspConfig cb = cx.cfg(inst.start, F, kCost1);
    cb.heuristic = cx.coords(kCost1, inst.goal);
    cb.dynamic_bound = &cx.f1;
    cb.on_settle = [&](const BoundedSearch&, StateId u, Cost, Cost g2) {
        if (u == inst.goal && g2 <= W) {
            shortest_ok.store(true);
            stop.store(true);
        }
    };
    BoundedSearch a(g, ca);
    BoundedSearch b(g, cb);
    drive_pair(a, b, opt.schedule, stop,
               [&] {
                   if (!a.settled(inst.start)) {
                       infeasible.store(true);
                       stop.store(true);
                   }
               },
               {});
    cx.stats.expansions += a.expansions() + b.expansions();
    cx.stats.searches += 2;
    if (infeasible.load()) return cx.result(InitStatus::infeasible);
    if (shortest_ok.load()) {
        b.export_to(cx.t);
        cx.shortest_is_feasible(B, inst.goal);
        std::vector<std::uint8_t> path_states(g.state_count(), 0);
        for (StateId u : cx.inc->path) path_states[u] = 1;
        cx.mark_valid(path_states);
        return cx.result(InitStatus::optimal);
    }
    a.export_to(cx.t);
    b.export_to(cx.t);

    // Round two on the states both first-round searches expanded.
    const std::vector<std::uint8_t> survivors = intersect(a.expanded(), b.expanded());
    SsspConfig cc = cx.cfg(inst.start, F, kCost2);
    cc.heuristic_table = &cx.t.h[index_of(F)][kCost2];
    cc.bound = W;
    cc.allowed = &survivors;
    cc.on_settle = cx.joiner({{F, kCost2}});
    SsspConfig cd = cx.cfg(inst.goal, B, kCost1);
    cd.heuristic_table = &cx.t.h[index_of(B)][kCost1];
    cd.dynamic_bound = &cx.f1;
    cd.allowed = &survivors;
    cd.on_settle = cx.joiner({{B, kCost1}});
    BoundedSearch c(g, cc);
    BoundedSearch d(g, cd);
    stop.store(false);
    drive_pair(c, d, opt.schedule, stop, {}, {});
    cx.finish_search(c);
    cx.finish_search(d);
    cx.mark_valid(unite(c.expanded(), d.expanded()));
    return cx.result(InitStatus::search);
}

}  // namespace wcsp
