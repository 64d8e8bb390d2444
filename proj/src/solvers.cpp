#include "wcsp/solvers.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "wcsp/procedures.hpp"

namespace wcsp {

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::wc_astar: return "wc-astar";
        case Algorithm::wc_bastar: return "wc-bastar";
        case Algorithm::wc_ebba: return "wc-ebba";
        case Algorithm::wc_ebba_par: return "wc-ebba-par";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
    for (Algorithm a : {Algorithm::wc_astar, Algorithm::wc_bastar, Algorithm::wc_ebba, Algorithm::wc_ebba_par}) {
        if (name == to_string(a)) return a;
    }
    return std::nullopt;
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::timeout: return "timeout";
    }
    return "?";
}

std::optional<std::pair<Cost, Cost>> path_cost(const Graph& g, const std::vector<StateId>& path) {
    Cost c1 = 0, c2 = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const auto arc = g.find_edge(path[i - 1], path[i]);
        if (!arc) return std::nullopt;
        c1 += arc->c1;
        c2 += arc->c2;
    }
    return std::pair<Cost, Cost>{c1, c2};
}

namespace {

using Clock = std::chrono::steady_clock;

enum class Mode : std::uint8_t { astar, bastar, ebba, ebba_par };

struct Side {
    Direction d;
    int p;
    int s;
    FrontierQueue open;
    NodePool pool;
    std::vector<Cost> g_min;
    ParentArrays parents;
    SideMetrics m;
    std::vector<ExpansionEvent> trace;
    Cost last_key = 0;
    bool any_key = false;
    std::uint64_t steps = 0;

    Side(Direction dir, int primary, const QueueConfig& qc, StateId n)
        : d(dir), p(primary), s(other(primary)), open(qc), g_min(n, kInf), parents(n) {}
};

class Engine {
public:
    Engine(const Graph& g, const ProblemInstance& inst, const QueueSettings& q, const SolveOptions& opt,
           Mode mode, InitResult&& init)
        : g_(g),
          inst_(inst),
          q_(q),
          opt_(opt),
          mode_(mode),
          tables_(std::move(init.tables)),
          W_(inst.weight_limit) {
        if (init.incumbent) inc_.set_initial(*init.incumbent);
        if (opt_.timeout_seconds) {
            deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(*opt_.timeout_seconds));
        }
        refine_ = opt_.store_refinement && q_.tie != TiePolicy::secondary;
        if (mode_ == Mode::ebba || mode_ == Mode::ebba_par) {
            budget_ = budget_factors(tables_);
            for (auto& c : chi_) c.resize(g.state_count());
        }
    }

    void run() {
        switch (mode_) {
            case Mode::astar: {
                Side& f = add_side(Direction::forward, kCost1);
                while (step(f)) {
                }
                break;
            }
            case Mode::bastar: {
                Side& f = add_side(Direction::forward, kCost1);
                Side& b = add_side(Direction::backward, kCost2);
                run_first_done(f, b);
                break;
            }
            case Mode::ebba: {
                add_side(Direction::forward, kCost1);
                add_side(Direction::backward, kCost1);
                while (step_global()) {
                }
                break;
            }
            case Mode::ebba_par: {
                Side& f = add_side(Direction::forward, kCost1);
                Side& b = add_side(Direction::backward, kCost1);
                run_both(f, b);
                break;
            }
        }
    }

    void finish(SolveOutcome& out) {
        out.record = inc_.record();
        out.incumbent_history = inc_.history();
        for (auto& sp : sides_) {
            if (!sp) continue;
            Side& sd = *sp;
            sd.m.queue = sd.open.stats();
            sd.m.peak_pool_blocks = sd.pool.blocks();
            out.metrics.side[index_of(sd.d)] = sd.m;
        }
        out.metrics.budget = budget_;
        if (out.record.kind != SolutionRecord::Kind::none) {
            out.costs = std::pair<Cost, Cost>{out.record.c1, out.record.c2};
            out.path = reconstruct(out.record);
            const auto pc = path_cost(g_, out.path);
            if (!pc || *pc != *out.costs || out.path.front() != inst_.start || out.path.back() != inst_.goal) {
                throw std::logic_error("reconstructed path does not match the recorded costs");
            }
        }
        if (timed_out_.load()) {
            out.status = SolveStatus::timeout;
        } else {
            out.status = out.costs ? SolveStatus::optimal : SolveStatus::infeasible;
        }
        for (auto& sp : sides_) {
            if (!sp) continue;
            const int k = index_of(sp->d);
            if (opt_.trace) out.trace[k] = std::move(sp->trace);
            if (opt_.keep_parent_arrays) out.parents[k] = std::move(sp->parents);
        }
        if (opt_.keep_tables) out.tables = std::move(tables_);
    }

private:
    Side& add_side(Direction d, int p) {
        const StateId origin = d == Direction::forward ? inst_.start : inst_.goal;
        const int k = index_of(d);
        Cost f[2];
        for (int a = 0; a < 2; ++a) f[a] = sat_add(0, load_entry(tables_.h[k][a], origin));
        const Cost f_max = std::max(bar(p), f[p] < kInf ? f[p] : Cost{0});
        QueueConfig qc;
        qc.kind = q_.kind;
        qc.tie = q_.tie;
        qc.delta_f = q_.delta_f;
        qc.primary = p;
        qc.f_min = std::min(f[p], f_max);
        qc.f_max = f_max;
        sides_[k] = std::make_unique<Side>(d, p, qc, g_.state_count());
        Side& sd = *sides_[k];
        if (f[kCost1] <= inc_.f1_bar() && f[kCost2] <= W_) {
            SearchNode* x = sd.pool.allocate();
            x->g[0] = x->g[1] = 0;
            x->f[0] = f[0];
            x->f[1] = f[1];
            x->state = origin;
            x->parent_state = kNoState;
            x->parent_path_id = 0;
            sd.open.push(x);
        }
        return sd;
    }

    Cost bar(int attr) const { return attr == kCost1 ? inc_.f1_bar() : W_; }

    bool interrupted(Side& sd) {
        if (stop_.load(std::memory_order_relaxed) || timed_out_.load(std::memory_order_relaxed)) return true;
        if (opt_.expansion_limit && expansions_.load(std::memory_order_relaxed) >= *opt_.expansion_limit) {
            timed_out_.store(true);
            return true;
        }
        if (deadline_ && (++sd.steps & 4095u) == 0 && Clock::now() > *deadline_) {
            timed_out_.store(true);
            return true;
        }
        return false;
    }

    // One pop on this side. Returns false once the side has terminated.
    bool step(Side& sd) {
        if (interrupted(sd)) return false;
        SearchNode* x = sd.open.pop();
        if (x == nullptr) return false;
        return process(sd, x);
    }

    // Sequential bidirectional loop: the smaller of the two queue heads.
    bool step_global() {
        Side& f = *sides_[0];
        Side& b = *sides_[1];
        if (interrupted(f)) return false;
        SearchNode* a = f.open.top();
        SearchNode* c = b.open.top();
        if (a == nullptr && c == nullptr) return false;
        Side* sd = &f;
        if (a == nullptr) {
            sd = &b;
        } else if (c != nullptr) {
            const bool fwd = q_.tie == TiePolicy::secondary
                                 ? std::tie(a->f[0], a->f[1]) <= std::tie(c->f[0], c->f[1])
                                 : a->f[0] <= c->f[0];
            if (!fwd) sd = &b;
        }
        return process(*sd, sd->open.pop());
    }

    void run_first_done(Side& f, Side& b) {
        if (opt_.schedule.mode == Schedule::Mode::lockstep) {
            const unsigned k = std::max(1u, opt_.schedule.steps);
            bool fin = false;
            while (!fin) {
                for (unsigned i = 0; i < k && !fin; ++i) fin = !step(f);
                for (unsigned i = 0; i < k && !fin; ++i) fin = !step(b);
            }
            return;
        }
#pragma omp parallel sections num_threads(2)
        {
#pragma omp section
            {
                while (step(f)) {
                }
                stop_.store(true);
            }
#pragma omp section
            {
                while (step(b)) {
                }
                stop_.store(true);
            }
        }
    }

    void run_both(Side& f, Side& b) {
        if (opt_.schedule.mode == Schedule::Mode::lockstep) {
            const unsigned k = std::max(1u, opt_.schedule.steps);
            bool fd = false, bd = false;
            while (!(fd && bd)) {
                for (unsigned i = 0; i < k && !fd; ++i) fd = !step(f);
                for (unsigned i = 0; i < k && !bd; ++i) bd = !step(b);
            }
            return;
        }
#pragma omp parallel sections num_threads(2)
        {
#pragma omp section
            {
                while (step(f)) {
                }
            }
#pragma omp section
            {
                while (step(b)) {
                }
            }
        }
    }

    bool process(Side& sd, SearchNode* x) {
        const StateId u = x->state;
        const int p = sd.p;
        const int s = sd.s;
        const int k = index_of(sd.d);
        if (x->f[p] > bar(p)) {
            sd.pool.recycle(x);
            return false;
        }
        // The secondary heuristic may have been tuned since x was queued.
        const Cost fs = sat_add(x->g[s], load_entry(tables_.h[k][s], u));
        if (fs > bar(s)) {
            ++sd.m.pruned_global;
            sd.pool.recycle(x);
            return true;
        }
        if (fs != x->f[s]) {
            x->f[s] = fs;
            if (q_.tie == TiePolicy::secondary) {
                ++sd.m.stale_requeues;
                sd.open.push(x);
                return true;
            }
        }
        if (x->g[s] >= sd.g_min[u]) {
            ++sd.m.pruned_dominance;
            sd.pool.recycle(x);
            return true;
        }
        if (mode_ == Mode::bastar && opt_.htf && sd.g_min[u] == kInf) {
            const int o = index_of(opposite(sd.d));
            store_entry(tables_.h[o][p], u, x->g[p]);
            store_entry(tables_.ub[o][s], u, x->g[s]);
        }
        sd.g_min[u] = x->g[s];
        ++sd.m.settled;
        if (sd.any_key && x->f[p] < sd.last_key) ++sd.m.key_order_violations;
        sd.last_key = x->f[p];
        sd.any_key = true;
        const std::uint32_t idx = sd.parents.record_expansion(u, x->parent_state, x->parent_path_id);
        if (opt_.trace) sd.trace.push_back({u, x->g[0], x->g[1], x->f[p], idx});
        const NodeSnapshot snap{sd.d, u, idx, {x->g[0], x->g[1]}};

        early_solution_update(snap, p, tables_, W_, inc_);
        if (is_terminal(tables_, sd.d, p, u)) {
            ++sd.m.terminal_skips;
            sd.pool.recycle(x);
            return true;
        }
        if (mode_ == Mode::ebba || mode_ == Mode::ebba_par) {
            const Direction od = opposite(sd.d);
            const Cost h2 = load_entry(tables_.h[k][kCost2], u);
            if (budget_.within(sd.d, x->g[kCost2], W_)) {
                expand(sd, x, idx);
            } else {
                ++sd.m.budget_rejections;
                if (!budget_.within(od, h2, W_)) ++sd.m.coupling_violations;
            }
            std::unique_lock<std::mutex> lock;
            if (mode_ == Mode::ebba_par) lock = std::unique_lock<std::mutex>(stripes_[u % stripes_.size()]);
            auto& mine = chi_[k][u];
            auto& theirs = chi_[index_of(od)][u];
            if (budget_.within(od, h2, W_) || !theirs.empty()) {
                match_partial(snap, theirs, W_, inc_);
                ++sd.m.matches;
                store_partial(mine, StoredPath{x->g[0], x->g[1], idx}, refine_);
                ++sd.m.stored;
            }
        } else {
            expand(sd, x, idx);
        }
        sd.pool.recycle(x);
        return true;
    }

    void expand(Side& sd, const SearchNode* x, std::uint32_t idx) {
        ++sd.m.expansions;
        expansions_.fetch_add(1, std::memory_order_relaxed);
        const int k = index_of(sd.d);
        const int o = index_of(opposite(sd.d));
        const bool bidir = mode_ != Mode::astar;
        const Cost f1_bar = inc_.f1_bar();
        for (const Arc& a : g_.successors(x->state, sd.d)) {
            const StateId v = a.to;
            Cost gy[2] = {x->g[0] + a.c1, x->g[1] + a.c2};
            if (gy[sd.s] >= sd.g_min[v]) {
                ++sd.m.pruned_dominance;
                continue;
            }
            if (bidir && (gy[0] > load_entry(tables_.ub[o][0], v) || gy[1] > load_entry(tables_.ub[o][1], v))) {
                ++sd.m.pruned_state_ub;
                continue;
            }
            const Cost f1 = sat_add(gy[0], load_entry(tables_.h[k][0], v));
            const Cost f2 = sat_add(gy[1], load_entry(tables_.h[k][1], v));
            if (f1 > f1_bar || f2 > W_) {
                ++sd.m.pruned_global;
                continue;
            }
            SearchNode* y = sd.pool.allocate();
            y->g[0] = gy[0];
            y->g[1] = gy[1];
            y->f[0] = f1;
            y->f[1] = f2;
            y->state = v;
            y->parent_state = x->state;
            y->parent_path_id = idx;
            sd.open.push(y);
            ++sd.m.generations;
        }
    }

    std::vector<StateId> backtrack(const NodeSnapshot& n) const {
        return sides_[index_of(n.dir)]->parents.backtrack(n.state, n.path_index);
    }

    std::vector<StateId> reconstruct(const SolutionRecord& r) const {
        using Kind = SolutionRecord::Kind;
        std::vector<StateId> path;
        if (r.kind == Kind::initial) return r.initial_path;
        if (r.kind == Kind::single_node) {
            const NodeSnapshot& x = r.nodes[0];
            std::vector<StateId> own = backtrack(x);
            const StateId target = x.dir == Direction::forward ? inst_.goal : inst_.start;
            std::vector<StateId> rest = tables_.walk(x.dir, r.complement_attr, x.state, target);
            if (rest.empty()) throw std::logic_error("complement path missing");
            if (x.dir == Direction::forward) {
                path = std::move(own);
                path.insert(path.end(), rest.begin() + 1, rest.end());
            } else {
                path.assign(rest.rbegin(), rest.rend());
                path.insert(path.end(), own.rbegin() + 1, own.rend());
            }
            return path;
        }
        if (r.kind == Kind::node_pair) {
            const NodeSnapshot& fw = r.nodes[0].dir == Direction::forward ? r.nodes[0] : r.nodes[1];
            const NodeSnapshot& bw = r.nodes[0].dir == Direction::forward ? r.nodes[1] : r.nodes[0];
            path = backtrack(fw);
            std::vector<StateId> back = backtrack(bw);
            path.insert(path.end(), back.rbegin() + 1, back.rend());
        }
        return path;
    }

    const Graph& g_;
    ProblemInstance inst_;
    QueueSettings q_;
    SolveOptions opt_;
    Mode mode_;
    BoundsTables tables_;
    Cost W_;
    Incumbent inc_;
    BudgetFactors budget_;
    bool refine_ = false;
    std::array<std::unique_ptr<Side>, 2> sides_;
    std::array<std::vector<StoredList>, 2> chi_;
    std::array<std::mutex, 64> stripes_;
    std::atomic<bool> stop_{false};
    std::atomic<bool> timed_out_{false};
    std::atomic<std::uint64_t> expansions_{0};
    std::optional<Clock::time_point> deadline_;
};

SolveOutcome run_solver(Mode mode, const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                        const SolveOptions& opt) {
    if (inst.start >= g.state_count() || inst.goal >= g.state_count()) {
        throw std::invalid_argument("start or goal outside the graph");
    }
    if (q.kind == QueueKind::bucket && q.tie == TiePolicy::secondary) {
        throw QueueError("bucket queue cannot break ties on the secondary key");
    }
    const auto t0 = Clock::now();
    InitOptions io;
    io.use_coordinates = opt.use_coordinates;
    io.reversed_order = opt.reversed_init;
    io.schedule = opt.schedule;
    InitResult init;
    switch (mode) {
        case Mode::astar: init = init_unidirectional(g, inst, io); break;
        case Mode::ebba: init = init_sequential_bidirectional(g, inst, io); break;
        case Mode::bastar:
        case Mode::ebba_par: init = init_parallel_bidirectional(g, inst, io); break;
    }
    SolveOutcome out;
    out.metrics.init = init.stats;
    out.metrics.reduced_states = init.tables.valid_count();
    if (init.status == InitStatus::infeasible) {
        out.status = SolveStatus::infeasible;
    } else if (init.status == InitStatus::optimal) {
        out.status = SolveStatus::optimal;
        out.costs = std::pair<Cost, Cost>{init.incumbent->c1, init.incumbent->c2};
        out.path = init.incumbent->path;
        out.record.kind = SolutionRecord::Kind::initial;
        out.record.c1 = init.incumbent->c1;
        out.record.c2 = init.incumbent->c2;
        out.record.initial_path = out.path;
        out.incumbent_history.emplace_back(out.record.c1, out.record.c2);
        if (opt.keep_tables) out.tables = std::move(init.tables);
    } else {
        Engine e(g, inst, q, opt, mode, std::move(init));
        e.run();
        e.finish(out);
    }
    out.metrics.wall_us = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count());
    return out;
}

}  // namespace

SolveOutcome solve_wc_astar(const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                            const SolveOptions& opt) {
    return run_solver(Mode::astar, g, inst, q, opt);
}

SolveOutcome solve_wc_bastar(const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                             const SolveOptions& opt) {
    return run_solver(Mode::bastar, g, inst, q, opt);
}

SolveOutcome solve_wc_ebba(const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                           const SolveOptions& opt) {
    return run_solver(Mode::ebba, g, inst, q, opt);
}

SolveOutcome solve_wc_ebba_par(const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                               const SolveOptions& opt) {
    return run_solver(Mode::ebba_par, g, inst, q, opt);
}

SolveOutcome solve(Algorithm a, const Graph& g, const ProblemInstance& inst, const QueueSettings& q,
                   const SolveOptions& opt) {
    switch (a) {
        case Algorithm::wc_astar: return solve_wc_astar(g, inst, q, opt);
        case Algorithm::wc_bastar: return solve_wc_bastar(g, inst, q, opt);
        case Algorithm::wc_ebba: return solve_wc_ebba(g, inst, q, opt);
        case Algorithm::wc_ebba_par: return solve_wc_ebba_par(g, inst, q, opt);
    }
    return {};
}

}  // namespace wcsp
