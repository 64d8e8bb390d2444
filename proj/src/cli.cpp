#include "wcsp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "wcsp/bounds.hpp"
#include "wcsp/oracle.hpp"

namespace wcsp::cli {

namespace {

std::string trim_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) return base / path;
    return path;
}

std::optional<QueueSettings> parse_queue_setting(const std::string& s) {
    const auto dash = s.find('-');
    const std::string kind = s.substr(0, dash);
    const std::string tie = dash == std::string::npos ? "lifo" : s.substr(dash + 1);
    QueueSettings q;
    if (kind == "bucket") q.kind = QueueKind::bucket;
    else if (kind == "hybrid") q.kind = QueueKind::hybrid;
    else if (kind == "heap") q.kind = QueueKind::binary_heap;
    else return std::nullopt;
    if (tie == "lifo") q.tie = TiePolicy::none_lifo;
    else if (tie == "fifo") q.tie = TiePolicy::none_fifo;
    else if (tie == "secondary") q.tie = TiePolicy::secondary;
    else return std::nullopt;
    return q;
}

std::string queue_name(const QueueSettings& q) { return std::string(to_string(q.kind)); }

Schedule make_schedule(bool threads, unsigned lockstep) {
    return threads ? Schedule::threads() : Schedule::lockstep(lockstep);
}

}  // namespace

InstanceFile parse_instance_file(std::istream& in, const std::filesystem::path& base_dir) {
    InstanceFile f;
    std::string line;
    bool have_graph = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(trim_comment(line));
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "graph") {
            std::string a, b, c;
            if (!(ls >> a >> b)) throw std::runtime_error("line " + std::to_string(lineno) + ": graph needs two files");
            f.cost1_file = resolve(base_dir, a);
            f.cost2_file = resolve(base_dir, b);
            if (ls >> c) f.coord_file = resolve(base_dir, c);
            have_graph = true;
            continue;
        }
        InstanceRow r;
        std::string kind;
        long long s = 0, g = 0;
        try {
            s = std::stoll(first);
        } catch (const std::exception&) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": bad start id");
        }
        if (!(ls >> g >> kind) || s < 1 || g < 1) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected <start> <goal> w|d <value>");
        }
        r.start = static_cast<StateId>(s - 1);
        r.goal = static_cast<StateId>(g - 1);
        if (kind == "w") {
            long long w = -1;
            if (!(ls >> w) || w < 0) throw std::runtime_error("line " + std::to_string(lineno) + ": bad weight");
            r.weight = static_cast<Cost>(w);
        } else if (kind == "d") {
            if (!(ls >> r.delta) || r.delta < 0.0) {
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad tightness");
            }
            r.is_delta = true;
        } else {
            throw std::runtime_error("line " + std::to_string(lineno) + ": unknown row kind '" + kind + "'");
        }
        f.rows.push_back(r);
    }
    if (!have_graph) throw std::runtime_error("instance file has no graph line");
    return f;
}

void write_instance_file(std::ostream& out, const InstanceFile& f) {
    out << "# start goal w|d value (1-based ids)\n";
    out << "graph " << f.cost1_file.string() << ' ' << f.cost2_file.string();
    if (f.coord_file) out << ' ' << f.coord_file->string();
    out << '\n';
    for (const InstanceRow& r : f.rows) {
        out << r.start + 1 << ' ' << r.goal + 1 << ' ';
        if (r.is_delta) out << "d " << r.delta << '\n';
        else out << "w " << r.weight << '\n';
    }
}

std::optional<PairBounds> pair_bounds(const Graph& g, StateId start, StateId goal) {
    SsspConfig c;
    c.source = goal;
    c.travel = Direction::backward;
    c.attr = kCost2;
    BoundedSearch s2(g, c);
    s2.run();
    if (!s2.settled(start)) return std::nullopt;
    c.attr = kCost1;
    BoundedSearch s1(g, c);
    s1.run();
    return PairBounds{s2.g_attr()[start], s1.g_other()[start]};
}

Cost weight_from_delta(Cost h2, Cost ub2, double delta) {
    const double span = ub2 >= h2 ? static_cast<double>(ub2 - h2) : 0.0;
    return static_cast<Cost>(std::floor(static_cast<double>(h2) + delta * span + 0.5));
}

std::optional<Cost> resolve_weight(const Graph& g, const InstanceRow& row) {
    if (!row.is_delta) return row.weight;
    const auto b = pair_bounds(g, row.start, row.goal);
    if (!b) return std::nullopt;
    return weight_from_delta(b->h2, b->ub2, row.delta);
}

GenResult gen_instances(const Graph& g, const std::vector<std::pair<StateId, StateId>>& pairs,
                        const std::vector<double>& deltas, bool add_reversed) {
    GenResult out;
    std::vector<std::pair<StateId, StateId>> all = pairs;
    if (add_reversed) {
        for (const auto& [s, t] : pairs) all.emplace_back(t, s);
    }
    for (const auto& [s, t] : all) {
        if (s >= g.state_count() || t >= g.state_count()) {
            out.warnings.push_back("pair " + std::to_string(s + 1) + " " + std::to_string(t + 1) +
                                   ": id outside the graph, skipped");
            continue;
        }
        const auto b = pair_bounds(g, s, t);
        if (!b) {
            out.warnings.push_back("pair " + std::to_string(s + 1) + " " + std::to_string(t + 1) +
                                   ": goal unreachable, skipped");
            continue;
        }
        if (b->ub2 == b->h2) {
            out.warnings.push_back("pair " + std::to_string(s + 1) + " " + std::to_string(t + 1) +
                                   ": degenerate corridor, W = h2 for every tightness");
        }
        for (double d : deltas) {
            InstanceRow r;
            r.start = s;
            r.goal = t;
            r.weight = weight_from_delta(b->h2, b->ub2, d);
            out.rows.push_back(r);
        }
    }
    return out;
}

std::string csv_header() {
    return std::string(kCsvVersionLine) +
           "\ninstance,algorithm,queue,tie,status,cost1,cost2,runtime_us,expansions,generations,"
           "pruned_dominance,pruned_state_ub,pruned_global,queue_ops,peak_pool_blocks,memory_bytes";
}

std::string to_csv(const ResultRow& r) {
    std::ostringstream os;
    os << r.instance << ',' << r.algorithm << ',' << r.queue << ',' << r.tie << ',' << r.status << ','
       << r.cost1 << ',' << r.cost2 << ',' << r.runtime_us << ',' << r.expansions << ',' << r.generations
       << ',' << r.pruned_dominance << ',' << r.pruned_state_ub << ',' << r.pruned_global << ','
       << r.queue_ops << ',' << r.peak_pool_blocks << ',' << r.memory_bytes;
    return os.str();
}

ResultRow parse_csv_row(const std::string& line) {
    std::vector<std::string> f;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 16) throw std::runtime_error("expected 16 CSV fields, got " + std::to_string(f.size()));
    auto num = [](const std::string& s) -> std::uint64_t { return std::stoull(s); };
    ResultRow r;
    r.instance = f[0];
    r.algorithm = f[1];
    r.queue = f[2];
    r.tie = f[3];
    r.status = f[4];
    r.cost1 = num(f[5]);
    r.cost2 = num(f[6]);
    r.runtime_us = num(f[7]);
    r.expansions = num(f[8]);
    r.generations = num(f[9]);
    r.pruned_dominance = num(f[10]);
    r.pruned_state_ub = num(f[11]);
    r.pruned_global = num(f[12]);
    r.queue_ops = num(f[13]);
    r.peak_pool_blocks = num(f[14]);
    r.memory_bytes = num(f[15]);
    return r;
}

ResultRow make_row(const std::string& instance, Algorithm a, const QueueSettings& q, const SolveOutcome& o) {
    ResultRow r;
    r.instance = instance;
    r.algorithm = to_string(a);
    r.queue = queue_name(q);
    r.tie = to_string(q.tie);
    r.status = to_string(o.status);
    if (o.costs) {
        r.cost1 = o.costs->first;
        r.cost2 = o.costs->second;
    }
    const SolveMetrics& m = o.metrics;
    r.runtime_us = m.wall_us;
    r.expansions = m.expansions();
    r.generations = m.generations();
    r.pruned_dominance = m.pruned_dominance();
    r.pruned_state_ub = m.pruned_state_ub();
    r.pruned_global = m.pruned_global();
    r.queue_ops = m.queue_ops();
    r.peak_pool_blocks = m.peak_pool_blocks();
    // Allocator-level estimate: pooled node blocks plus one pointer-sized
    // queue slot per node at peak.
    const std::uint64_t peak_queue = m.side[0].queue.peak_size + m.side[1].queue.peak_size;
    r.memory_bytes = r.peak_pool_blocks * NodePool::kBlockNodes * sizeof(SearchNode) + peak_queue * 32;
    return r;
}

std::size_t run_bench(const Graph& g, const InstanceFile& inst, const BenchConfig& cfg, std::ostream& csv) {
    csv << csv_header() << '\n';
    std::size_t rows = 0;
    const unsigned repeats = std::max(1u, cfg.repeats);
    for (std::size_t i = 0; i < inst.rows.size(); ++i) {
        const InstanceRow& row = inst.rows[i];
        const std::string id = std::to_string(i + 1);
        std::optional<Cost> w;
        std::string row_error;
        try {
            w = resolve_weight(g, row);
        } catch (const std::exception& e) {
            row_error = e.what();
        }
        for (Algorithm a : cfg.algorithms) {
            for (const QueueSettings& q : cfg.queues) {
                ResultRow out;
                if (!w) {
                    out.instance = id;
                    out.algorithm = to_string(a);
                    out.queue = queue_name(q);
                    out.tie = to_string(q.tie);
                    out.status = row_error.empty() ? "unreachable" : "error";
                } else {
                    std::vector<ResultRow> runs;
                    try {
                        for (unsigned k = 0; k < repeats; ++k) {
                            const SolveOutcome o = solve(a, g, {row.start, row.goal, *w}, q, cfg.options);
                            runs.push_back(make_row(id, a, q, o));
                        }
                        std::stable_sort(runs.begin(), runs.end(), [](const ResultRow& x, const ResultRow& y) {
                            return x.runtime_us < y.runtime_us;
                        });
                        out = runs[(runs.size() - 1) / 2];
                    } catch (const std::exception&) {
                        out = ResultRow{};
                        out.instance = id;
                        out.algorithm = to_string(a);
                        out.queue = queue_name(q);
                        out.tie = to_string(q.tie);
                        out.status = "error";
                    }
                }
                csv << to_csv(out) << '\n';
                ++rows;
            }
        }
    }
    return rows;
}

std::vector<QueueSettings> all_queue_settings() {
    return {
        {QueueKind::bucket, TiePolicy::none_lifo, 1},
        {QueueKind::bucket, TiePolicy::none_fifo, 1},
        {QueueKind::hybrid, TiePolicy::none_lifo, 1},
        {QueueKind::hybrid, TiePolicy::secondary, 1},
        {QueueKind::binary_heap, TiePolicy::none_lifo, 1},
        {QueueKind::binary_heap, TiePolicy::secondary, 1},
    };
}

std::vector<SuiteCase> random_suite(const OracleCheckConfig& cfg) {
    std::vector<SuiteCase> out;
    std::mt19937_64 rng(cfg.seed);
    const StateId hi = std::max<StateId>(4, cfg.max_states);
    std::uniform_int_distribution<StateId> states(std::min<StateId>(4, hi), hi);
    for (unsigned i = 0; i < cfg.graphs; ++i) {
        const StateId n = states(rng);
        std::uniform_int_distribution<std::size_t> edges(n, 3 * static_cast<std::size_t>(n));
        const std::uint64_t gseed = rng();
        Graph g = random_graph({n, edges(rng), cfg.cost_max, gseed});
        std::uniform_int_distribution<StateId> pick(0, n - 1);
        for (unsigned k = 0; k < cfg.pairs_per_graph; ++k) {
            StateId s = pick(rng), t = pick(rng);
            while (t == s) t = pick(rng);
            const oracle::ParetoSet front = oracle::enumerate_pareto(g, s, t);
            if (front.empty()) continue;
            const Cost ub2 = front.front().c2;
            const Cost h2 = front.back().c2;
            std::set<Cost> ws{h2, h2 + (ub2 - h2) / 4, h2 + (ub2 - h2) / 2, ub2, ub2 + 3};
            if (h2 > 0) ws.insert(h2 - 1);
            if (ub2 > h2) ws.insert(ub2 - 1);
            out.push_back({g, s, t, std::vector<Cost>(ws.begin(), ws.end()), gseed});
        }
    }
    return out;
}

namespace {

void print_trace(std::ostream& out, Algorithm a, const SuiteCase& c, Cost w, const QueueSettings& q) {
    SolveOptions o;
    o.trace = true;
    try {
        const SolveOutcome r = solve(a, c.graph, {c.start, c.goal, w}, q, o);
        for (int k = 0; k < 2; ++k) {
            if (r.trace[k].empty()) continue;
            out << "  " << (k == 0 ? "forward" : "backward") << " expansions (state g1 g2 f):\n";
            for (const ExpansionEvent& e : r.trace[k]) {
                out << "    " << e.state + 1 << ' ' << e.g1 << ' ' << e.g2 << ' ' << e.f_primary << '\n';
            }
        }
    } catch (const std::exception& e) {
        out << "  trace unavailable: " << e.what() << '\n';
    }
}

}  // namespace

bool oracle_check(const OracleCheckConfig& cfg, std::ostream& out, const SolverFn& solver) {
    if (cfg.graphs == 0) {
        out << "warning: no graphs requested, nothing checked\npass 0 cases\n";
        return true;
    }
    if (cfg.max_states > oracle::kMaxStates) {
        out << "max-states exceeds the oracle limit of " << oracle::kMaxStates << '\n';
        return false;
    }
    const auto suite = random_suite(cfg);
    std::size_t checks = 0;
    for (const SuiteCase& c : suite) {
        const oracle::ParetoSet front = oracle::enumerate_pareto(c.graph, c.start, c.goal);
        for (Cost w : c.weights) {
            const auto expect = oracle::constrained_optimum(front, w);
            for (Algorithm a : {Algorithm::wc_astar, Algorithm::wc_bastar, Algorithm::wc_ebba, Algorithm::wc_ebba_par}) {
                for (const QueueSettings& q : all_queue_settings()) {
                    std::string got;
                    bool ok = false;
                    try {
                        const ProblemInstance pi{c.start, c.goal, w};
                        const SolveOutcome o = solver ? solver(a, c.graph, pi, q) : solve(a, c.graph, pi, q);
                        ok = expect ? (o.status == SolveStatus::optimal && o.costs == expect)
                                    : o.status == SolveStatus::infeasible;
                        got = std::string(to_string(o.status));
                        if (o.costs) got += " " + std::to_string(o.costs->first) + " " + std::to_string(o.costs->second);
                    } catch (const std::exception& e) {
                        got = std::string("exception: ") + e.what();
                    }
                    ++checks;
                    if (ok) continue;
                    out << "FAIL counterexample: " << to_string(a) << " queue=" << queue_name(q)
                        << " tie=" << to_string(q.tie)
                        << "\n  start=" << c.start + 1 << " goal=" << c.goal + 1 << " W=" << w
                        << " graph seed=" << c.seed << "\n  expected ";
                    if (expect) out << "optimal " << expect->first << ' ' << expect->second;
                    else out << "infeasible";
                    out << "\n  got " << got << "\n  edges (1-based from to c1 c2):\n";
                    for (const Edge& e : c.graph.edges()) {
                        out << "    " << e.from + 1 << ' ' << e.to + 1 << ' ' << e.c1 << ' ' << e.c2 << '\n';
                    }
                    print_trace(out, a, c, w, q);
                    return false;
                }
            }
        }
    }
    out << "pass " << checks << " checks on " << suite.size() << " queries\n";
    return true;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weight constrained shortest path solvers"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve one query");
    std::string c1, c2, co, algo = "wc-ebba", queue = "bucket", tie = "lifo";
    long long start = 0, goal = 0;
    std::optional<Cost> weight;
    std::optional<double> delta;
    Cost delta_f = 1;
    bool threads = false, show_path = false, no_htf = false, no_coords = false;
    unsigned lockstep = 1;
    std::optional<double> timeout;
    solve_cmd->add_option("--c1", c1, "DIMACS .gr file with cost1")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--c2", c2, "DIMACS .gr file with cost2")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--co", co, "DIMACS .co coordinates")->check(CLI::ExistingFile);
    solve_cmd->add_option("--start", start, "start id (1-based)")->required();
    solve_cmd->add_option("--goal", goal, "goal id (1-based)")->required();
    auto* w_opt = solve_cmd->add_option("--weight,-W", weight, "weight limit");
    auto* d_opt = solve_cmd->add_option("--delta", delta, "tightness in [0,1]");
    w_opt->excludes(d_opt);
    solve_cmd->add_option("--algorithm,-a", algo, "wc-astar | wc-bastar | wc-ebba | wc-ebba-par");
    solve_cmd->add_option("--queue", queue, "bucket | hybrid | heap");
    solve_cmd->add_option("--tie", tie, "lifo | fifo | secondary");
    solve_cmd->add_option("--delta-f", delta_f, "bucket width")->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--threads", threads, "run the two searches on real threads");
    solve_cmd->add_option("--lockstep", lockstep, "expansions per side per turn when not threaded");
    solve_cmd->add_option("--timeout", timeout, "wall-clock limit in seconds");
    solve_cmd->add_flag("--path", show_path, "print the state sequence");
    solve_cmd->add_flag("--no-htf", no_htf, "disable heuristic tuning");
    solve_cmd->add_flag("--no-coords", no_coords, "ignore coordinates in the preliminary searches");

    // gen-instances
    auto* gen_cmd = app.add_subcommand("gen-instances", "Write an instance file from pairs and tightness levels");
    std::string g_c1, g_c2, g_co, pairs_file, gen_out;
    std::vector<double> deltas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    std::vector<long long> pair_ids;
    unsigned random_pairs = 0;
    std::uint64_t gen_seed = 1;
    bool reversed = false;
    gen_cmd->add_option("--c1", g_c1)->required()->check(CLI::ExistingFile);
    gen_cmd->add_option("--c2", g_c2)->required()->check(CLI::ExistingFile);
    gen_cmd->add_option("--co", g_co)->check(CLI::ExistingFile);
    gen_cmd->add_option("--pair", pair_ids, "start goal (1-based), repeatable")->expected(2, 1 << 20);
    gen_cmd->add_option("--pairs-file", pairs_file, "file of 1-based start goal lines")->check(CLI::ExistingFile);
    gen_cmd->add_option("--random-pairs", random_pairs, "number of seeded random pairs");
    gen_cmd->add_option("--seed", gen_seed);
    gen_cmd->add_option("--deltas", deltas, "tightness levels")->delimiter(',');
    gen_cmd->add_flag("--reversed", reversed, "also emit goal-start pairs");
    gen_cmd->add_option("--output,-o", gen_out, "instance file (stdout if omitted)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run a batch and write CSV rows");
    std::string inst_file, csv_out;
    std::vector<std::string> algos{"wc-astar", "wc-bastar", "wc-ebba", "wc-ebba-par"};
    std::vector<std::string> queues{"bucket-lifo"};
    unsigned repeats = 5;
    bool b_threads = false;
    std::optional<double> b_timeout;
    bench_cmd->add_option("--instances,-i", inst_file)->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--algorithms", algos)->delimiter(',');
    bench_cmd->add_option("--queues", queues, "kind-tie, e.g. bucket-lifo,heap-secondary")->delimiter(',');
    bench_cmd->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--output,-o", csv_out, "CSV file (stdout if omitted)");
    bench_cmd->add_flag("--threads", b_threads);
    bench_cmd->add_option("--timeout", b_timeout);

    // oracle-check
    auto* oc_cmd = app.add_subcommand("oracle-check", "Cross-check all solvers against brute force");
    OracleCheckConfig occ;
    oc_cmd->add_option("--seed", occ.seed);
    oc_cmd->add_option("--graphs", occ.graphs);
    oc_cmd->add_option("--max-states", occ.max_states);
    oc_cmd->add_option("--cost-max", occ.cost_max)->check(CLI::PositiveNumber);

    // randomize
    auto* rnd_cmd = app.add_subcommand("randomize", "Write a cost2 file with random weights for a .gr graph");
    std::string r_in, r_out;
    std::uint64_t r_seed = 1;
    std::uint32_t r_lo = 1, r_hi = 100;
    rnd_cmd->add_option("--input", r_in)->required()->check(CLI::ExistingFile);
    rnd_cmd->add_option("--output,-o", r_out)->required();
    rnd_cmd->add_option("--seed", r_seed);
    rnd_cmd->add_option("--lo", r_lo);
    rnd_cmd->add_option("--hi", r_hi);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (solve_cmd->parsed()) {
            if (!weight && !delta) {
                err << "one of --weight or --delta is required\n";
                return 1;
            }
            const auto a = parse_algorithm(algo);
            const auto q = parse_queue_setting(queue + "-" + tie);
            if (!a) {
                err << "unknown algorithm '" << algo << "'\n";
                return 1;
            }
            if (!q) {
                err << "unknown queue '" << queue << "' or tie policy '" << tie << "'\n";
                return 1;
            }
            QueueSettings qs = *q;
            qs.delta_f = delta_f;
            if (qs.kind == QueueKind::bucket && qs.tie == TiePolicy::secondary) {
                err << "the bucket queue cannot break ties on the secondary key; use hybrid or heap\n";
                return 1;
            }
            const Graph g = load_dimacs(c1, c2, co.empty() ? std::nullopt : std::optional<std::filesystem::path>(co));
            if (start < 1 || goal < 1 || start > g.state_count() || goal > g.state_count()) {
                err << "start or goal outside 1.." << g.state_count() << '\n';
                return 1;
            }
            InstanceRow row;
            row.start = static_cast<StateId>(start - 1);
            row.goal = static_cast<StateId>(goal - 1);
            row.is_delta = delta.has_value();
            row.delta = delta.value_or(0.0);
            row.weight = weight.value_or(0);
            const auto w = resolve_weight(g, row);
            if (!w) {
                out << "infeasible\n";
                return 2;
            }
            SolveOptions so;
            so.schedule = make_schedule(threads, lockstep);
            so.htf = !no_htf;
            so.use_coordinates = !no_coords;
            so.timeout_seconds = timeout;
            const SolveOutcome o = solve(*a, g, {row.start, row.goal, *w}, qs, so);
            out << to_string(o.status);
            if (o.costs) out << ' ' << o.costs->first << ' ' << o.costs->second;
            out << '\n';
            out << "weight_limit " << *w << '\n';
            out << "expansions " << o.metrics.expansions() << '\n';
            out << "generations " << o.metrics.generations() << '\n';
            out << "pruned " << o.metrics.pruned_dominance() << ' ' << o.metrics.pruned_state_ub() << ' '
                << o.metrics.pruned_global() << '\n';
            out << "queue_ops " << o.metrics.queue_ops() << '\n';
            out << "peak_pool_blocks " << o.metrics.peak_pool_blocks() << '\n';
            out << "runtime_us " << o.metrics.wall_us << '\n';
            if (show_path && !o.path.empty()) {
                out << "path";
                for (StateId u : o.path) out << ' ' << u + 1;
                out << '\n';
            }
            switch (o.status) {
                case SolveStatus::optimal: return 0;
                case SolveStatus::infeasible: return 2;
                case SolveStatus::timeout: return 3;
            }
            return 0;
        }
        if (gen_cmd->parsed()) {
            const Graph g = load_dimacs(g_c1, g_c2, g_co.empty() ? std::nullopt : std::optional<std::filesystem::path>(g_co));
            std::vector<std::pair<StateId, StateId>> pairs;
            if (pair_ids.size() % 2 != 0) {
                err << "--pair takes start and goal\n";
                return 1;
            }
            for (std::size_t i = 0; i + 1 < pair_ids.size(); i += 2) {
                pairs.emplace_back(static_cast<StateId>(pair_ids[i] - 1), static_cast<StateId>(pair_ids[i + 1] - 1));
            }
            if (!pairs_file.empty()) {
                std::ifstream pf(pairs_file);
                std::string line;
                while (std::getline(pf, line)) {
                    std::istringstream ls(trim_comment(line));
                    long long s, t;
                    if (ls >> s >> t) pairs.emplace_back(static_cast<StateId>(s - 1), static_cast<StateId>(t - 1));
                }
            }
            if (random_pairs > 0 && g.state_count() > 1) {
                std::mt19937_64 rng(gen_seed);
                std::uniform_int_distribution<StateId> pick(0, g.state_count() - 1);
                for (unsigned i = 0; i < random_pairs; ++i) {
                    StateId s = pick(rng), t = pick(rng);
                    while (t == s) t = pick(rng);
                    pairs.emplace_back(s, t);
                }
            }
            const GenResult r = gen_instances(g, pairs, deltas, reversed);
            for (const std::string& wmsg : r.warnings) err << "warning: " << wmsg << '\n';
            InstanceFile f;
            f.cost1_file = g_c1;
            f.cost2_file = g_c2;
            if (!g_co.empty()) f.coord_file = g_co;
            f.rows = r.rows;
            if (gen_out.empty()) {
                write_instance_file(out, f);
            } else {
                std::ofstream of(gen_out);
                write_instance_file(of, f);
            }
            return 0;
        }
        if (bench_cmd->parsed()) {
            std::ifstream in(inst_file);
            const InstanceFile f = parse_instance_file(in, std::filesystem::path(inst_file).parent_path());
            const Graph g = load_dimacs(f.cost1_file, f.cost2_file, f.coord_file);
            BenchConfig cfg;
            for (const std::string& s : algos) {
                const auto a = parse_algorithm(s);
                if (!a) {
                    err << "unknown algorithm '" << s << "'\n";
                    return 1;
                }
                cfg.algorithms.push_back(*a);
            }
            for (const std::string& s : queues) {
                const auto q = parse_queue_setting(s);
                if (!q || (q->kind == QueueKind::bucket && q->tie == TiePolicy::secondary)) {
                    err << "bad queue setting '" << s << "'\n";
                    return 1;
                }
                cfg.queues.push_back(*q);
            }
            cfg.repeats = repeats;
            cfg.options.schedule = make_schedule(b_threads, 1);
            cfg.options.timeout_seconds = b_timeout;
            if (csv_out.empty()) {
                run_bench(g, f, cfg, out);
            } else {
                std::ofstream of(csv_out);
                run_bench(g, f, cfg, of);
            }
            return 0;
        }
        if (oc_cmd->parsed()) {
            return oracle_check(occ, out) ? 0 : 1;
        }
        if (rnd_cmd->parsed()) {
            std::ifstream in(r_in);
            GrFile gr = parse_gr(in);
            for (Edge& e : gr.arcs) e.c2 = e.c1;
            const Graph g = randomize_cost2(Graph::from_edges(gr.state_count, std::move(gr.arcs)), r_seed, r_lo, r_hi);
            std::ofstream of(r_out);
            write_gr(of, g, kCost2);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace wcsp::cli
