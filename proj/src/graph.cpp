#include "wcsp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

namespace wcsp {

namespace {

void build_csr(StateId n, const std::vector<Edge>& edges, bool reversed,
               std::vector<std::uint64_t>& offsets, std::vector<Arc>& arcs) {
    offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const Edge& e : edges) ++offsets[(reversed ? e.to : e.from) + 1];
    for (StateId u = 0; u < n; ++u) offsets[u + 1] += offsets[u];
    arcs.resize(edges.size());
    std::vector<std::uint64_t> fill(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : edges) {
        const StateId tail = reversed ? e.to : e.from;
        const StateId head = reversed ? e.from : e.to;
        arcs[fill[tail]++] = Arc{head, e.c1, e.c2};
    }
    for (StateId u = 0; u < n; ++u) {
        std::sort(arcs.begin() + static_cast<std::ptrdiff_t>(offsets[u]),
                  arcs.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]),
                  [](const Arc& a, const Arc& b) { return a.to < b.to; });
    }
}

[[noreturn]] void fail(const std::string& what, std::size_t line) {
    throw GraphError(what + " (line " + std::to_string(line) + ")");
}

}  // namespace

Graph Graph::from_edges(StateId state_count, std::vector<Edge> edges) {
    for (const Edge& e : edges) {
        if (e.from >= state_count || e.to >= state_count) {
            throw GraphError("edge endpoint out of range");
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.from, a.to, a.c1, a.c2) < std::tie(b.from, b.to, b.c1, b.c2);
    });
    // After sorting, the first edge of each (from, to) run is the smallest.
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) {
                                return a.from == b.from && a.to == b.to;
                            }),
                edges.end());
    Graph g;
    g.n_ = state_count;
    build_csr(state_count, edges, false, g.offsets_[0], g.arcs_[0]);
    build_csr(state_count, edges, true, g.offsets_[1], g.arcs_[1]);
    return g;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (StateId u = 0; u < n_; ++u) {
        for (const Arc& a : successors(u, Direction::forward)) out.push_back({u, a.to, a.c1, a.c2});
    }
    return out;
}

void Graph::set_coords(std::vector<Coord> coords) {
    if (!coords.empty() && coords.size() != n_) throw GraphError("coordinate count mismatch");
    coords_ = std::move(coords);
}

std::optional<Arc> Graph::find_edge(StateId u, StateId v) const {
    auto succ = successors(u, Direction::forward);
    auto it = std::lower_bound(succ.begin(), succ.end(), v,
                               [](const Arc& a, StateId t) { return a.to < t; });
    if (it != succ.end() && it->to == v) return *it;
    return std::nullopt;
}

GrFile parse_gr(std::istream& in) {
    GrFile out;
    bool have_header = false;
    std::size_t declared_arcs = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ss(line);
        char tag = 0;
        ss >> tag;
        if (tag == 'p') {
            std::string kind;
            std::uint64_t n = 0, m = 0;
            if (!(ss >> kind >> n >> m) || kind != "sp") fail("malformed problem line", lineno);
            if (n > kNoState - 1) fail("state count too large", lineno);
            out.state_count = static_cast<StateId>(n);
            declared_arcs = m;
            out.arcs.reserve(m);
            have_header = true;
        } else if (tag == 'a') {
            if (!have_header) fail("arc before problem line", lineno);
            std::uint64_t u = 0, v = 0;
            std::int64_t w = 0;
            if (!(ss >> u >> v >> w)) fail("malformed arc line", lineno);
            if (u < 1 || v < 1 || u > out.state_count || v > out.state_count) {
                fail("state id out of range", lineno);
            }
            if (w < 0 || w > std::numeric_limits<std::uint32_t>::max()) {
                fail("arc weight out of range", lineno);
            }
            out.arcs.push_back({static_cast<StateId>(u - 1), static_cast<StateId>(v - 1),
                                static_cast<std::uint32_t>(w), 0});
        } else {
            fail("unknown line tag", lineno);
        }
    }
    if (!have_header) throw GraphError("missing problem line");
    if (out.arcs.size() != declared_arcs) throw GraphError("arc count differs from problem line");
    return out;
}

std::vector<Coord> parse_co(std::istream& in, StateId state_count) {
    std::vector<Coord> coords(state_count, Coord{0.0, 0.0});
    std::vector<bool> seen(state_count, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c' || line[0] == 'p') continue;
        std::istringstream ss(line);
        char tag = 0;
        std::uint64_t id = 0;
        std::int64_t x = 0, y = 0;
        if (!(ss >> tag >> id >> x >> y) || tag != 'v') fail("malformed coordinate line", lineno);
        if (id < 1 || id > state_count) fail("state id out of range", lineno);
        coords[id - 1] = Coord{static_cast<double>(y) / 1e6, static_cast<double>(x) / 1e6};
        seen[id - 1] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw GraphError("coordinate file does not cover every state");
    }
    return coords;
}

Graph load_dimacs(const std::filesystem::path& cost1_file,
                  const std::filesystem::path& cost2_file,
                  const std::optional<std::filesystem::path>& coord_file) {
    auto read = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        if (!in) throw GraphError("cannot open " + p.string());
        try {
            return parse_gr(in);
        } catch (const GraphError& e) {
            throw GraphError(p.string() + ": " + e.what());
        }
    };
    GrFile a = read(cost1_file);
    GrFile b = read(cost2_file);
    if (a.state_count != b.state_count || a.arcs.size() != b.arcs.size()) {
        throw GraphError("graph files describe different graphs");
    }
    // Duplicate arcs are paired by their order of appearance in each file.
    auto by_pair = [](const Edge& x, const Edge& y) {
        return std::tie(x.from, x.to) < std::tie(y.from, y.to);
    };
    std::stable_sort(a.arcs.begin(), a.arcs.end(), by_pair);
    std::stable_sort(b.arcs.begin(), b.arcs.end(), by_pair);
    std::vector<Edge> edges(a.arcs.size());
    for (std::size_t i = 0; i < a.arcs.size(); ++i) {
        if (a.arcs[i].from != b.arcs[i].from || a.arcs[i].to != b.arcs[i].to) {
            throw GraphError("graph files have different edge sets");
        }
        edges[i] = {a.arcs[i].from, a.arcs[i].to, a.arcs[i].c1, b.arcs[i].c1};
    }
    Graph g = Graph::from_edges(a.state_count, std::move(edges));
    if (coord_file) {
        std::ifstream in(*coord_file);
        if (!in) throw GraphError("cannot open " + coord_file->string());
        g.set_coords(parse_co(in, g.state_count()));
    }
    return g;
}

void write_gr(std::ostream& out, const Graph& g, int attr) {
    out << "p sp " << g.state_count() << ' ' << g.edge_count() << '\n';
    for (StateId u = 0; u < g.state_count(); ++u) {
        for (const Arc& a : g.successors(u, Direction::forward)) {
            out << "a " << u + 1 << ' ' << a.to + 1 << ' ' << (attr == kCost1 ? a.c1 : a.c2) << '\n';
        }
    }
}

Graph randomize_cost2(const Graph& g, std::uint64_t seed, std::uint32_t lo, std::uint32_t hi) {
    if (lo < 1 || hi < lo) throw GraphError("invalid cost range");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(lo, hi);
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.c2 = dist(rng);
    Graph out = Graph::from_edges(g.state_count(), std::move(edges));
    if (g.has_coords()) out.set_coords(g.coords());
    return out;
}

Graph random_graph(const RandomGraphConfig& cfg) {
    const StateId n = cfg.states;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::uint32_t> cost(1, std::max<std::uint32_t>(1, cfg.cost_max));
    std::vector<Edge> edges;
    if (n >= 2) {
        std::vector<StateId> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (StateId i = 0; i < n; ++i) {
            edges.push_back({order[i], order[(i + 1) % n], cost(rng), cost(rng)});
        }
        const std::size_t max_edges = static_cast<std::size_t>(n) * (n - 1);
        const std::size_t target = std::min(cfg.edges, max_edges);
        std::uniform_int_distribution<StateId> pick(0, n - 1);
        std::vector<bool> used(static_cast<std::size_t>(n) * n, false);
        for (const Edge& e : edges) used[static_cast<std::size_t>(e.from) * n + e.to] = true;
        while (edges.size() < target) {
            StateId u = pick(rng), v = pick(rng);
            if (u == v || used[static_cast<std::size_t>(u) * n + v]) continue;
            used[static_cast<std::size_t>(u) * n + v] = true;
            edges.push_back({u, v, cost(rng), cost(rng)});
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

}  // namespace wcsp
