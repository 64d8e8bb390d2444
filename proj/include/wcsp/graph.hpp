#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "wcsp/types.hpp"

namespace wcsp {

struct Arc {
    StateId to;
    std::uint32_t c1;
    std::uint32_t c2;
};

struct Edge {
    StateId from;
    StateId to;
    std::uint32_t c1;
    std::uint32_t c2;
};

struct Coord {
    double lat;
    double lon;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Directed graph with a (cost1, cost2) pair on every edge.
 *
 * Both adjacency directions are stored in compressed form and sorted by
 * target id. Immutable once built.
 */
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list. Duplicate (from, to) pairs keep the
    /// lexicographically smallest (c1, c2).
    static Graph from_edges(StateId state_count, std::vector<Edge> edges);

    StateId state_count() const { return n_; }
    std::size_t edge_count() const { return arcs_[0].size(); }

    std::span<const Arc> successors(StateId u, Direction d) const {
        const int k = index_of(d);
        return {arcs_[k].data() + offsets_[k][u], arcs_[k].data() + offsets_[k][u + 1]};
    }

    /// Forward edges in (from, to) order.
    std::vector<Edge> edges() const;

    bool has_coords() const { return !coords_.empty(); }
    const std::vector<Coord>& coords() const { return coords_; }
    void set_coords(std::vector<Coord> coords);

    /// Cost of the edge u->v, if present.
    std::optional<Arc> find_edge(StateId u, StateId v) const;

private:
    StateId n_ = 0;
    std::vector<std::uint64_t> offsets_[2];
    std::vector<Arc> arcs_[2];
    std::vector<Coord> coords_;
};

/// Reads a DIMACS .gr pair (one file per attribute) and an optional .co file.
Graph load_dimacs(const std::filesystem::path& cost1_file,
                  const std::filesystem::path& cost2_file,
                  const std::optional<std::filesystem::path>& coord_file = std::nullopt);

/// Parses the arcs of one .gr stream; ids are shifted to 0-based.
struct GrFile {
    StateId state_count = 0;
    std::vector<Edge> arcs;  // c1 holds the weight, c2 is unused
};
GrFile parse_gr(std::istream& in);

std::vector<Coord> parse_co(std::istream& in, StateId state_count);

/// Writes one attribute of the graph as a .gr file (1-based ids).
void write_gr(std::ostream& out, const Graph& g, int attr);

/// Copy of `g` with every cost2 drawn uniformly from [lo, hi].
Graph randomize_cost2(const Graph& g, std::uint64_t seed, std::uint32_t lo, std::uint32_t hi);

struct RandomGraphConfig {
    StateId states = 20;
    std::size_t edges = 60;
    std::uint32_t cost_max = 10;
    std::uint64_t seed = 1;
};

/// Seeded random digraph. A random Hamiltonian cycle is laid first so
/// every state reaches every other; the remaining edges are uniform
/// random pairs without self-loops. Costs are uniform in [1, cost_max].
Graph random_graph(const RandomGraphConfig& cfg);

}  // namespace wcsp
