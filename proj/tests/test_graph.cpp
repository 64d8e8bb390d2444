#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "test_util.hpp"
#include "wcsp/graph.hpp"

using namespace wcsp;
using namespace wcsp::testing_util;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto p = std::filesystem::temp_directory_path() / ("wcsp_graph_test_" + name);
    std::ofstream(p) << body;
    return p;
}

std::vector<std::pair<StateId, std::pair<std::uint32_t, std::uint32_t>>> succ(const Graph& g, StateId u,
                                                                              Direction d) {
    std::vector<std::pair<StateId, std::pair<std::uint32_t, std::uint32_t>>> out;
    for (const Arc& a : g.successors(u, d)) out.push_back({a.to, {a.c1, a.c2}});
    return out;
}

}  // namespace

TEST(Graph, LoadsSmallDimacsPair) {
    const Graph g = load_dimacs(data_dir() / "small.c1.gr", data_dir() / "small.c2.gr");
    EXPECT_EQ(g.state_count(), 5u);
    EXPECT_EQ(g.edge_count(), 8u);
    const Graph ref = small_graph();
    for (StateId u = 0; u < 5; ++u) {
        for (Direction d : {Direction::forward, Direction::backward}) {
            EXPECT_EQ(succ(g, u, d), succ(ref, u, d));
        }
    }
}

TEST(Graph, SuccessorsOfStartAndGoal) {
    const Graph g = small_graph();
    using V = decltype(succ(g, 0, Direction::forward));
    EXPECT_EQ(succ(g, kStart, Direction::forward),
              (V{{kU1, {1, 4}}, {kU2, {3, 4}}, {kU3, {3, 1}}}));
    EXPECT_TRUE(succ(g, kGoal, Direction::forward).empty());
    EXPECT_EQ(succ(g, kGoal, Direction::backward),
              (V{{kU1, {2, 4}}, {kU2, {2, 1}}, {kU3, {3, 3}}}));
}

TEST(Graph, DuplicateArcsKeepLexicographicMinimum) {
    const auto c1 = write_temp("dup.c1", "p sp 3 3\na 1 2 5\na 1 2 3\na 2 3 1\n");
    const auto c2 = write_temp("dup.c2", "p sp 3 3\na 1 2 7\na 1 2 9\na 2 3 1\n");
    const Graph g = load_dimacs(c1, c2);
    EXPECT_EQ(g.edge_count(), 2u);
    const auto e = g.find_edge(0, 1);
    ASSERT_TRUE(e);
    EXPECT_EQ(e->c1, 3u);
    EXPECT_EQ(e->c2, 9u);
}

TEST(Graph, DuplicateArcsTieOnCost1UsesCost2) {
    const Graph g = Graph::from_edges(2, {{0, 1, 4, 6}, {0, 1, 4, 2}, {0, 1, 5, 1}});
    ASSERT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(g.find_edge(0, 1)->c2, 2u);
}

TEST(Graph, SingleStateNoEdges) {
    const auto c1 = write_temp("one.c1", "c nothing\np sp 1 0\n");
    const Graph g = load_dimacs(c1, c1);
    EXPECT_EQ(g.state_count(), 1u);
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_TRUE(g.successors(0, Direction::forward).empty());
    EXPECT_TRUE(g.successors(0, Direction::backward).empty());
}

TEST(Graph, RejectsMalformedInput) {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return parse_gr(in);
    };
    EXPECT_THROW(parse("a 1 2 3\n"), GraphError);
    EXPECT_THROW(parse("p sp 2 1\na 1 3 3\n"), GraphError);
    EXPECT_THROW(parse("p sp 2 2\na 1 2 3\n"), GraphError);
    EXPECT_THROW(parse("p sp 2 1\na 1 x 3\n"), GraphError);
    EXPECT_THROW(load_dimacs("/nonexistent/a.gr", "/nonexistent/b.gr"), GraphError);
}

TEST(Graph, RejectsMismatchedAttributeFiles) {
    const auto c1 = write_temp("mm.c1", "p sp 3 1\na 1 2 5\n");
    const auto c2 = write_temp("mm.c2", "p sp 3 1\na 2 3 5\n");
    EXPECT_THROW(load_dimacs(c1, c2), GraphError);
}

TEST(Graph, ParsesCoordinates) {
    std::istringstream in("c coords\np aux sp co 2\nv 1 -73500000 40700000\nv 2 -73600000 40800000\n");
    const auto co = parse_co(in, 2);
    ASSERT_EQ(co.size(), 2u);
    EXPECT_DOUBLE_EQ(co[0].lon, -73.5);
    EXPECT_DOUBLE_EQ(co[0].lat, 40.7);
    std::istringstream missing("v 1 0 0\n");
    EXPECT_THROW(parse_co(missing, 2), GraphError);
}

TEST(Graph, WriteThenLoadRoundTrip) {
    const Graph g = random_graph({12, 40, 9, 5});
    std::ostringstream a, b;
    write_gr(a, g, kCost1);
    write_gr(b, g, kCost2);
    const auto c1 = write_temp("rt.c1", a.str());
    const auto c2 = write_temp("rt.c2", b.str());
    const Graph back = load_dimacs(c1, c2);
    ASSERT_EQ(back.edge_count(), g.edge_count());
    const auto e1 = g.edges(), e2 = back.edges();
    for (std::size_t i = 0; i < e1.size(); ++i) {
        EXPECT_EQ(e1[i].from, e2[i].from);
        EXPECT_EQ(e1[i].to, e2[i].to);
        EXPECT_EQ(e1[i].c1, e2[i].c1);
        EXPECT_EQ(e1[i].c2, e2[i].c2);
    }
}

TEST(Graph, RandomizeIsDeterministicPerSeed) {
    const Graph g = random_graph({30, 120, 10, 3});
    const Graph a = randomize_cost2(g, 42, 1, 100);
    const Graph b = randomize_cost2(g, 42, 1, 100);
    const Graph c = randomize_cost2(g, 43, 1, 100);
    bool any_diff = false;
    const auto ea = a.edges(), eb = b.edges(), ec = c.edges(), eg = g.edges();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        EXPECT_EQ(ea[i].c2, eb[i].c2);
        EXPECT_EQ(ea[i].c1, eg[i].c1);
        EXPECT_GE(ea[i].c2, 1u);
        EXPECT_LE(ea[i].c2, 100u);
        any_diff |= ea[i].c2 != ec[i].c2;
    }
    EXPECT_TRUE(any_diff);
}

TEST(Graph, RandomizeDegenerateRange) {
    const Graph g = random_graph({10, 30, 10, 8});
    const Graph r = randomize_cost2(g, 1, 7, 7);
    for (const Edge& e : r.edges()) EXPECT_EQ(e.c2, 7u);
    EXPECT_THROW(randomize_cost2(g, 1, 0, 5), GraphError);
    EXPECT_THROW(randomize_cost2(g, 1, 5, 4), GraphError);
}

// Every forward arc appears exactly once as a backward arc and vice versa.
TEST(Graph, ReversalConservesArcs) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Graph g = random_graph({25, 90, 10, seed});
        std::multiset<std::tuple<StateId, StateId, std::uint32_t, std::uint32_t>> fwd, bwd;
        for (StateId u = 0; u < g.state_count(); ++u) {
            for (const Arc& a : g.successors(u, Direction::forward)) fwd.insert({u, a.to, a.c1, a.c2});
            for (const Arc& a : g.successors(u, Direction::backward)) bwd.insert({a.to, u, a.c1, a.c2});
        }
        EXPECT_EQ(fwd, bwd);
        EXPECT_EQ(fwd.size(), g.edge_count());
    }
}

TEST(Graph, RandomGraphIsStronglyConnected) {
    const Graph g = random_graph({40, 80, 5, 9});
    std::vector<bool> seen(40, false);
    std::vector<StateId> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const StateId u = stack.back();
        stack.pop_back();
        for (const Arc& a : g.successors(u, Direction::forward)) {
            if (!seen[a.to]) {
                seen[a.to] = true;
                stack.push_back(a.to);
            }
        }
    }
    for (bool s : seen) EXPECT_TRUE(s);
}
