#pragma once

#include <filesystem>
#include <random>
#include <vector>
#include <string>

#include "wcsp/graph.hpp"

namespace wcsp::testing_util {

// States: 0 start, 1 u1, 2 u2, 3 u3, 4 goal.
inline Graph small_graph() {
    return Graph::from_edges(5, {{0, 1, 1, 4},
                                 {0, 2, 3, 4},
                                 {0, 3, 3, 1},
                                 {1, 2, 1, 2},
                                 {3, 2, 2, 1},
                                 {1, 4, 2, 4},
                                 {2, 4, 2, 1},
                                 {3, 4, 3, 3}});
}

inline constexpr StateId kStart = 0;
inline constexpr StateId kU1 = 1;
inline constexpr StateId kU2 = 2;
inline constexpr StateId kU3 = 3;
inline constexpr StateId kGoal = 4;

// k x k grid with arcs both ways and cost2 roughly 21 - cost1, so many
// paths trade one cost against the other.
inline Graph tradeoff_grid(int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    auto add = [&](StateId a, StateId b) {
        const auto c1 = static_cast<std::uint32_t>(1 + rng() % 20);
        const auto c2 = static_cast<std::uint32_t>(21 - c1 + rng() % 3);
        edges.push_back({a, b, c1, c2});
    };
    auto id = [k](int r, int c) { return static_cast<StateId>(r * k + c); };
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            if (c + 1 < k) {
                add(id(r, c), id(r, c + 1));
                add(id(r, c + 1), id(r, c));
            }
            if (r + 1 < k) {
                add(id(r, c), id(r + 1, c));
                add(id(r + 1, c), id(r, c));
            }
        }
    }
    return Graph::from_edges(static_cast<StateId>(k * k), std::move(edges));
}

inline std::filesystem::path data_dir() { return WCSP_TEST_DATA; }

}  // namespace wcsp::testing_util
