#pragma once

#include <cstdint>
#include <limits>

namespace wcsp {

using StateId = std::uint32_t;
using Cost = std::uint64_t;

// Large enough to mean "unreachable" but small enough that adding two of
// them never wraps.
inline constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

enum class Direction : std::uint8_t { forward = 0, backward = 1 };

constexpr Direction opposite(Direction d) {
    return d == Direction::forward ? Direction::backward : Direction::forward;
}

constexpr int index_of(Direction d) { return static_cast<int>(d); }

// Attribute indices: 0 is cost1 (the objective), 1 is cost2 (the weight).
inline constexpr int kCost1 = 0;
inline constexpr int kCost2 = 1;

constexpr int other(int attr) { return 1 - attr; }

inline Cost sat_add(Cost a, Cost b) {
    Cost s = a + b;
    return s > kInf ? kInf : s;
}

}  // namespace wcsp
