#pragma once

#include <numbers>

namespace ladderlab {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double half_pi = 0.5 * std::numbers::pi;

// The constant c of the Hardy-Littlewood mean value and of the ladder
// relations. Read as Euler's constant.
inline constexpr double euler_c = std::numbers::egamma;

}  // namespace ladderlab
