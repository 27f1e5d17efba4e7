#pragma once

namespace zladder {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647693;
inline constexpr double kLnTwoPi = 1.83787706640934548356;   // ln(2*pi)
inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace zladder
