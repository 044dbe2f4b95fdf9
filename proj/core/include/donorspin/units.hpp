#pragma once

#include <numbers>

namespace donorspin {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CODATA 2018 reduced Planck constant, J s.
inline constexpr double kHbar = 1.054571817e-34;

// mu_0 / (4 pi) in T m / A, exact in SI.
inline constexpr double kMu0Over4Pi = 1e-7;

// All internal frequencies and energies are angular (rad/s); user-facing
// I/O uses MHz (or GHz) and Tesla.
inline constexpr double mhz_to_angular(double mhz) { return kTwoPi * mhz * 1e6; }
inline constexpr double angular_to_mhz(double w) { return w / (kTwoPi * 1e6); }
inline constexpr double ghz_to_angular(double ghz) { return kTwoPi * ghz * 1e9; }

}  // namespace donorspin
