#pragma once

#include <cmath>
#include <numbers>

namespace msloc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) noexcept { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) noexcept { return rad * (180.0 / kPi); }

/// Wraps into [0, 2π).
inline double wrap_two_pi(double a) noexcept {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Wraps into (-π, π].
inline double wrap_pi(double a) noexcept {
    double r = wrap_two_pi(a);
    return r > kPi ? r - kTwoPi : r;
}

/// Smallest absolute angular separation, in [0, π].
inline double angular_distance(double a, double b) noexcept { return std::abs(wrap_pi(a - b)); }

}  // namespace msloc
