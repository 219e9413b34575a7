#pragma once

#include <cmath>

namespace glzs {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// All internal frequencies are angular (rad/s); the CLI and the schedule DSL
// speak ordinary frequency (kHz) and convert exactly once at the boundary.
inline constexpr double rad_per_s_from_khz(double khz) { return two_pi * 1.0e3 * khz; }
inline constexpr double khz_from_rad_per_s(double w) { return w / (two_pi * 1.0e3); }

inline constexpr double seconds_from_us(double us) { return 1.0e-6 * us; }
inline constexpr double us_from_seconds(double s) { return 1.0e6 * s; }

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a <= -pi) a += two_pi;
    if (a > pi) a -= two_pi;
    return a;
}

} // namespace glzs
