#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "glzs/units.hpp"

namespace glzs {

// Control triple (Omega, Delta, phi) of the effective field
// B = (Omega cos phi, Omega sin phi, Delta), everything in rad/s.
// omega may be signed: (omega, phi) and (-omega, phi + pi) describe the same
// Cartesian field.
struct FieldPoint {
    double omega = 0.0;
    double delta = 0.0;
    double phi = 0.0;
};

inline std::array<double, 3> field_components(const FieldPoint& f) {
    return {f.omega * std::cos(f.phi), f.omega * std::sin(f.phi), f.delta};
}

inline double field_magnitude(const FieldPoint& f) {
    return std::hypot(f.omega, f.delta);
}

// Canonical representative with omega >= 0 and phi in (-pi, pi].
inline FieldPoint canonicalized(const FieldPoint& f) {
    if (f.omega < 0.0) return {-f.omega, f.delta, wrap_angle(f.phi + pi)};
    return {f.omega, f.delta, wrap_angle(f.phi)};
}

// Polar angle of the field direction, measured from +z; uses the canonical
// (omega >= 0) representation so theta is in [0, pi].
inline double field_polar_angle(const FieldPoint& f) {
    return std::atan2(std::abs(f.omega), f.delta);
}

struct degenerate_field_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace glzs
