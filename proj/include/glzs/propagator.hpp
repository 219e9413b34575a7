#pragma once

#include <cmath>

#include "glzs/field.hpp"
#include "glzs/state.hpp"

namespace glzs {

// Exact propagator U = exp(-i H dt) for H = (1/2) sigma . B held constant
// over dt: U = cos(|B| dt/2) I - i sin(|B| dt/2) sigma.n.  Unitary to machine
// precision by construction; this is the inner loop of every simulation.
inline Unitary2 step_propagator(const FieldPoint& f, double dt) {
    const double bx = f.omega * std::cos(f.phi);
    const double by = f.omega * std::sin(f.phi);
    const double bz = f.delta;
    const double b = std::sqrt(bx * bx + by * by + bz * bz);
    Unitary2 u;
    if (b == 0.0) return u;
    const double half = 0.5 * b * dt;
    const double c = std::cos(half);
    const double s = std::sin(half) / b;
    u(0, 0) = complexd{c, -s * bz};
    u(0, 1) = complexd{-s * by, -s * bx};
    u(1, 0) = complexd{s * by, -s * bx};
    u(1, 1) = complexd{c, s * bz};
    return u;
}

} // namespace glzs
