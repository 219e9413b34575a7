#pragma once

#include <cmath>
#include <utility>

#include "glzs/field.hpp"
#include "glzs/state.hpp"

namespace glzs {

// Instantaneous eigensystem of H = (1/2) sigma . B.  Gauge convention: the
// amp_down component of psi_minus is real and >= 0 (amp_up real >= 0 when the
// field points along -z); psi_plus with the roles of the components swapped.
// With theta = atan2(|Omega|, Delta) and the canonical azimuth this is
//   psi_minus = (-sin(theta/2) e^{-i phi}, cos(theta/2))
//   psi_plus  = ( cos(theta/2),  sin(theta/2) e^{+i phi})
struct EigenPair {
    StateVector psi_minus;
    StateVector psi_plus;
    double e_minus = 0.0; // rad/s
    double e_plus = 0.0;
};

inline EigenPair adiabatic_eigenbasis(const FieldPoint& f) {
    const double b = field_magnitude(f);
    if (b == 0.0) throw degenerate_field_error("adiabatic_eigenbasis: |B| = 0 has no unique eigenbasis");
    const FieldPoint c = canonicalized(f);
    const double theta = std::atan2(c.omega, c.delta);
    const double ch = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    EigenPair e;
    e.e_minus = -0.5 * b;
    e.e_plus = 0.5 * b;
    if (ch < 1.0e-15) {
        // field along -z: the azimuth is unphysical, pin the gauge explicitly
        e.psi_minus = StateVector::up();
        e.psi_plus = StateVector::down();
        return e;
    }
    const complexd eiphi = std::polar(1.0, c.phi);
    e.psi_minus = {-sh * std::conj(eiphi), ch};
    e.psi_plus = {ch, sh * eiphi};
    return e;
}

// Populations of the instantaneous eigenstates, (p_minus, p_plus).
inline std::pair<double, double> adiabatic_populations(const StateVector& s, const FieldPoint& f) {
    const EigenPair e = adiabatic_eigenbasis(f);
    return {std::norm(inner(e.psi_minus, s)), std::norm(inner(e.psi_plus, s))};
}

} // namespace glzs
