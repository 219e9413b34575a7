#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "glzs/state.hpp"
#include "glzs/units.hpp"

namespace glzs {

// Closed-form adiabatic-impulse theory of the interferometer.  Matrices in
// this module act on adiabatic-basis amplitudes ordered (c_minus, c_plus)
// (index 0 = lower level), unlike the bare-basis StateVector.

// Asymptotic transition probability for a linear crossing with minimum gap
// delta_0 and drive sweep rate v = dOmega/dt at the crossing.
inline double lz_probability(double delta_0, double v) {
    if (v == 0.0) throw std::invalid_argument("lz_probability: sweep rate must be nonzero");
    return std::exp(-pi * delta_0 * delta_0 / (2.0 * std::abs(v)));
}

// Dimensionless adiabaticity parameter of a crossing; lz_probability equals
// exp(-2 pi delta) in terms of it.
inline double lz_adiabaticity(double delta_0, double v) {
    if (v == 0.0) throw std::invalid_argument("lz_adiabaticity: sweep rate must be nonzero");
    return delta_0 * delta_0 / (4.0 * std::abs(v));
}

// Continuous-branch log-gamma via the Lanczos approximation (g = 7, 9
// coefficients); accurate to ~1e-13 on Re(z) >= 0.5, which covers every use
// here (z = 1 - i delta).
inline complexd log_gamma(complexd z) {
    static constexpr double g = 7.0;
    static constexpr double c[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};
    z -= 1.0;
    complexd x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    const complexd t = z + g + 0.5;
    return 0.5 * std::log(two_pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Stokes phase of a linear crossing as a function of the adiabaticity
// parameter: pi/4 + delta (ln delta - 1) + arg Gamma(1 - i delta).
inline double stokes_phase(double delta_adiabaticity) {
    if (delta_adiabaticity < 0.0)
        throw std::invalid_argument("stokes_phase: adiabaticity parameter must be >= 0");
    if (delta_adiabaticity == 0.0) return 0.25 * pi;
    const double d = delta_adiabaticity;
    return 0.25 * pi + d * (std::log(d) - 1.0) + std::imag(log_gamma(complexd{1.0, -d}));
}

struct ImpulseParams {
    double p_lz = 0.5;
    double stokes_phase = 0.0;
    double xi_a = 0.0; // dynamic phase accumulated after the crossing
    double xi_b = 0.0; // dynamic phase accumulated before the crossing
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;
};

namespace detail {

inline Unitary2 sigma_z_phase(double xi) {
    Unitary2 u;
    u(0, 0) = std::polar(1.0, xi);
    u(1, 1) = std::polar(1.0, -xi);
    return u;
}

// crossing matrix N in the (minus, plus) basis
inline Unitary2 crossing_matrix(double p_lz, double phi_s) {
    const double q = std::sqrt(1.0 - p_lz);
    const double p = std::sqrt(p_lz);
    Unitary2 n;
    n(0, 0) = q * std::polar(1.0, -phi_s);
    n(0, 1) = -p;
    n(1, 0) = p;
    n(1, 1) = q * std::polar(1.0, phi_s);
    return n;
}

// instantaneous level inversion with equatorial axis azimuth chi
inline Unitary2 adiabatic_inversion(double chi) {
    Unitary2 x;
    x(0, 0) = x(1, 1) = 0.0;
    x(0, 1) = std::polar(1.0, chi);
    x(1, 0) = std::polar(1.0, -chi);
    return x;
}

} // namespace detail

// Single-passage evolution matrix U_a N U_b with U_{a,b} = exp(i xi sigma_z).
inline Unitary2 impulse_transition(const ImpulseParams& p) {
    if (!(p.p_lz >= 0.0 && p.p_lz <= 1.0))
        throw std::invalid_argument("impulse_transition: p_lz must be in [0, 1]");
    return compose(detail::sigma_z_phase(p.xi_a),
                   compose(detail::crossing_matrix(p.p_lz, p.stokes_phase),
                           detail::sigma_z_phase(p.xi_b)));
}

// diag(e^{i gamma_minus}, e^{i gamma_plus}) in the adiabatic basis.
inline Unitary2 geometric_operator(double gamma_minus, double gamma_plus) {
    Unitary2 u;
    u(0, 0) = std::polar(1.0, gamma_minus);
    u(1, 1) = std::polar(1.0, gamma_plus);
    return u;
}

// Geometric phases for azimuthal transport by dphi at polar angle theta:
// gamma_{-,+} = +-(dphi/2)(1 - cos theta).
inline std::pair<double, double> berry_phase_circular(double theta, double dphi) {
    if (!(theta >= 0.0 && theta <= pi))
        throw std::invalid_argument("berry_phase_circular: theta must be in [0, pi]");
    const double g = 0.5 * dphi * (1.0 - std::cos(theta));
    return {g, -g};
}

// Final upper-level population of the composite interferometer,
//   psi_f = U~_LZ . U_G2 . X_echo . U_G1 . U_LZ |psi_minus>,
// with U_LZ = U_a N U_b per the impulse model, the echo X off-diagonal with
// entries e^{+-i chi}, the arm transport carried by the geometric operator
// U_G1 = diag(e^{+i phi_0/2}, e^{-i phi_0/2}), and the return passage
// U~_LZ = U_b (X N^dagger X^-1) U_a: the first crossing seen through the
// inversion, traversed backwards, with mirrored dynamic phases (the second
// sweep retraces the |B(t)| profile of the first in reverse).  With this
// pairing every one of xi_a, xi_b, the Stokes phase, and the echo azimuth
// cancels identically and the population reduces to the fringe law
// 2 p (1 - p)(1 - cos phi_0).
inline double glzs_population(double p_lz, double phi_0, double xi_a, double xi_b,
                              double stokes, double echo_azimuth) {
    if (!(p_lz >= 0.0 && p_lz <= 1.0))
        throw std::invalid_argument("glzs_population: p_lz must be in [0, 1]");
    using namespace detail;
    const Unitary2 n = crossing_matrix(p_lz, stokes);
    const Unitary2 x = adiabatic_inversion(echo_azimuth);
    const Unitary2 u_lz = compose(sigma_z_phase(xi_a), compose(n, sigma_z_phase(xi_b)));
    const Unitary2 n_back = compose(x, compose(dagger(n), dagger(x)));
    const Unitary2 u_lz_back = compose(sigma_z_phase(xi_b), compose(n_back, sigma_z_phase(xi_a)));
    const Unitary2 g1 = geometric_operator(0.5 * phi_0, -0.5 * phi_0);

    Unitary2 total = u_lz;
    total = compose(g1, total);
    total = compose(x, total);
    total = compose(u_lz_back, total);
    // initial amplitude in the lower level; measured population is of the
    // level the inversion maps onto |up> at readout (index 0 here)
    return std::norm(total(0, 0));
}

// Sweep duration for which the asymptotic transition probability equals
// target_p, from inverting lz_probability with v = 2 omega_i / T.
inline double calibrate_sweep_time(double delta_0, double omega_i, double target_p) {
    if (!(target_p > 0.0 && target_p < 1.0))
        throw std::invalid_argument("calibrate_sweep_time: target probability must be in (0, 1)");
    if (delta_0 <= 0.0 || omega_i <= 0.0)
        throw std::invalid_argument("calibrate_sweep_time: delta_0 and omega_i must be positive");
    return -4.0 * omega_i * std::log(target_p) / (pi * delta_0 * delta_0);
}

} // namespace glzs
