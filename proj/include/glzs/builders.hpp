#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "glzs/schedule.hpp"
#include "glzs/units.hpp"

namespace glzs {

// Adiabatic rotation per the parametrization Omega = |B| sin(theta),
// Delta = |B| cos(theta), theta linear in time at the given rate.
inline Segment build_adiabatic_rotation(double b_mag, double theta_start, double theta_end,
                                        double rate, double phi) {
    if (rate <= 0.0) throw std::invalid_argument("build_adiabatic_rotation: rate must be positive");
    const double dur = std::abs(theta_end - theta_start) / rate;
    if (dur == 0.0) {
        // degenerate rotation: a zero-length hold at the fixed field
        return Hold{{b_mag * std::sin(theta_start), b_mag * std::cos(theta_start), phi}, 0.0};
    }
    return ThetaRamp{b_mag, theta_start, theta_end, dur, phi};
}

// Linear Landau-Zener sweep Omega: +omega_i -> -omega_i over T at fixed
// detuning; the avoided crossing (Omega = 0) sits at T/2 and the sweep rate
// is v = 2 omega_i / T.
inline Segment build_lz_sweep(double omega_i, double delta_0, double T, double phi) {
    if (T <= 0.0) throw std::invalid_argument("build_lz_sweep: duration must be positive");
    return OmegaSweep{omega_i, -omega_i, delta_0, phi, T};
}

enum class PhiTransportMode {
    ramp_before_echo, // default: single azimuth ramp in arm A
    ramp_after_echo,  // single azimuth ramp in arm B
    jump_after_echo,  // instantaneous azimuth jump in arm B (leaky by design)
    split_ramp,       // half the transport in each arm: echo cancels the geometric phase
    delta_held,       // transport with Delta held at delta_0: stretched fringe period
};

inline std::string to_string(PhiTransportMode m) {
    switch (m) {
        case PhiTransportMode::ramp_before_echo: return "ramp-before-echo";
        case PhiTransportMode::ramp_after_echo: return "ramp-after-echo";
        case PhiTransportMode::jump_after_echo: return "jump-after-echo";
        case PhiTransportMode::split_ramp: return "split";
        case PhiTransportMode::delta_held: return "delta-held";
    }
    return "?";
}

inline PhiTransportMode phi_transport_mode_from_string(const std::string& s) {
    if (s == "ramp-before-echo") return PhiTransportMode::ramp_before_echo;
    if (s == "ramp-after-echo") return PhiTransportMode::ramp_after_echo;
    if (s == "jump-after-echo") return PhiTransportMode::jump_after_echo;
    if (s == "split") return PhiTransportMode::split_ramp;
    if (s == "delta-held") return PhiTransportMode::delta_held;
    throw std::invalid_argument("unknown phi transport mode: " + s);
}

struct GlzsParams {
    double omega_i = rad_per_s_from_khz(49.24);    // drive at the sweep ends
    double delta_0 = rad_per_s_from_khz(8.68);     // minimum gap
    double phi_0 = 0.0;                            // interferometer rotation angle
    double prep_rate = pi / 200.0e-6;              // theta rate for stages 1 and 5
    double lz_duration = 0.0;                      // 0 = calibrate for P_LZ = 1/2
    double delta_ramp_duration = 150.0e-6;         // equator reach (stages 3a/3b)
    double arm_hold_duration = 5.0e-3;             // transport ramp / mirror hold
    double pole_ramp_duration = 300.0e-6;          // echo excursion to the pole (S1/S2)
    double echo_azimuth = 0.0;
    PhiTransportMode phi_transport_mode = PhiTransportMode::ramp_before_echo;
};

// Closed-form inverse of the asymptotic transition formula for the sweep
// duration giving a target transition probability (see lzs_theory.hpp for
// the forward form).
inline double glzs_default_lz_duration(double delta_0, double omega_i, double target_p = 0.5) {
    return -4.0 * omega_i * std::log(target_p) / (pi * delta_0 * delta_0);
}

// The full geometric interferometer schedule.
//
// Layout (default mode), all azimuths in the FieldPoint phi convention with
// the arm drive kept at Omega = -omega_i (canonical azimuth pi):
//   1   theta ramp 0 -> theta*               prep |down> into the ground state
//   2   Omega sweep +omega_i -> -omega_i     first avoided-crossing passage
//   3a  Delta ramp delta_0 -> 0              reach the equator
//   3a  phi ramp 0 -> phi_0                  azimuth transport (the phase knob)
//   3a  Delta ramp 0 -> delta_0 at phi_0
//   S1  theta ramp -theta* -> 0 at phi_0     climb to the pole at |B| const
//   S   echo pulse (at the pole)             state inversion
//   S2  theta ramp 0 -> -theta* at phi 0     descend in the original frame
//   3b  Delta ramp delta_0 -> 0
//   3b  hold at the equator                  mirrors the transport duration
//   3b  Delta ramp 0 -> delta_0
//   4   Omega sweep -omega_i -> +omega_i     second passage, reversed
//   5   theta ramp theta* -> 0               map psi-/psi+ onto |down>/|up>
//
// The two arms (sweep end to echo, echo to sweep start) are exact time
// mirrors of each other in |B(t)|, so every dynamic phase cancels across the
// inversion.  The azimuth excursion closes through the pole, which makes the
// accumulated relative phase purely geometric: the solid angle phi_0 times
// (1 - cos theta) of the transport latitude (1 at the equator).
inline Schedule build_glzs(const GlzsParams& p) {
    if (p.omega_i <= 0.0 || p.delta_0 <= 0.0)
        throw std::invalid_argument("build_glzs: omega_i and delta_0 must be positive");
    if (p.prep_rate <= 0.0) throw std::invalid_argument("build_glzs: prep_rate must be positive");
    if (p.delta_ramp_duration <= 0.0 || p.arm_hold_duration <= 0.0 || p.pole_ramp_duration <= 0.0)
        throw std::invalid_argument("build_glzs: durations must be positive");
    const double T = p.lz_duration > 0.0 ? p.lz_duration
                                         : glzs_default_lz_duration(p.delta_0, p.omega_i);
    const double b0 = std::hypot(p.omega_i, p.delta_0);
    const double th = std::atan2(p.omega_i, p.delta_0);
    const double R = p.delta_ramp_duration;
    const double H = p.arm_hold_duration;
    const double W = p.pole_ramp_duration;
    const double wi = p.omega_i;
    const double d0 = p.delta_0;
    const double f0 = p.phi_0;

    std::vector<LabeledSegment> v;
    v.push_back({ThetaRamp{b0, 0.0, th, th / p.prep_rate, 0.0}, "1"});
    v.push_back({OmegaSweep{wi, -wi, d0, 0.0, T}, "2"});

    auto climb = [&](double phi) { return ThetaRamp{b0, -th, 0.0, W, phi}; };
    auto descend = [&](double phi) { return ThetaRamp{b0, 0.0, -th, W, phi}; };

    switch (p.phi_transport_mode) {
        case PhiTransportMode::ramp_before_echo:
            v.push_back({DeltaRamp{-wi, d0, 0.0, 0.0, R}, "3a"});
            v.push_back({PhiRamp{-wi, 0.0, 0.0, f0, H}, "3a"});
            v.push_back({DeltaRamp{-wi, 0.0, d0, f0, R}, "3a"});
            v.push_back({climb(f0), "S1"});
            v.push_back({EchoPulse{p.echo_azimuth}, "S"});
            v.push_back({descend(0.0), "S2"});
            v.push_back({DeltaRamp{-wi, d0, 0.0, 0.0, R}, "3b"});
            v.push_back({Hold{{-wi, 0.0, 0.0}, H}, "3b"});
            v.push_back({DeltaRamp{-wi, 0.0, d0, 0.0, R}, "3b"});
            break;
        case PhiTransportMode::ramp_after_echo:
            v.push_back({DeltaRamp{-wi, d0, 0.0, 0.0, R}, "3a"});
            v.push_back({Hold{{-wi, 0.0, 0.0}, H}, "3a"});
            v.push_back({DeltaRamp{-wi, 0.0, d0, 0.0, R}, "3a"});
            v.push_back({climb(0.0), "S1"});
            v.push_back({EchoPulse{p.echo_azimuth}, "S"});
            v.push_back({descend(-f0), "S2"});
            v.push_back({DeltaRamp{-wi, d0, 0.0, -f0, R}, "3b"});
            v.push_back({PhiRamp{-wi, 0.0, -f0, 0.0, H}, "3b"});
            v.push_back({DeltaRamp{-wi, 0.0, d0, 0.0, R}, "3b"});
            break;
        case PhiTransportMode::jump_after_echo:
            v.push_back({DeltaRamp{-wi, d0, 0.0, 0.0, R}, "3a"});
            v.push_back({Hold{{-wi, 0.0, 0.0}, H}, "3a"});
            v.push_back({DeltaRamp{-wi, 0.0, d0, 0.0, R}, "3a"});
            v.push_back({climb(0.0), "S1"});
            v.push_back({EchoPulse{p.echo_azimuth}, "S"});
            v.push_back({descend(-f0), "S2"});
            v.push_back({DeltaRamp{-wi, d0, 0.0, -f0, R}, "3b"});
            v.push_back({PhiJump{0.0}, "3b"});
            v.push_back({Hold{{-wi, 0.0, 0.0}, H}, "3b"});
            v.push_back({DeltaRamp{-wi, 0.0, d0, 0.0, R}, "3b"});
            break;
        case PhiTransportMode::split_ramp:
            v.push_back({DeltaRamp{-wi, d0, 0.0, 0.0, R}, "3a"});
            v.push_back({PhiRamp{-wi, 0.0, 0.0, 0.5 * f0, H}, "3a"});
            v.push_back({DeltaRamp{-wi, 0.0, d0, 0.5 * f0, R}, "3a"});
            v.push_back({climb(0.5 * f0), "S1"});
            v.push_back({EchoPulse{p.echo_azimuth}, "S"});
            v.push_back({descend(-0.5 * f0), "S2"});
            v.push_back({DeltaRamp{-wi, d0, 0.0, -0.5 * f0, R}, "3b"});
            v.push_back({PhiRamp{-wi, 0.0, -0.5 * f0, 0.0, H}, "3b"});
            v.push_back({DeltaRamp{-wi, 0.0, d0, 0.0, R}, "3b"});
            break;
        case PhiTransportMode::delta_held:
            v.push_back({PhiRamp{-wi, d0, 0.0, f0, H}, "3a"});
            v.push_back({climb(f0), "S1"});
            v.push_back({EchoPulse{p.echo_azimuth}, "S"});
            v.push_back({descend(0.0), "S2"});
            v.push_back({Hold{{-wi, d0, 0.0}, H}, "3b"});
            break;
    }

    v.push_back({OmegaSweep{-wi, wi, d0, 0.0, T}, "4"});
    v.push_back({ThetaRamp{b0, th, 0.0, th / p.prep_rate, 0.0}, "5"});
    return Schedule(std::move(v));
}

} // namespace glzs
