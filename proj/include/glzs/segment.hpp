#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "glzs/field.hpp"

namespace glzs {

// Piecewise control primitives.  Every segment evaluates the control triple
// (Omega, Delta, phi) at a local time in [0, duration].

// theta linear in time at fixed |B| and azimuth: Omega = b sin(theta),
// Delta = b cos(theta).  theta may be signed; negative theta means the
// azimuth phi + pi.
struct ThetaRamp {
    double b_mag = 0.0;       // rad/s
    double theta_start = 0.0; // rad
    double theta_end = 0.0;   // rad
    double duration = 0.0;    // s
    double phi = 0.0;         // rad
};

// Omega linear in time at fixed detuning and azimuth.
struct OmegaSweep {
    double omega_start = 0.0;
    double omega_end = 0.0;
    double delta = 0.0;
    double phi = 0.0;
    double duration = 0.0;
};

// Delta linear in time at fixed drive and azimuth.
struct DeltaRamp {
    double omega = 0.0;
    double delta_start = 0.0;
    double delta_end = 0.0;
    double phi = 0.0;
    double duration = 0.0;
};

// Azimuth linear in time at fixed Omega and Delta.
struct PhiRamp {
    double omega = 0.0;
    double delta = 0.0;
    double phi_start = 0.0;
    double phi_end = 0.0;
    double duration = 0.0;
};

struct Hold {
    FieldPoint field;
    double duration = 0.0;
};

// Instantaneous inversion of the adiabatic amplitudes; off-diagonal in the
// instantaneous eigenbasis with entries e^{+-i axis_azimuth}.  Zero duration.
struct EchoPulse {
    double axis_azimuth = 0.0;
};

// Instantaneous azimuth jump of the control phase.  Zero duration; the state
// is untouched, so any population moved between adiabatic levels is genuine
// diabatic leakage.
struct PhiJump {
    double phi_new = 0.0;
};

using Segment = std::variant<ThetaRamp, OmegaSweep, DeltaRamp, PhiRamp, Hold, EchoPulse, PhiJump>;

inline double segment_duration(const Segment& s) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, EchoPulse> || std::is_same_v<T, PhiJump>) return 0.0;
            else return v.duration;
        },
        s);
}

// Control triple at local time t in [0, duration].  Zero-duration segments
// have no interior; EchoPulse/PhiJump evaluation is a contract violation.
inline FieldPoint segment_field(const Segment& s, double t) {
    struct V {
        double t;
        FieldPoint operator()(const ThetaRamp& r) const {
            const double u = r.duration > 0.0 ? t / r.duration : 0.0;
            const double th = r.theta_start + (r.theta_end - r.theta_start) * u;
            return {r.b_mag * std::sin(th), r.b_mag * std::cos(th), r.phi};
        }
        FieldPoint operator()(const OmegaSweep& r) const {
            const double u = r.duration > 0.0 ? t / r.duration : 0.0;
            return {r.omega_start + (r.omega_end - r.omega_start) * u, r.delta, r.phi};
        }
        FieldPoint operator()(const DeltaRamp& r) const {
            const double u = r.duration > 0.0 ? t / r.duration : 0.0;
            return {r.omega, r.delta_start + (r.delta_end - r.delta_start) * u, r.phi};
        }
        FieldPoint operator()(const PhiRamp& r) const {
            const double u = r.duration > 0.0 ? t / r.duration : 0.0;
            return {r.omega, r.delta, r.phi_start + (r.phi_end - r.phi_start) * u};
        }
        FieldPoint operator()(const Hold& r) const { return r.field; }
        FieldPoint operator()(const EchoPulse&) const {
            throw std::logic_error("segment_field: EchoPulse has no field interior");
        }
        FieldPoint operator()(const PhiJump&) const {
            throw std::logic_error("segment_field: PhiJump has no field interior");
        }
    };
    return std::visit(V{t}, s);
}

inline double segment_max_field(const Segment& s) {
    struct V {
        double operator()(const ThetaRamp& r) const { return std::abs(r.b_mag); }
        double operator()(const OmegaSweep& r) const {
            return std::max(std::hypot(r.omega_start, r.delta), std::hypot(r.omega_end, r.delta));
        }
        double operator()(const DeltaRamp& r) const {
            return std::max(std::hypot(r.omega, r.delta_start), std::hypot(r.omega, r.delta_end));
        }
        double operator()(const PhiRamp& r) const { return std::hypot(r.omega, r.delta); }
        double operator()(const Hold& r) const { return field_magnitude(r.field); }
        double operator()(const EchoPulse&) const { return 0.0; }
        double operator()(const PhiJump&) const { return 0.0; }
    };
    return std::visit(V{}, s);
}

// Upper bound on |d n_hat / dt| over the segment, rad/s on the sphere.
inline double segment_max_rotation_rate(const Segment& s) {
    struct V {
        double operator()(const ThetaRamp& r) const {
            return r.duration > 0.0 ? std::abs(r.theta_end - r.theta_start) / r.duration : 0.0;
        }
        double operator()(const OmegaSweep& r) const {
            if (r.duration <= 0.0) return 0.0;
            const double rate = std::abs(r.omega_end - r.omega_start) / r.duration;
            // d theta/dt = rate * Delta / B^2, maximal where |B| is least
            const bool spans_zero = (r.omega_start <= 0.0) != (r.omega_end <= 0.0) ||
                                    r.omega_start == 0.0 || r.omega_end == 0.0;
            double b2min;
            if (spans_zero) b2min = r.delta * r.delta;
            else b2min = std::min(r.omega_start * r.omega_start, r.omega_end * r.omega_end) + r.delta * r.delta;
            if (b2min == 0.0) return std::numeric_limits<double>::infinity();
            return rate * std::abs(r.delta) / b2min;
        }
        double operator()(const DeltaRamp& r) const {
            if (r.duration <= 0.0) return 0.0;
            const double rate = std::abs(r.delta_end - r.delta_start) / r.duration;
            const bool spans_zero = (r.delta_start <= 0.0) != (r.delta_end <= 0.0) ||
                                    r.delta_start == 0.0 || r.delta_end == 0.0;
            double b2min;
            if (spans_zero) b2min = r.omega * r.omega;
            else b2min = std::min(r.delta_start * r.delta_start, r.delta_end * r.delta_end) + r.omega * r.omega;
            if (b2min == 0.0) return std::numeric_limits<double>::infinity();
            return rate * std::abs(r.omega) / b2min;
        }
        double operator()(const PhiRamp& r) const {
            if (r.duration <= 0.0) return 0.0;
            const double b = std::hypot(r.omega, r.delta);
            if (b == 0.0) return 0.0;
            return std::abs(r.phi_end - r.phi_start) / r.duration * std::abs(r.omega) / b;
        }
        double operator()(const Hold&) const { return 0.0; }
        double operator()(const EchoPulse&) const { return 0.0; }
        double operator()(const PhiJump&) const { return 0.0; }
    };
    return std::visit(V{}, s);
}

inline std::string segment_kind(const Segment& s) {
    struct V {
        std::string operator()(const ThetaRamp&) const { return "theta-ramp"; }
        std::string operator()(const OmegaSweep&) const { return "omega-sweep"; }
        std::string operator()(const DeltaRamp&) const { return "delta-ramp"; }
        std::string operator()(const PhiRamp&) const { return "phi-ramp"; }
        std::string operator()(const Hold&) const { return "hold"; }
        std::string operator()(const EchoPulse&) const { return "echo"; }
        std::string operator()(const PhiJump&) const { return "phi-jump"; }
    };
    return std::visit(V{}, s);
}

} // namespace glzs
