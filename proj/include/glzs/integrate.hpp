#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "glzs/eigensystem.hpp"
#include "glzs/propagator.hpp"
#include "glzs/schedule.hpp"

namespace glzs {

struct IntegratorConfig {
    double max_phase_per_step = 0.05;          // rad of |B| dt per step
    double max_field_rotation_per_step = 0.01; // rad of n-hat motion per step
    int min_steps_per_segment = 64;
    int record_stride = 0;     // 0: record segment boundaries only; k: every k-th step too
    bool track_adiabatic = true; // eigenbasis outputs (errors on |B| = 0 samples)
};

struct StageWindow {
    std::string label;
    double t_start;
    double t_end;
};

// Time-sampled record of a run: bare and adiabatic populations, adiabatic
// energies, and the accumulated discrete Pancharatnam phase of each level,
//   berry_{level}(t) = -sum_k arg <psi_level(t_k) | psi_level(t_{k+1})>,
// evaluated in the fixed gauge of adiabatic_eigenbasis at every internal
// integration step (not only at the recorded samples).
struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<double> p_up_bare;
    std::vector<double> p_plus_adiabatic;
    std::vector<double> e_minus;
    std::vector<double> e_plus;
    std::vector<double> berry_minus;
    std::vector<double> berry_plus;

    std::vector<StageWindow> stages;
    std::vector<double> echo_times;
    double duration = 0.0;
    // most negative real part seen among consecutive eigenstate overlaps;
    // <= 0 means the discrete Pancharatnam series lost its gauge
    double berry_min_overlap_re = 1.0;

    const StateVector& final_state() const { return states.back(); }

    // index of the recorded sample closest to t
    std::size_t sample_index_at(double t) const {
        std::size_t best = 0;
        double err = std::abs(times.front() - t);
        for (std::size_t i = 1; i < times.size(); ++i) {
            const double e = std::abs(times[i] - t);
            if (e < err) { err = e; best = i; }
        }
        return best;
    }
};

// Advance a state through a schedule with midpoint-sampled piecewise-constant
// exact propagators.  The per-segment step count satisfies
//   dt <= min(max_phase_per_step / max|B|,
//             max_field_rotation_per_step / max|dn/dt|,
//             duration / min_steps_per_segment).
inline Trajectory evolve(const Schedule& sched, const StateVector& initial,
                         const IntegratorConfig& cfg = {}) {
    if (cfg.max_phase_per_step <= 0.0 || cfg.max_field_rotation_per_step <= 0.0 ||
        cfg.min_steps_per_segment <= 0)
        throw std::invalid_argument("evolve: integrator tolerances must be positive");

    Trajectory tr;
    tr.duration = sched.total_duration();
    const auto& segs = sched.segments();
    for (std::size_t i = 0; i < segs.size(); ++i)
        tr.stages.push_back({segs[i].label, sched.segment_start(i), sched.segment_end(i)});

    StateVector psi = initial;
    double berry_m = 0.0, berry_p = 0.0;
    bool have_prev_eigen = false;
    EigenPair prev_eigen;

    const double err_scale = 1.0 + std::abs(sched.error_offsets().amp_scale_err);
    const double err_off = std::abs(sched.error_offsets().freq_offset);

    auto eigen_at = [&](const FieldPoint& f) -> EigenPair {
        if (field_magnitude(f) == 0.0)
            throw degenerate_field_error("evolve: adiabatic tracking requested at |B| = 0");
        return adiabatic_eigenbasis(f);
    };

    auto record = [&](double t, const FieldPoint& f) {
        tr.times.push_back(t);
        tr.states.push_back(psi);
        tr.p_up_bare.push_back(p_up(psi));
        if (cfg.track_adiabatic) {
            const EigenPair e = eigen_at(f);
            tr.p_plus_adiabatic.push_back(std::norm(inner(e.psi_plus, psi)));
            tr.e_minus.push_back(e.e_minus);
            tr.e_plus.push_back(e.e_plus);
            tr.berry_minus.push_back(berry_m);
            tr.berry_plus.push_back(berry_p);
        }
    };

    auto advance_berry = [&](const FieldPoint& f) {
        if (!cfg.track_adiabatic) return;
        const EigenPair e = eigen_at(f);
        if (have_prev_eigen) {
            const complexd om = inner(prev_eigen.psi_minus, e.psi_minus);
            const complexd op = inner(prev_eigen.psi_plus, e.psi_plus);
            tr.berry_min_overlap_re = std::min({tr.berry_min_overlap_re, std::real(om), std::real(op)});
            berry_m -= std::arg(om);
            berry_p -= std::arg(op);
        }
        prev_eigen = e;
        have_prev_eigen = true;
    };

    // first sample at t = 0 (field of the first positive-duration segment)
    {
        const FieldPoint f0 = sched.field_at(0.0);
        advance_berry(f0);
        record(0.0, f0);
    }

    double t = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const Segment& g = segs[i].segment;
        if (std::holds_alternative<EchoPulse>(g)) {
            const FieldPoint f = sched.field_at(t);
            const EigenPair e = eigen_at(f);
            const double chi = std::get<EchoPulse>(g).axis_azimuth;
            // off-diagonal inversion in the instantaneous eigenbasis
            const complexd x = std::polar(1.0, chi);
            const complexd cm = inner(e.psi_minus, psi);
            const complexd cp = inner(e.psi_plus, psi);
            const complexd nm = x * cp;
            const complexd np = std::conj(x) * cm;
            psi = {nm * e.psi_minus.amp_up + np * e.psi_plus.amp_up,
                   nm * e.psi_minus.amp_down + np * e.psi_plus.amp_down};
            tr.echo_times.push_back(t);
            continue;
        }
        if (std::holds_alternative<PhiJump>(g)) {
            // field-side discontinuity only; fold the eigenbasis jump into the
            // Pancharatnam series via the next segment's start field
            continue;
        }
        const double dur = segment_duration(g);
        if (dur == 0.0) continue;

        const double bmax = err_scale * segment_max_field(g) + err_off;
        const double rot = segment_max_rotation_rate(g);
        long long n = cfg.min_steps_per_segment;
        if (bmax > 0.0)
            n = std::max<long long>(n, static_cast<long long>(std::ceil(dur * bmax / cfg.max_phase_per_step)));
        if (std::isfinite(rot) && rot > 0.0)
            n = std::max<long long>(n, static_cast<long long>(std::ceil(dur * rot / cfg.max_field_rotation_per_step)));
        if (!std::isfinite(rot))
            throw std::invalid_argument("evolve: segment sweeps through |B| = 0 (unbounded rotation rate)");

        const double dt = dur / static_cast<double>(n);
        for (long long k = 0; k < n; ++k) {
            const FieldPoint mid = sched.apply_error(segment_field(g, (static_cast<double>(k) + 0.5) * dt));
            psi = apply(step_propagator(mid, dt), psi);
            const double t_step = (k + 1 == n) ? t + dur : t + static_cast<double>(k + 1) * dt;
            const FieldPoint fb = sched.apply_error(segment_field(g, (k + 1 == n) ? dur : static_cast<double>(k + 1) * dt));
            advance_berry(fb);
            const bool at_end = (k + 1 == n);
            if (at_end || (cfg.record_stride > 0 && (k + 1) % cfg.record_stride == 0))
                record(t_step, fb);
        }
        t += dur;
    }
    return tr;
}

} // namespace glzs
