#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "glzs/segment.hpp"

namespace glzs {

// Static control errors: Omega -> (1 + amp_scale_err) * Omega everywhere,
// Delta -> Delta + freq_offset everywhere.  One draw is held fixed through a
// whole run (quasi-static model).
struct ErrorOffsets {
    double amp_scale_err = 0.0; // dimensionless
    double freq_offset = 0.0;   // rad/s
};

struct LabeledSegment {
    Segment segment;
    std::string label; // stage name ("1", "2", "3a", "S1", ...); may be empty
};

// Ordered list of control segments with derived boundary times.  Immutable
// in practice: build (or parse), then evaluate.
class Schedule {
public:
    Schedule() = default;
    explicit Schedule(std::vector<LabeledSegment> segs, ErrorOffsets err = {})
        : segments_(std::move(segs)), err_(err) {
        rebuild_boundaries();
    }

    const std::vector<LabeledSegment>& segments() const { return segments_; }
    const ErrorOffsets& error_offsets() const { return err_; }
    double total_duration() const { return boundaries_.empty() ? 0.0 : boundaries_.back(); }

    // Start time of segment i (boundaries_[i]) and end time (boundaries_[i+1]).
    double segment_start(std::size_t i) const { return boundaries_.at(i); }
    double segment_end(std::size_t i) const { return boundaries_.at(i + 1); }

    bool has_error_offsets() const { return err_.amp_scale_err != 0.0 || err_.freq_offset != 0.0; }

    FieldPoint apply_error(const FieldPoint& f) const {
        return {(1.0 + err_.amp_scale_err) * f.omega, f.delta + err_.freq_offset, f.phi};
    }

    // Piecewise evaluation with the right-limit convention at interior
    // boundaries; t must be in [0, total_duration].
    FieldPoint field_at(double t) const {
        if (segments_.empty()) throw std::out_of_range("field_at: empty schedule");
        if (t < 0.0 || t > total_duration())
            throw std::out_of_range("field_at: t outside [0, total_duration]");
        const std::size_t i = segment_index_at(t);
        return apply_error(segment_field(segments_[i].segment, t - boundaries_[i]));
    }

    // Index of the segment whose half-open interval [start, end) contains t;
    // zero-duration segments are skipped, t = duration maps to the last
    // positive-duration segment.
    std::size_t segment_index_at(double t) const {
        // upper_bound over boundaries_[1..n]
        const auto it = std::upper_bound(boundaries_.begin() + 1, boundaries_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - boundaries_.begin()) - 1;
        if (i >= segments_.size()) i = segments_.size() - 1;
        while (i > 0 && segment_duration(segments_[i].segment) == 0.0) --i;
        while (i + 1 < segments_.size() && segment_duration(segments_[i].segment) == 0.0) ++i;
        return i;
    }

    // Time window [start, end] covered by segments carrying a given label.
    std::optional<std::pair<double, double>> stage_window(const std::string& label) const {
        double a = 0.0, b = 0.0;
        bool found = false;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            if (segments_[i].label != label) continue;
            if (!found) { a = boundaries_[i]; found = true; }
            b = boundaries_[i + 1];
        }
        if (!found) return std::nullopt;
        return std::make_pair(a, b);
    }

private:
    void rebuild_boundaries() {
        boundaries_.assign(1, 0.0);
        for (const auto& s : segments_) {
            const double d = segment_duration(s.segment);
            if (d < 0.0) throw std::invalid_argument("Schedule: negative segment duration");
            boundaries_.push_back(boundaries_.back() + d);
        }
    }

    std::vector<LabeledSegment> segments_;
    std::vector<double> boundaries_{0.0};
    ErrorOffsets err_{};
};

// Returns a copy with the static error composed in; segment structure and
// durations are untouched (the transform acts on evaluated fields).
inline Schedule apply_static_error(const Schedule& s, const ErrorOffsets& e) {
    if (1.0 + e.amp_scale_err <= 0.0)
        throw std::invalid_argument("apply_static_error: amplitude scale must keep 1 + eps > 0");
    ErrorOffsets combined = s.error_offsets();
    combined.amp_scale_err = (1.0 + combined.amp_scale_err) * (1.0 + e.amp_scale_err) - 1.0;
    combined.freq_offset += e.freq_offset;
    return Schedule(s.segments(), combined);
}

// ---------------------------------------------------------------------------
// Waveform sampling

// Left-endpoint uniform sampling at spacing 1/rate, final boundary sample
// included.  Streaming form; the vector form below enforces the memory
// budget.
inline void sample_waveform_stream(const Schedule& s, double rate,
                                   const std::function<void(double, const FieldPoint&)>& emit) {
    if (rate <= 0.0) throw std::invalid_argument("sample_waveform: rate must be positive");
    const double dur = s.total_duration();
    const long long n_regular = static_cast<long long>(std::floor(dur * rate * (1.0 + 1e-12)));
    for (long long i = 0; i <= n_regular; ++i) {
        const double t = static_cast<double>(i) / rate;
        if (t > dur) break;
        emit(t, s.field_at(t));
    }
    const double t_last = static_cast<double>(n_regular) / rate;
    if (t_last < dur * (1.0 - 1e-12)) emit(dur, s.field_at(dur));
}

struct WaveformSample {
    double t;
    FieldPoint field;
};

inline constexpr std::size_t waveform_memory_budget = 10'000'000;

inline std::vector<WaveformSample> sample_waveform(const Schedule& s, double rate) {
    if (rate <= 0.0) throw std::invalid_argument("sample_waveform: rate must be positive");
    const double expected = s.total_duration() * rate + 2.0;
    if (expected > static_cast<double>(waveform_memory_budget))
        throw std::length_error("sample_waveform: sample count exceeds in-memory budget; use streaming");
    std::vector<WaveformSample> out;
    out.reserve(static_cast<std::size_t>(expected));
    sample_waveform_stream(s, rate, [&](double t, const FieldPoint& f) { out.push_back({t, f}); });
    return out;
}

// ---------------------------------------------------------------------------
// Validation diagnostics

struct ContinuityViolation {
    std::size_t boundary_index; // between segment i and i+1
    double jump;                // |B_end - B_start| (Cartesian, rad/s)
    double scale;               // field magnitude used for the relative test
};

struct SegmentReport {
    std::size_t index;
    std::string kind;
    std::string label;
    double duration;
    double adiabaticity; // max |dn/dt| / |B| over the segment (dimensionless)
};

struct ArmSymmetryReport {
    bool has_echo = false;
    double arm_a_duration = 0.0;
    double arm_b_duration = 0.0;
    double max_field_mismatch = 0.0; // max ||B_A(t)| - |B_B(mirror t)|| over samples
};

struct Diagnostics {
    std::vector<ContinuityViolation> continuity_violations;
    std::vector<SegmentReport> segment_reports;
    ArmSymmetryReport arm_symmetry;
    bool ok() const { return continuity_violations.empty(); }
    std::string summary() const {
        std::ostringstream os;
        if (ok()) os << "continuity: ok";
        else {
            os << "continuity: " << continuity_violations.size() << " violation(s):";
            for (const auto& v : continuity_violations)
                os << " [boundary " << v.boundary_index << " jump " << v.jump << " rad/s]";
        }
        return os.str();
    }
};

// Continuity of the Cartesian field across boundaries (echo/jump exempt),
// per-segment adiabaticity figures, and the arm-symmetry report used by the
// echo cancellation argument.
inline Diagnostics validate(const Schedule& s) {
    Diagnostics d;
    const auto& segs = s.segments();

    auto is_exempt = [](const Segment& g) {
        return std::holds_alternative<EchoPulse>(g) || std::holds_alternative<PhiJump>(g);
    };

    // continuity across consecutive positive-duration segments
    std::ptrdiff_t prev = -1;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (is_exempt(segs[i].segment)) continue;
        if (segment_duration(segs[i].segment) == 0.0 && !is_exempt(segs[i].segment)) {
            // zero-duration hold: treat as a point sample, still checked
        }
        if (prev >= 0) {
            bool jump_between = false;
            for (std::size_t k = static_cast<std::size_t>(prev) + 1; k < i; ++k)
                if (std::holds_alternative<PhiJump>(segs[k].segment)) jump_between = true;
            if (!jump_between) {
                const auto& a = segs[static_cast<std::size_t>(prev)].segment;
                const auto& b = segs[i].segment;
                const FieldPoint fa = segment_field(a, segment_duration(a));
                const FieldPoint fb = segment_field(b, 0.0);
                const auto ca = field_components(fa);
                const auto cb = field_components(fb);
                const double jump = std::sqrt((ca[0] - cb[0]) * (ca[0] - cb[0]) +
                                              (ca[1] - cb[1]) * (ca[1] - cb[1]) +
                                              (ca[2] - cb[2]) * (ca[2] - cb[2]));
                const double scale = std::max({field_magnitude(fa), field_magnitude(fb), 1.0});
                if (jump > 1.0e-9 * scale)
                    d.continuity_violations.push_back({i, jump, scale});
            }
        }
        prev = static_cast<std::ptrdiff_t>(i);
    }

    for (std::size_t i = 0; i < segs.size(); ++i) {
        SegmentReport r;
        r.index = i;
        r.kind = segment_kind(segs[i].segment);
        r.label = segs[i].label;
        r.duration = segment_duration(segs[i].segment);
        double fig = 0.0;
        if (r.duration > 0.0) {
            // sample-based: robust for every segment shape
            const int n = 64;
            for (int k = 0; k <= n; ++k) {
                const double t = r.duration * k / n;
                const double b = field_magnitude(segment_field(segs[i].segment, t));
                if (b > 0.0) {
                    const double rate = segment_max_rotation_rate(segs[i].segment);
                    fig = std::max(fig, rate / b);
                }
            }
        }
        r.adiabaticity = fig;
        d.segment_reports.push_back(r);
    }

    // arm symmetry around a single echo: compare |B(t)| on [t3, t_echo] with
    // its mirror on [t_echo, t7], where t3/t7 bound the inter-sweep window
    std::vector<std::size_t> echoes;
    std::vector<std::size_t> sweeps;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (std::holds_alternative<EchoPulse>(segs[i].segment)) echoes.push_back(i);
        if (std::holds_alternative<OmegaSweep>(segs[i].segment)) sweeps.push_back(i);
    }
    if (echoes.size() == 1 && sweeps.size() == 2 && sweeps[0] < echoes[0] && echoes[0] < sweeps[1]) {
        d.arm_symmetry.has_echo = true;
        const double t3 = s.segment_end(sweeps[0]);
        const double te = s.segment_start(echoes[0]);
        const double t7 = s.segment_start(sweeps[1]);
        d.arm_symmetry.arm_a_duration = te - t3;
        d.arm_symmetry.arm_b_duration = t7 - te;
        const int n = 256;
        double mism = 0.0;
        if (d.arm_symmetry.arm_a_duration > 0.0 && d.arm_symmetry.arm_b_duration > 0.0) {
            for (int k = 0; k <= n; ++k) {
                const double u = static_cast<double>(k) / n;
                const double ba = field_magnitude(s.field_at(t3 + u * (te - t3)));
                const double bb = field_magnitude(s.field_at(t7 - u * (t7 - te)));
                mism = std::max(mism, std::abs(ba - bb));
            }
        }
        d.arm_symmetry.max_field_mismatch = mism;
    }
    return d;
}

} // namespace glzs
