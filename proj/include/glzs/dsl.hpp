#pragma once

#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "glzs/schedule.hpp"
#include "glzs/units.hpp"

namespace glzs {

// Line-oriented schedule language.  '#' starts a comment; one directive per
// line:
//   set <name> <quantity>
//   prep theta <angle> -> <angle> rate <rate> bmag <freq> [phi <angle>] [label <w>]
//   sweep omega <freq> -> <freq> delta <freq> for <time> [phi <angle>] [label <w>]
//   ramp delta <freq> -> <freq> omega <freq> for <time> [phi <angle>] [label <w>]
//   ramp phi <angle> -> <angle> omega <freq> delta <freq> for <time> [label <w>]
//   hold omega <freq> delta <freq> phi <angle> for <time> [label <w>]
//   echo [azimuth <angle>] [label <w>]
//   jump phi <angle> [label <w>]
// Quantities carry a unit suffix: frequencies Hz/kHz/MHz/GHz (ordinary, times
// 2 pi internally), times s/ms/us/ns, rates rad/s, rad/ms, rad/us; angles are
// rad (bare numbers allowed).  $name substitutes a set value; phi0 is the one
// variable bound at run time and overrides any in-file set.

struct parse_error : std::runtime_error {
    int line;
    int column;
    parse_error(const std::string& msg, int ln, int col)
        : std::runtime_error("line " + std::to_string(ln) + ", column " + std::to_string(col) +
                             ": " + msg),
          line(ln), column(col) {}
};

struct schedule_semantic_error : std::runtime_error {
    std::size_t segment_index;
    schedule_semantic_error(const std::string& msg, std::size_t idx)
        : std::runtime_error("segment " + std::to_string(idx) + ": " + msg), segment_index(idx) {}
};

namespace dsl_detail {

enum class Dim { angle, frequency, time, rate };

struct Quantity {
    double value; // SI-internal: rad, rad/s, s
    Dim dim;
};

struct Token {
    std::string text;
    int column;
};

inline std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        if (line[i] == '#') break;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

struct Cursor {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    int line;

    bool done() const { return pos >= toks.size(); }
    const Token& peek() const {
        if (done()) throw parse_error("unexpected end of line", line, toks.empty() ? 1 : toks.back().column);
        return toks[pos];
    }
    Token next() {
        const Token& t = peek();
        ++pos;
        return t;
    }
    void expect(const std::string& word) {
        const Token t = next();
        if (t.text != word) throw parse_error("expected '" + word + "', got '" + t.text + "'", line, t.column);
    }
    bool accept(const std::string& word) {
        if (!done() && toks[pos].text == word) { ++pos; return true; }
        return false;
    }
};

// split "49.24kHz" into numeric part and unit suffix
inline Quantity parse_quantity(const Token& t, Dim want, int line,
                               const std::map<std::string, Quantity>& vars) {
    if (!t.text.empty() && t.text[0] == '$') {
        const std::string name = t.text.substr(1);
        const auto it = vars.find(name);
        if (it == vars.end()) throw parse_error("undefined variable '$" + name + "'", line, t.column);
        if (it->second.dim != want)
            throw parse_error("variable '$" + name + "' has the wrong dimension", line, t.column);
        return it->second;
    }
    std::size_t n = 0;
    double num = 0.0;
    try {
        num = std::stod(t.text, &n);
    } catch (const std::exception&) {
        throw parse_error("expected a number, got '" + t.text + "'", line, t.column);
    }
    const std::string unit = t.text.substr(n);
    auto bad_unit = [&]() -> parse_error {
        return parse_error("unknown unit '" + unit + "' (token '" + t.text + "')", line, t.column);
    };
    switch (want) {
        case Dim::angle:
            if (unit.empty() || unit == "rad") return {num, want};
            throw bad_unit();
        case Dim::frequency:
            if (unit == "Hz") return {two_pi * num, want};
            if (unit == "kHz") return {two_pi * 1e3 * num, want};
            if (unit == "MHz") return {two_pi * 1e6 * num, want};
            if (unit == "GHz") return {two_pi * 1e9 * num, want};
            throw bad_unit();
        case Dim::time:
            if (unit == "s") return {num, want};
            if (unit == "ms") return {1e-3 * num, want};
            if (unit == "us") return {1e-6 * num, want};
            if (unit == "ns") return {1e-9 * num, want};
            throw bad_unit();
        case Dim::rate:
            if (unit == "rad/s") return {num, want};
            if (unit == "rad/ms") return {1e3 * num, want};
            if (unit == "rad/us") return {1e6 * num, want};
            throw bad_unit();
    }
    throw bad_unit();
}

inline Quantity parse_any_quantity(const Token& t, int line) {
    // for 'set': infer the dimension from the suffix
    static const std::map<std::string, Quantity> empty;
    for (Dim d : {Dim::frequency, Dim::time, Dim::rate, Dim::angle}) {
        try {
            return parse_quantity(t, d, line, empty);
        } catch (const parse_error&) {
        }
    }
    throw parse_error("cannot parse quantity '" + t.text + "'", line, t.column);
}

} // namespace dsl_detail

// Bindings for $variables resolved at run time (phi0 by convention).
using DslBindings = std::map<std::string, double>; // name -> value in rad

inline Schedule parse_schedule(const std::string& text, const DslBindings& bindings = {},
                               bool check_continuity = true) {
    using namespace dsl_detail;
    std::map<std::string, Quantity> vars;
    for (const auto& [k, v] : bindings) vars[k] = {v, Dim::angle};

    std::vector<LabeledSegment> segs;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        Cursor c{toks, 0, ln};
        const Token head = c.next();

        auto q = [&](Dim d) { return parse_quantity(c.next(), d, ln, vars).value; };
        auto tail_options = [&](Segment seg, double* phi_slot) {
            std::string label;
            while (!c.done()) {
                if (phi_slot && c.accept("phi")) { *phi_slot = q(Dim::angle); continue; }
                if (c.accept("label")) { label = c.next().text; continue; }
                throw parse_error("unexpected token '" + c.peek().text + "'", ln, c.peek().column);
            }
            segs.push_back({seg, label});
        };

        if (head.text == "set") {
            const Token name = c.next();
            const Quantity v = parse_any_quantity(c.next(), ln);
            if (!c.done()) throw parse_error("trailing tokens after set", ln, c.peek().column);
            if (!bindings.count(name.text)) vars[name.text] = v; // run-time binding wins
        } else if (head.text == "prep") {
            c.expect("theta");
            ThetaRamp r;
            r.theta_start = q(Dim::angle);
            c.expect("->");
            r.theta_end = q(Dim::angle);
            c.expect("rate");
            const double rate = q(Dim::rate);
            if (rate <= 0.0) throw parse_error("theta rate must be positive", ln, head.column);
            c.expect("bmag");
            r.b_mag = q(Dim::frequency);
            r.duration = std::abs(r.theta_end - r.theta_start) / rate;
            Segment seg = r;
            // phi option mutates the variant in place
            std::string label;
            double phi = 0.0;
            bool have_phi = false;
            while (!c.done()) {
                if (c.accept("phi")) { phi = q(Dim::angle); have_phi = true; continue; }
                if (c.accept("label")) { label = c.next().text; continue; }
                throw parse_error("unexpected token '" + c.peek().text + "'", ln, c.peek().column);
            }
            if (have_phi) std::get<ThetaRamp>(seg).phi = phi;
            segs.push_back({seg, label});
        } else if (head.text == "sweep") {
            c.expect("omega");
            OmegaSweep r;
            r.omega_start = q(Dim::frequency);
            c.expect("->");
            r.omega_end = q(Dim::frequency);
            c.expect("delta");
            r.delta = q(Dim::frequency);
            c.expect("for");
            r.duration = q(Dim::time);
            Segment seg = r;
            std::string label;
            while (!c.done()) {
                if (c.accept("phi")) { std::get<OmegaSweep>(seg).phi = q(Dim::angle); continue; }
                if (c.accept("label")) { label = c.next().text; continue; }
                throw parse_error("unexpected token '" + c.peek().text + "'", ln, c.peek().column);
            }
            segs.push_back({seg, label});
        } else if (head.text == "ramp") {
            const Token kind = c.next();
            if (kind.text == "delta") {
                DeltaRamp r;
                r.delta_start = q(Dim::frequency);
                c.expect("->");
                r.delta_end = q(Dim::frequency);
                c.expect("omega");
                r.omega = q(Dim::frequency);
                c.expect("for");
                r.duration = q(Dim::time);
                Segment seg = r;
                std::string label;
                while (!c.done()) {
                    if (c.accept("phi")) { std::get<DeltaRamp>(seg).phi = q(Dim::angle); continue; }
                    if (c.accept("label")) { label = c.next().text; continue; }
                    throw parse_error("unexpected token '" + c.peek().text + "'", ln, c.peek().column);
                }
                segs.push_back({seg, label});
            } else if (kind.text == "phi") {
                PhiRamp r;
                r.phi_start = q(Dim::angle);
                c.expect("->");
                r.phi_end = q(Dim::angle);
                c.expect("omega");
                r.omega = q(Dim::frequency);
                c.expect("delta");
                r.delta = q(Dim::frequency);
                c.expect("for");
                r.duration = q(Dim::time);
                tail_options(r, nullptr);
            } else {
                throw parse_error("unknown ramp kind '" + kind.text + "'", ln, kind.column);
            }
        } else if (head.text == "hold") {
            c.expect("omega");
            Hold r;
            r.field.omega = q(Dim::frequency);
            c.expect("delta");
            r.field.delta = q(Dim::frequency);
            c.expect("phi");
            r.field.phi = q(Dim::angle);
            c.expect("for");
            r.duration = q(Dim::time);
            tail_options(r, nullptr);
        } else if (head.text == "echo") {
            EchoPulse r;
            std::string label;
            while (!c.done()) {
                if (c.accept("azimuth")) { r.axis_azimuth = q(Dim::angle); continue; }
                if (c.accept("label")) { label = c.next().text; continue; }
                throw parse_error("unexpected token '" + c.peek().text + "'", ln, c.peek().column);
            }
            segs.push_back({Segment{r}, label});
        } else if (head.text == "jump") {
            c.expect("phi");
            PhiJump r;
            r.phi_new = q(Dim::angle);
            tail_options(r, nullptr);
        } else {
            throw parse_error("unknown directive '" + head.text + "'", ln, head.column);
        }
    }

    Schedule sched(std::move(segs));
    if (check_continuity) {
        const Diagnostics d = validate(sched);
        if (!d.continuity_violations.empty()) {
            const auto& v = d.continuity_violations.front();
            throw schedule_semantic_error(
                "field discontinuity at boundary (jump " + std::to_string(v.jump) + " rad/s)",
                v.boundary_index);
        }
    }
    return sched;
}

// ---------------------------------------------------------------------------
// Serializer: emits the grammar above, 12 significant digits, reproducibly.

namespace dsl_detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string fmt_khz(double rad_per_s) { return fmt(khz_from_rad_per_s(rad_per_s)) + "kHz"; }
inline std::string fmt_us(double s) { return fmt(us_from_seconds(s)) + "us"; }
inline std::string fmt_rad(double a) { return fmt(a) + "rad"; }

} // namespace dsl_detail

inline std::string render(const Schedule& s) {
    using namespace dsl_detail;
    if (s.has_error_offsets())
        throw std::invalid_argument("render: schedules carrying static error offsets are not serializable");
    std::ostringstream os;
    for (const auto& [seg, label] : s.segments()) {
        struct V {
            std::ostringstream& os;
            void operator()(const ThetaRamp& r) const {
                const double rate = r.duration > 0.0 ? std::abs(r.theta_end - r.theta_start) / r.duration : 0.0;
                os << "prep theta " << fmt_rad(r.theta_start) << " -> " << fmt_rad(r.theta_end)
                   << " rate " << fmt(rate) << "rad/s bmag " << fmt_khz(r.b_mag)
                   << " phi " << fmt_rad(r.phi);
            }
            void operator()(const OmegaSweep& r) const {
                os << "sweep omega " << fmt_khz(r.omega_start) << " -> " << fmt_khz(r.omega_end)
                   << " delta " << fmt_khz(r.delta) << " for " << fmt_us(r.duration)
                   << " phi " << fmt_rad(r.phi);
            }
            void operator()(const DeltaRamp& r) const {
                os << "ramp delta " << fmt_khz(r.delta_start) << " -> " << fmt_khz(r.delta_end)
                   << " omega " << fmt_khz(r.omega) << " for " << fmt_us(r.duration)
                   << " phi " << fmt_rad(r.phi);
            }
            void operator()(const PhiRamp& r) const {
                os << "ramp phi " << fmt_rad(r.phi_start) << " -> " << fmt_rad(r.phi_end)
                   << " omega " << fmt_khz(r.omega) << " delta " << fmt_khz(r.delta)
                   << " for " << fmt_us(r.duration);
            }
            void operator()(const Hold& r) const {
                os << "hold omega " << fmt_khz(r.field.omega) << " delta " << fmt_khz(r.field.delta)
                   << " phi " << fmt_rad(r.field.phi) << " for " << fmt_us(r.duration);
            }
            void operator()(const EchoPulse& r) const {
                os << "echo";
                if (r.axis_azimuth != 0.0) os << " azimuth " << fmt_rad(r.axis_azimuth);
            }
            void operator()(const PhiJump& r) const { os << "jump phi " << fmt_rad(r.phi_new); }
        };
        std::visit(V{os}, seg);
        if (!label.empty()) os << " label " << label;
        os << "\n";
    }
    return os.str();
}

} // namespace glzs
