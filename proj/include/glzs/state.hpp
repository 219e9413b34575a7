#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace glzs {

using complexd = std::complex<double>;

// Two-level state; basis ordering is index 0 = |up>, index 1 = |down>,
// with sigma_z |up> = +|up>.
struct StateVector {
    complexd amp_up{0.0, 0.0};
    complexd amp_down{0.0, 0.0};

    static StateVector up() { return {1.0, 0.0}; }
    static StateVector down() { return {0.0, 1.0}; }
};

inline complexd inner(const StateVector& a, const StateVector& b) {
    return std::conj(a.amp_up) * b.amp_up + std::conj(a.amp_down) * b.amp_down;
}

inline double norm(const StateVector& s) { return std::sqrt(std::real(inner(s, s))); }

inline StateVector normalized(const StateVector& s) {
    const double n = norm(s);
    return {s.amp_up / n, s.amp_down / n};
}

// State orthogonal to s (unique up to phase).
inline StateVector orthogonal(const StateVector& s) {
    return {-std::conj(s.amp_down), std::conj(s.amp_up)};
}

inline double p_up(const StateVector& s) { return std::norm(s.amp_up); }
inline double p_down(const StateVector& s) { return std::norm(s.amp_down); }

// Pauli expectation values (<sx>, <sy>, <sz>).
inline std::array<double, 3> bloch_vector(const StateVector& s) {
    const complexd c = std::conj(s.amp_up) * s.amp_down;
    return {2.0 * std::real(c), 2.0 * std::imag(c), p_up(s) - p_down(s)};
}

// 2x2 complex matrix, row-major; used for unitaries throughout.
struct Unitary2 {
    std::array<complexd, 4> m{complexd{1, 0}, complexd{0, 0}, complexd{0, 0}, complexd{1, 0}};

    static Unitary2 identity() { return {}; }

    complexd& operator()(int r, int c) { return m[2 * r + c]; }
    const complexd& operator()(int r, int c) const { return m[2 * r + c]; }
};

inline StateVector apply(const Unitary2& u, const StateVector& s) {
    return {u(0, 0) * s.amp_up + u(0, 1) * s.amp_down,
            u(1, 0) * s.amp_up + u(1, 1) * s.amp_down};
}

// a * b (apply b first).
inline Unitary2 compose(const Unitary2& a, const Unitary2& b) {
    Unitary2 r;
    r(0, 0) = a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0);
    r(0, 1) = a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1);
    r(1, 0) = a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0);
    r(1, 1) = a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1);
    return r;
}

inline Unitary2 dagger(const Unitary2& u) {
    Unitary2 r;
    r(0, 0) = std::conj(u(0, 0));
    r(0, 1) = std::conj(u(1, 0));
    r(1, 0) = std::conj(u(0, 1));
    r(1, 1) = std::conj(u(1, 1));
    return r;
}

inline complexd determinant(const Unitary2& u) {
    return u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
}

// Max entry-wise deviation of U†U from the identity.
inline double unitarity_error(const Unitary2& u) {
    const Unitary2 p = compose(dagger(u), u);
    double e = 0.0;
    e = std::max(e, std::abs(p(0, 0) - complexd{1, 0}));
    e = std::max(e, std::abs(p(1, 1) - complexd{1, 0}));
    e = std::max(e, std::abs(p(0, 1)));
    e = std::max(e, std::abs(p(1, 0)));
    return e;
}

} // namespace glzs
