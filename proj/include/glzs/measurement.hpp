#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "glzs/rng.hpp"
#include "glzs/state.hpp"

namespace glzs {

struct ShotResult {
    long n_shots = 0;
    long n_up = 0;
    double p_hat = 0.0;
    double std_err = 0.0; // sqrt(p_hat (1 - p_hat) / n_shots)
};

// Projective measurement statistics: n_up drawn binomially with the
// counter-based generator, identical across platforms for fixed inputs.
inline ShotResult measure_up(double p_true, long n_shots, std::uint64_t seed,
                             std::uint64_t stream = 0) {
    if (!(p_true >= 0.0 && p_true <= 1.0))
        throw std::invalid_argument("measure_up: p_true must be in [0, 1]");
    if (n_shots < 1) throw std::invalid_argument("measure_up: n_shots must be >= 1");
    long n_up = 0;
    for (long k = 0; k < n_shots; ++k)
        if (uniform01(seed, stream, static_cast<std::uint64_t>(k)) < p_true) ++n_up;
    ShotResult r;
    r.n_shots = n_shots;
    r.n_up = n_up;
    r.p_hat = static_cast<double>(n_up) / static_cast<double>(n_shots);
    r.std_err = std::sqrt(r.p_hat * (1.0 - r.p_hat) / static_cast<double>(n_shots));
    return r;
}

// Imperfect state preparation: with probability (1 - fidelity) the orthogonal
// state is returned.  One draw per shot, keyed by the shot counter.
inline StateVector prep_error(const StateVector& initial, double fidelity, std::uint64_t seed,
                              std::uint64_t stream = 0, std::uint64_t shot = 0) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0))
        throw std::invalid_argument("prep_error: fidelity must be in [0, 1]");
    if (uniform01(seed, stream, shot) < fidelity) return initial;
    return orthogonal(initial);
}

} // namespace glzs
