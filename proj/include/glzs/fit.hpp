#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace glzs {

// Least-squares fit of P(x) = offset - amplitude * cos(k x).
struct CosineFit {
    double offset = 0.0;
    double amplitude = 0.0; // may be negative if the data are phase-flipped
    double k = 1.0;         // frequency factor
    double sse = 0.0;
};

namespace fit_detail {

// linear LSQ in (offset, amplitude) at fixed k; returns SSE
inline CosineFit fit_at_k(const std::vector<double>& x, const std::vector<double>& y, double k) {
    const std::size_t n = x.size();
    double sc = 0.0, scc = 0.0, sy = 0.0, syc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(k * x[i]);
        sc += c;
        scc += c * c;
        sy += y[i];
        syc += y[i] * c;
    }
    const double nn = static_cast<double>(n);
    const double det = nn * scc - sc * sc;
    CosineFit f;
    f.k = k;
    if (std::abs(det) < 1e-12 * nn * nn) {
        f.offset = sy / nn;
        f.amplitude = 0.0;
    } else {
        // model y = a + b c with b = -amplitude
        const double b = (nn * syc - sc * sy) / det;
        f.offset = (sy - b * sc) / nn;
        f.amplitude = -b;
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.offset - f.amplitude * std::cos(k * x[i]));
        sse += r * r;
    }
    f.sse = sse;
    return f;
}

} // namespace fit_detail

inline CosineFit fit_cosine_fixed_k(const std::vector<double>& x, const std::vector<double>& y,
                                    double k) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("fit_cosine: need at least 3 matching samples");
    return fit_detail::fit_at_k(x, y, k);
}

// Coarse scan over k followed by golden-section refinement of the SSE.
inline CosineFit fit_cosine(const std::vector<double>& x, const std::vector<double>& y,
                            double k_min = 0.25, double k_max = 4.0) {
    if (x.size() != y.size() || x.size() < 4)
        throw std::invalid_argument("fit_cosine: need at least 4 matching samples");
    const int n_scan = 1600;
    CosineFit best = fit_detail::fit_at_k(x, y, k_min);
    double k_best = k_min;
    for (int i = 1; i <= n_scan; ++i) {
        const double k = k_min + (k_max - k_min) * i / n_scan;
        const CosineFit f = fit_detail::fit_at_k(x, y, k);
        if (f.sse < best.sse) { best = f; k_best = k; }
    }
    const double step = (k_max - k_min) / n_scan;
    double lo = std::max(k_min, k_best - step), hi = std::min(k_max, k_best + step);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = fit_detail::fit_at_k(x, y, c).sse;
    double fd = fit_detail::fit_at_k(x, y, d).sse;
    for (int it = 0; it < 60; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = fit_detail::fit_at_k(x, y, c).sse;
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = fit_detail::fit_at_k(x, y, d).sse;
        }
    }
    const CosineFit refined = fit_detail::fit_at_k(x, y, 0.5 * (a + b));
    return refined.sse < best.sse ? refined : best;
}

} // namespace glzs
