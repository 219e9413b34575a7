#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "glzs/integrate.hpp"

namespace glzs {

enum class Level { minus, plus };

// Accumulated geometric phase of the amplitude that ends the inter-sweep
// window in the given level, from the trajectory's discrete Pancharatnam
// series with echo accounting: at every echo inside the window the amplitude
// labels swap, so the series of the complementary level is followed before
// the inversion.  The window defaults to [end of stage 2, start of stage 4].
inline double berry_phase_from_trajectory(const Trajectory& tr, Level level) {
    if (tr.berry_minus.empty())
        throw std::invalid_argument("berry_phase_from_trajectory: trajectory lacks adiabatic tracking");
    if (tr.berry_min_overlap_re <= 0.0)
        throw std::runtime_error(
            "berry_phase_from_trajectory: eigenstate overlap with non-positive real part "
            "(under-sampled or discontinuous field path)");

    double t_from = 0.0, t_to = tr.duration;
    for (const auto& s : tr.stages) {
        if (s.label == "2") t_from = std::max(t_from, s.t_end);
        if (s.label == "4") { t_to = s.t_start; break; }
    }

    // window edges: t_from, echoes inside, t_to
    std::vector<double> edges{t_from};
    for (double te : tr.echo_times)
        if (te > t_from && te < t_to) edges.push_back(te);
    edges.push_back(t_to);

    const std::size_t n_int = edges.size() - 1;
    double total = 0.0;
    for (std::size_t j = 0; j < n_int; ++j) {
        const std::size_t i0 = tr.sample_index_at(edges[j]);
        const std::size_t i1 = tr.sample_index_at(edges[j + 1]);
        // echoes after interval j toggle the label this amplitude carried
        const std::size_t echoes_after = n_int - 1 - j;
        const bool use_other = (echoes_after % 2) == 1;
        const bool plus_series = (level == Level::plus) != use_other;
        const auto& series = plus_series ? tr.berry_plus : tr.berry_minus;
        total += series[i1] - series[i0];
    }
    return total;
}

} // namespace glzs
