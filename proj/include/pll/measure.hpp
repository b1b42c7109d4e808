#pragma once

#include <span>
#include <vector>

#include "pll/types.hpp"

namespace pll {

struct SineFit {
    double amplitude;  // sqrt(a^2 + b^2)
    double phase;      // rad, y ~ amplitude * sin(2 pi f t + phase)
    double offset;
    double slope;      // linear trend, per second
};

/// Least-squares fit of y ~ a sin(2 pi f t) + b cos(2 pi f t) + c + d (t - t_mid)
/// over samples with t >= t_from, truncated to a whole number of periods.
/// Throws InvalidInput when fewer than one period is available.
SineFit fit_sinusoid(std::span<const double> t, std::span<const double> y, double freq_hz,
                     double t_from);

/// Output phase minus the ideal lock ramp 2 pi n_div f_in t.
std::vector<double> excess_output_phase(const SimTrace& trace, const LoopParams& params);

/// Mean of y over samples with t >= t_from.
double mean_from(std::span<const double> t, std::span<const double> y, double t_from);

} // namespace pll
