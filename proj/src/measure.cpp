#include "pll/measure.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "pll/errors.hpp"

namespace pll {

SineFit fit_sinusoid(std::span<const double> t, std::span<const double> y, double freq_hz,
                     double t_from) {
    if (t.size() != y.size() || !(freq_hz > 0.0)) {
        throw InvalidInput("fit_sinusoid: mismatched series or non-positive frequency");
    }
    std::size_t first = 0;
    while (first < t.size() && t[first] < t_from) ++first;
    if (first >= t.size()) {
        throw InvalidInput("fit_sinusoid: no samples after t_from");
    }
    const double period = 1.0 / freq_hz;
    const double span = t.back() - t[first];
    const double whole = std::floor(span / period + 1e-9) * period;
    if (!(whole > 0.0)) {
        throw InvalidInput("fit_sinusoid: less than one period of data");
    }
    std::size_t last = first;
    while (last + 1 < t.size() && t[last + 1] - t[first] < whole * (1.0 - 1e-12)) ++last;

    const auto n = static_cast<Eigen::Index>(last - first + 1);
    const double t_mid = 0.5 * (t[first] + t[last]);
    const double w = kTwoPi * freq_hz;
    Eigen::MatrixXd a(n, 4);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double ti = t[first + static_cast<std::size_t>(i)];
        a(i, 0) = std::sin(w * ti);
        a(i, 1) = std::cos(w * ti);
        a(i, 2) = 1.0;
        a(i, 3) = (ti - t_mid) / whole;
        rhs(i) = y[first + static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs);
    return {std::hypot(x(0), x(1)), std::atan2(x(1), x(0)), x(2), x(3) / whole};
}

std::vector<double> excess_output_phase(const SimTrace& trace, const LoopParams& params) {
    const double w = kTwoPi * params.f_target();
    std::vector<double> out(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out[i] = trace.phase_out[i] - w * trace.t[i];
    }
    return out;
}

double mean_from(std::span<const double> t, std::span<const double> y, double t_from) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < t.size() && i < y.size(); ++i) {
        if (t[i] >= t_from) {
            sum += y[i];
            ++count;
        }
    }
    if (count == 0) {
        throw InvalidInput("mean_from: no samples after t_from");
    }
    return sum / static_cast<double>(count);
}

} // namespace pll
