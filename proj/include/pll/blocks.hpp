#pragma once

#include <complex>
#include <vector>

#include "pll/polynomial.hpp"
#include "pll/types.hpp"

namespace pll {

/// Linear phase detector: k_pd * (phi_fb - phi_ref). No wrapping, no saturation.
double pd_output(double k_pd, double phi_ref, double phi_fb);

struct Reactances {
    double x_l;    // ohms
    double x_c;    // ohms
    double z_mag;  // ohms, sqrt((x_l - x_c)^2 + r^2)
};

Reactances reactances(const RlcFilter& filter, double f_hz);

/// a1 / (s^2 + a2 s + a1); unity DC gain.
RationalTf filter_tf(const RlcFilter& filter);

/// Roots of s^2 + a2 s + a1 by the quadratic formula.
PolePair filter_poles(const RlcFilter& filter);

std::complex<double> eval_tf(const RationalTf& tf, std::complex<double> s);

/// The filter response in pole-factored form a1/(s1 s2) / ((1 - s/s1)(1 - s/s2)).
std::complex<double> eval_filter_factored(const RlcFilter& filter, std::complex<double> s);

/// Bilinear (trapezoidal) discretization of a proper transfer function, run as
/// a direct-form-I recursion over n delayed inputs and n delayed outputs.
class FilterStepper {
public:
    FilterStepper(const RationalTf& tf, double dt);

    double step(double u);
    void reset();

    double dt() const noexcept { return dt_; }
    // Coefficients in powers of z^-1, normalized so den[0] == 1.
    const std::vector<double>& num_z() const noexcept { return b_; }
    const std::vector<double>& den_z() const noexcept { return a_; }

private:
    double dt_;
    std::vector<double> b_;
    std::vector<double> a_;
    std::vector<double> u_hist_;  // u[k-1], u[k-2], ...
    std::vector<double> y_hist_;  // y[k-1], y[k-2], ...
};

FilterStepper discretize_filter(const RationalTf& tf, double dt);

/// Phase after one step of a VCO running at f_free + k_vco * v_cont / 2pi.
double vco_advance(double phase, double f_free, double k_vco, double v_cont, double dt);

/// Phase-domain divide-by-N.
inline double divide_phase(double phase, int n_div) { return phase / n_div; }

} // namespace pll
