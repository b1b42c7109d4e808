#include "pll/blocks.hpp"

#include <cmath>

#include "pll/errors.hpp"
#include "pll/linear_analysis.hpp"

namespace pll {

double pd_output(double k_pd, double phi_ref, double phi_fb) {
    if (!std::isfinite(k_pd) || !std::isfinite(phi_ref) || !std::isfinite(phi_fb)) {
        throw InvalidInput("pd_output: non-finite input");
    }
    return k_pd * (phi_fb - phi_ref);
}

Reactances reactances(const RlcFilter& filter, double f_hz) {
    if (!std::isfinite(f_hz) || !(f_hz > 0.0)) {
        throw InvalidInput("reactances: frequency must be finite and > 0");
    }
    const double w = kTwoPi * f_hz;
    const double x_l = w * filter.l();
    const double x_c = 1.0 / (w * filter.c());
    return {x_l, x_c, std::hypot(x_l - x_c, filter.r())};
}

RationalTf filter_tf(const RlcFilter& filter) {
    const double a1 = filter.a1();
    return RationalTf({a1}, {a1, filter.a2(), 1.0});
}

PolePair filter_poles(const RlcFilter& filter) {
    const double a1 = filter.a1();
    const double a2 = filter.a2();
    const double disc = a2 * a2 - 4.0 * a1;
    if (disc < 0.0) {
        const double wd = 0.5 * std::sqrt(-disc);
        return {{-0.5 * a2, -wd}, {-0.5 * a2, wd}};
    }
    // Real roots: s1 is the larger-magnitude one, s2 follows from s1*s2 = a1.
    const double s1 = -0.5 * (a2 + std::sqrt(disc));
    const double s2 = s1 != 0.0 ? a1 / s1 : 0.0;
    return {{s1, 0.0}, {s2, 0.0}};
}

std::complex<double> eval_tf(const RationalTf& tf, std::complex<double> s) { return tf.eval(s); }

std::complex<double> eval_filter_factored(const RlcFilter& filter, std::complex<double> s) {
    const auto [s1, s2] = filter_poles(filter);
    const auto d = (1.0 - s / s1) * (1.0 - s / s2);
    if (std::abs(s - s1) <= 1e-6 * std::abs(s1) || std::abs(s - s2) <= 1e-6 * std::abs(s2)) {
        throw PoleEvaluationError("factored filter evaluated at a pole");
    }
    return filter.a1() / (s1 * s2) / d;
}

namespace {

// sum_i coeff[i] * c^i * (z-1)^i * (z+1)^(n-i), ascending powers of z.
Poly bilinear_substitute(const Poly& coeff, int n, double c) {
    Poly out(static_cast<std::size_t>(n) + 1, 0.0);
    const Poly zm1{-1.0, 1.0};
    const Poly zp1{1.0, 1.0};
    double ci = 1.0;
    for (int i = 0; i < static_cast<int>(coeff.size()) && i <= n; ++i) {
        Poly term{coeff[static_cast<std::size_t>(i)] * ci};
        for (int k = 0; k < i; ++k) term = poly_mul(term, zm1);
        for (int k = i; k < n; ++k) term = poly_mul(term, zp1);
        out = poly_add(out, term);
        ci *= c;
    }
    return out;
}

} // namespace

FilterStepper::FilterStepper(const RationalTf& tf, double dt) : dt_(dt) {
    if (!std::isfinite(dt) || !(dt > 0.0)) {
        throw InvalidInput("discretize_filter: dt must be finite and > 0");
    }
    if (!tf.is_proper()) {
        throw InvalidInput("discretize_filter: transfer function must be proper");
    }
    const int n = tf.den_degree();
    const double c = 2.0 / dt;
    const Poly nz = bilinear_substitute(tf.num(), n, c);
    const Poly dz = bilinear_substitute(tf.den(), n, c);

    // Ascending powers of z  ->  ascending powers of z^-1 (reverse), normalize.
    const double lead = dz[static_cast<std::size_t>(n)];
    if (lead == 0.0 || !std::isfinite(lead)) {
        throw DiscretizationError("bilinear transform produced a degenerate denominator");
    }
    b_.assign(nz.rbegin(), nz.rend());
    a_.assign(dz.rbegin(), dz.rend());
    for (auto& v : b_) v /= lead;
    for (auto& v : a_) v /= lead;

    if (n > 0 && stability(tf) == Stability::Stable) {
        for (const auto& z : poly_roots(dz)) {
            if (!(std::abs(z) < 1.0)) {
                throw DiscretizationError("stable filter mapped to an unstable discrete pole");
            }
        }
    }
    u_hist_.assign(static_cast<std::size_t>(n), 0.0);
    y_hist_.assign(static_cast<std::size_t>(n), 0.0);
}

double FilterStepper::step(double u) {
    const std::size_t n = u_hist_.size();
    double y = b_[0] * u;
    for (std::size_t i = 0; i < n; ++i) {
        y += b_[i + 1] * u_hist_[i] - a_[i + 1] * y_hist_[i];
    }
    for (std::size_t i = n; i-- > 1;) {
        u_hist_[i] = u_hist_[i - 1];
        y_hist_[i] = y_hist_[i - 1];
    }
    if (n > 0) {
        u_hist_[0] = u;
        y_hist_[0] = y;
    }
    return y;
}

void FilterStepper::reset() {
    std::fill(u_hist_.begin(), u_hist_.end(), 0.0);
    std::fill(y_hist_.begin(), y_hist_.end(), 0.0);
}

FilterStepper discretize_filter(const RationalTf& tf, double dt) { return FilterStepper(tf, dt); }

double vco_advance(double phase, double f_free, double k_vco, double v_cont, double dt) {
    if (!std::isfinite(phase) || !std::isfinite(f_free) || !std::isfinite(k_vco) ||
        !std::isfinite(v_cont) || !std::isfinite(dt)) {
        throw InvalidInput("vco_advance: non-finite input");
    }
    if (!(dt > 0.0)) {
        throw InvalidInput("vco_advance: dt must be > 0");
    }
    return phase + (kTwoPi * f_free + k_vco * v_cont) * dt;
}

} // namespace pll
