#include "pll/linear_analysis.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "pll/blocks.hpp"
#include "pll/errors.hpp"

namespace pll {
namespace {

// Numerator and denominator of the loop gain: n_L = K a1, d_L = s^3 + a2 s^2 + a1 s.
struct LoopPolys {
    Poly num;
    Poly den;
};

LoopPolys loop_polys(const LoopParams& params, const RlcFilter& filter) {
    const double gain = params.k_pd() * params.k_vco() / params.n_div();
    return {{gain * filter.a1()}, {0.0, filter.a1(), filter.a2(), 1.0}};
}

void check_grid(double f_lo, double f_hi, int n_points) {
    if (!(f_lo > 0.0) || !(f_hi > f_lo) || !std::isfinite(f_hi) || n_points < 2) {
        throw InvalidInput("bode: need 0 < f_lo < f_hi and n_points >= 2");
    }
}

double grid_freq(double f_lo, double f_hi, int n_points, int i) {
    const double ratio = std::log10(f_hi / f_lo);
    return f_lo * std::pow(10.0, ratio * i / (n_points - 1));
}

void unwrap_degrees(std::vector<double>& phase) {
    for (std::size_t i = 1; i < phase.size(); ++i) {
        const double turns = std::round((phase[i - 1] - phase[i]) / 360.0);
        phase[i] += 360.0 * turns;
    }
}

} // namespace

RationalTf open_loop_tf(const LoopParams& params, const RlcFilter& filter) {
    auto [num, den] = loop_polys(params, filter);
    return RationalTf(std::move(num), std::move(den));
}

RationalTf input_jitter_tf(const LoopParams& params, const RlcFilter& filter) {
    const auto [num, den] = loop_polys(params, filter);
    return RationalTf(poly_scale(num, params.n_div()), poly_add(den, num));
}

RationalTf vco_jitter_tf(const LoopParams& params, const RlcFilter& filter) {
    const auto [num, den] = loop_polys(params, filter);
    return RationalTf(den, poly_add(den, num));
}

RationalTf tf_add(const RationalTf& x, const RationalTf& y) {
    Poly num = poly_add(poly_mul(x.num(), y.den()), poly_mul(y.num(), x.den()));
    return RationalTf(std::move(num), poly_mul(x.den(), y.den()));
}

RationalTf tf_scale(const RationalTf& x, double k) {
    return RationalTf(poly_scale(x.num(), k), x.den());
}

BodeTable bode(const RationalTf& tf, double f_lo, double f_hi, int n_points) {
    check_grid(f_lo, f_hi, n_points);
    BodeTable out;
    const auto n = static_cast<std::size_t>(n_points);
    out.freqs.resize(n);
    out.mag_db.resize(n);
    out.phase_deg.resize(n);

    bool pole_hit = false;
#pragma omp parallel for schedule(static) reduction(|| : pole_hit)
    for (int i = 0; i < n_points; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double f = grid_freq(f_lo, f_hi, n_points, i);
        out.freqs[k] = f;
        try {
            const auto h = tf.eval({0.0, kTwoPi * f});
            out.mag_db[k] = 20.0 * std::log10(std::abs(h));
            out.phase_deg[k] = std::arg(h) * 180.0 / std::numbers::pi;
        } catch (const PoleEvaluationError&) {
            pole_hit = true;
        }
    }
    if (pole_hit) {
        throw PoleEvaluationError("bode: grid point on a j-omega axis pole");
    }
    unwrap_degrees(out.phase_deg);
    return out;
}

BodeTable bode_reference(const RationalTf& tf, double f_lo, double f_hi, int n_points) {
    check_grid(f_lo, f_hi, n_points);
    BodeTable out;
    for (int i = 0; i < n_points; ++i) {
        const double f = grid_freq(f_lo, f_hi, n_points, i);
        const auto h = tf.eval({0.0, kTwoPi * f});
        out.freqs.push_back(f);
        out.mag_db.push_back(20.0 * std::log10(std::abs(h)));
        out.phase_deg.push_back(std::arg(h) * 180.0 / std::numbers::pi);
    }
    unwrap_degrees(out.phase_deg);
    return out;
}

Stability stability(const RationalTf& tf) {
    if (tf.den_degree() < 1) {
        throw InvalidInput("stability: denominator has degree 0");
    }
    Stability verdict = Stability::Stable;
    for (const auto& p : tf.poles()) {
        if (p.real() > kStabilityEpsAbs) {
            return Stability::Unstable;
        }
        if (p.real() >= -kStabilityEpsAbs) {
            verdict = Stability::Marginal;
        }
    }
    return verdict;
}

const char* to_string(Stability s) {
    switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Marginal: return "marginal";
    case Stability::Unstable: return "unstable";
    }
    return "unknown";
}

double crossover_frequency(const LoopParams& params, const RlcFilter& filter) {
    const auto loop = open_loop_tf(params, filter);
    const auto gain = [&](double f) { return std::abs(loop.eval({0.0, kTwoPi * f})); };

    // Walk up in quarter decades until the gain drops below one, then bisect
    // in log frequency.
    double lo = 1e-3;
    double hi = lo;
    while (gain(hi) >= 1.0) {
        lo = hi;
        hi *= std::pow(10.0, 0.25);
        if (hi > 1e15) {
            throw InvalidInput("crossover_frequency: no unity-gain crossing below 1e15 Hz");
        }
    }
    for (int i = 0; i < 200 && hi / lo - 1.0 > 1e-15; ++i) {
        const double mid = std::sqrt(lo * hi);
        (gain(mid) >= 1.0 ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

Peak peak_magnitude(const RationalTf& tf, double f_lo, double f_hi, int n_points) {
    const auto table = bode(tf, f_lo, f_hi, n_points);
    Peak best{table.freqs[0], table.mag_db[0]};
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (table.mag_db[i] > best.mag_db) {
            best = {table.freqs[i], table.mag_db[i]};
        }
    }
    return best;
}

} // namespace pll
