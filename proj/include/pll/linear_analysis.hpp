#pragma once

#include <vector>

#include "pll/polynomial.hpp"
#include "pll/types.hpp"

namespace pll {

/// Loop gain k_pd * G(s) * (k_vco / s) / n_div.
RationalTf open_loop_tf(const LoopParams& params, const RlcFilter& filter);

/// phi_out / phi_in for excess phase injected at the PD reference input.
/// Low-pass with DC gain n_div.
RationalTf input_jitter_tf(const LoopParams& params, const RlcFilter& filter);

/// phi_out / phi_vco for excess phase injected at the VCO. High-pass, 1 - H_in/N.
RationalTf vco_jitter_tf(const LoopParams& params, const RlcFilter& filter);

/// a/b + c/d formed over the product denominator.
RationalTf tf_add(const RationalTf& x, const RationalTf& y);
RationalTf tf_scale(const RationalTf& x, double k);

struct BodeTable {
    std::vector<double> freqs;      // Hz, log-spaced
    std::vector<double> mag_db;
    std::vector<double> phase_deg;  // unwrapped

    std::size_t size() const noexcept { return freqs.size(); }
};

/// Log-spaced frequency response. The grid evaluation runs as an OpenMP loop;
/// phase unwrapping is a serial pass afterwards.
BodeTable bode(const RationalTf& tf, double f_lo, double f_hi, int n_points);

/// Single-threaded reference for bode(); results are bitwise identical.
BodeTable bode_reference(const RationalTf& tf, double f_lo, double f_hi, int n_points);

enum class Stability { Stable, Marginal, Unstable };

inline constexpr double kStabilityEpsAbs = 1e-3;  // rad/s

/// Stable iff every pole has Re < -kStabilityEpsAbs; Marginal when a pole sits
/// within +-kStabilityEpsAbs of the imaginary axis and none is further right.
Stability stability(const RationalTf& tf);

const char* to_string(Stability s);

/// Lowest frequency (Hz) where |L(j 2 pi f)| falls through 1, by bisection.
double crossover_frequency(const LoopParams& params, const RlcFilter& filter);

struct Peak {
    double f_hz;
    double mag_db;
};

/// Largest magnitude on a dense log grid.
Peak peak_magnitude(const RationalTf& tf, double f_lo, double f_hi, int n_points);

} // namespace pll
