#pragma once

#include <optional>
#include <span>
#include <stop_token>

#include "pll/types.hpp"

namespace pll {

/// Declares lock once |f - f_target| / f_target <= tol has held continuously
/// for `window` seconds. The reported time is the start of that stretch plus
/// the window, i.e. the moment lock becomes known.
class LockDetector {
public:
    LockDetector(double f_target, double tol, double window);

    /// Feed one (time, instantaneous frequency) sample; times must increase.
    /// Returns true on the sample where lock is first declared.
    bool observe(double t, double freq_hz);

    std::optional<double> lock_time() const noexcept { return lock_time_; }
    bool locked() const noexcept { return lock_time_.has_value(); }

private:
    double f_target_;
    double tol_;
    double window_;
    double run_start_ = 0.0;
    bool in_run_ = false;
    std::optional<double> lock_time_;
};

/// Runs the lock detector over a recorded frequency series.
std::optional<double> detect_lock(std::span<const double> t, std::span<const double> freq_hz,
                                  const LoopParams& params, const SimConfig& cfg);

/// Fixed-step closed-loop run of PD -> RLC filter -> VCO -> divide-by-N.
///
/// Per step k at t_k = k dt:
///   phi_ref = 2 pi f_in t_k + phi_in(t_k)
///   phi_fb  = phi_vco / n_div
///   v_pd    = k_pd (phi_ref - phi_fb)
///   v_cont  = bilinear filter step on v_pd
///   phi_vco += (2 pi f_free + k_vco v_cont) dt + phi_vco_jitter(t_{k+1}) - phi_vco_jitter(t_k)
///
/// The VCO starts at phase phi_vco_jitter(0) with the filter at rest. At most
/// one jitter spec per injection point. `stop` is polled between steps;
/// a stop request throws SimulationCancelled.
SimTrace simulate(const LoopParams& params, const RlcFilter& filter, const SimConfig& cfg,
                  std::span<const JitterSpec> jitters, std::stop_token stop = {});

/// Static phase error the loop holds to absorb the VCO's offset from the
/// target: 2 pi (n_div f_in - f_free) / (k_pd k_vco).
double steady_state_phase_error(const LoopParams& params);

} // namespace pll
