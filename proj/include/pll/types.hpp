#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace pll {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Loop constants of the PD -> filter -> VCO -> divider loop.
///
/// Frequencies are held in hertz; angular values are derived at point of use.
/// When `f_free` is not given the VCO is centred on the lock target n_div * f_in.
class LoopParams {
public:
    LoopParams(double k_pd, double k_vco, int n_div, double f_in,
               std::optional<double> f_free = std::nullopt);

    double k_pd() const noexcept { return k_pd_; }      // V/rad
    double k_vco() const noexcept { return k_vco_; }    // rad/s/V
    int n_div() const noexcept { return n_div_; }
    double f_in() const noexcept { return f_in_; }      // Hz
    double f_free() const noexcept { return f_free_; }  // Hz

    /// n_div * f_in, the frequency the loop steers the VCO to.
    double f_target() const noexcept { return static_cast<double>(n_div_) * f_in_; }

    LoopParams with_gains(double k_pd, double k_vco) const;
    LoopParams with_f_free(double f_free) const;

    friend bool operator==(const LoopParams&, const LoopParams&) = default;

private:
    double k_pd_;
    double k_vco_;
    int n_div_;
    double f_in_;
    double f_free_;
};

/// Series RLC low-pass section feeding the VCO control input.
class RlcFilter {
public:
    RlcFilter(double r, double l, double c);

    double r() const noexcept { return r_; }
    double l() const noexcept { return l_; }
    double c() const noexcept { return c_; }

    double a1() const noexcept { return 1.0 / (l_ * c_); }  // 1/LC
    double a2() const noexcept { return r_ / l_; }          // R/L

    friend bool operator==(const RlcFilter&, const RlcFilter&) = default;

private:
    double r_;
    double l_;
    double c_;
};

struct PolePair {
    std::complex<double> s1;
    std::complex<double> s2;
};

enum class Injection { PdInput, Vco };
enum class JitterKind { Sinusoidal, RandomWalk, WhitePhase };

/// Description of an injected excess-phase sequence.
///
/// amplitude is the peak (Sinusoidal) or the per-sample standard deviation
/// (WhitePhase, and the step size of RandomWalk). freq is used only by
/// Sinusoidal, seed only by the random kinds.
class JitterSpec {
public:
    JitterSpec(Injection injection, JitterKind kind, double amplitude, double freq = 0.0,
               std::uint64_t seed = 0);

    static JitterSpec sinusoidal(Injection at, double amplitude, double freq);
    static JitterSpec white_phase(Injection at, double amplitude, std::uint64_t seed);
    static JitterSpec random_walk(Injection at, double amplitude, std::uint64_t seed);

    Injection injection() const noexcept { return injection_; }
    JitterKind kind() const noexcept { return kind_; }
    double amplitude() const noexcept { return amplitude_; }
    double freq() const noexcept { return freq_; }
    std::uint64_t seed() const noexcept { return seed_; }

    friend bool operator==(const JitterSpec&, const JitterSpec&) = default;

private:
    Injection injection_;
    JitterKind kind_;
    double amplitude_;
    double freq_;
    std::uint64_t seed_;
};

enum class SimMode { PhaseDomain, FullWave };

class SimConfig {
public:
    struct Fields {
        SimMode mode = SimMode::PhaseDomain;
        double dt = 1e-10;
        double duration = 200e-6;
        double lock_freq_tol = 1e-4;
        double lock_window = 2e-6;
        int decimation = 100;
        // VCO ignores v_cont and free-runs; reference runs for "loop opened" comparisons.
        bool open_loop = false;
    };

    SimConfig() : SimConfig(Fields{}) {}
    explicit SimConfig(const Fields& f);

    SimMode mode() const noexcept { return f_.mode; }
    double dt() const noexcept { return f_.dt; }
    double duration() const noexcept { return f_.duration; }
    double lock_freq_tol() const noexcept { return f_.lock_freq_tol; }
    double lock_window() const noexcept { return f_.lock_window; }
    int decimation() const noexcept { return f_.decimation; }
    bool open_loop() const noexcept { return f_.open_loop; }
    const Fields& fields() const noexcept { return f_; }

    /// Throws ConfigError when FullWave sampling is coarser than 20 points per
    /// output-carrier period of `params`.
    void check_against(const LoopParams& params) const;

    friend bool operator==(const SimConfig& a, const SimConfig& b) {
        const auto& x = a.f_;
        const auto& y = b.f_;
        return x.mode == y.mode && x.dt == y.dt && x.duration == y.duration &&
               x.lock_freq_tol == y.lock_freq_tol && x.lock_window == y.lock_window &&
               x.decimation == y.decimation && x.open_loop == y.open_loop;
    }

private:
    Fields f_;
};

/// Decimated record of a closed-loop run.
struct SimTrace {
    std::vector<double> t;          // s
    std::vector<double> v_pd;       // V
    std::vector<double> v_cont;     // V
    std::vector<double> phase_out;  // rad, total VCO phase (unwrapped)
    std::vector<double> freq_out;   // Hz, backward difference of phase_out

    // FullWave only: sin() of the reference, divider and VCO phases.
    std::vector<double> ref_wave;
    std::vector<double> fb_wave;
    std::vector<double> out_wave;

    std::optional<double> lock_time;        // s
    std::optional<double> final_phase_err;  // rad, mean over the last lock window
    std::optional<double> mean_v_cont;      // V, mean from lock declaration to end

    std::size_t size() const noexcept { return t.size(); }
};

} // namespace pll
