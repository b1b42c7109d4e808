#include "pll/types.hpp"

#include <cmath>
#include <string>

#include "pll/errors.hpp"

namespace pll {
namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidInput(std::string(name) + " must be finite");
    }
}

void require_positive(double v, const char* name) {
    require_finite(v, name);
    if (!(v > 0.0)) {
        throw InvalidInput(std::string(name) + " must be > 0");
    }
}

} // namespace

LoopParams::LoopParams(double k_pd, double k_vco, int n_div, double f_in,
                       std::optional<double> f_free)
    : k_pd_(k_pd), k_vco_(k_vco), n_div_(n_div), f_in_(f_in), f_free_(0.0) {
    require_positive(k_pd, "k_pd");
    require_positive(k_vco, "k_vco");
    if (n_div < 1) {
        throw InvalidInput("n_div must be >= 1");
    }
    require_positive(f_in, "f_in");
    if (!std::isfinite(kTwoPi * f_target())) {
        throw InvalidInput("n_div * f_in overflows as an angular frequency");
    }
    f_free_ = f_free.value_or(f_target());
    require_positive(f_free_, "f_free");
    if (!std::isfinite(kTwoPi * f_free_)) {
        throw InvalidInput("f_free overflows as an angular frequency");
    }
}

LoopParams LoopParams::with_gains(double k_pd, double k_vco) const {
    return LoopParams(k_pd, k_vco, n_div_, f_in_, f_free_);
}

LoopParams LoopParams::with_f_free(double f_free) const {
    return LoopParams(k_pd_, k_vco_, n_div_, f_in_, f_free);
}

RlcFilter::RlcFilter(double r, double l, double c) : r_(r), l_(l), c_(c) {
    require_finite(r, "r");
    if (r < 0.0) {
        throw InvalidInput("r must be >= 0");
    }
    require_positive(l, "l");
    require_positive(c, "c");
    if (!std::isfinite(a1()) || !std::isfinite(a2())) {
        throw InvalidInput("1/(l*c) and r/l must be finite");
    }
}

JitterSpec::JitterSpec(Injection injection, JitterKind kind, double amplitude, double freq,
                       std::uint64_t seed)
    : injection_(injection), kind_(kind), amplitude_(amplitude), freq_(freq), seed_(seed) {
    require_finite(amplitude, "jitter amplitude");
    if (amplitude < 0.0) {
        throw InvalidInput("jitter amplitude must be >= 0");
    }
    require_finite(freq, "jitter freq");
    if (kind == JitterKind::Sinusoidal && !(freq > 0.0)) {
        throw InvalidInput("sinusoidal jitter needs freq > 0");
    }
}

JitterSpec JitterSpec::sinusoidal(Injection at, double amplitude, double freq) {
    return JitterSpec(at, JitterKind::Sinusoidal, amplitude, freq, 0);
}

JitterSpec JitterSpec::white_phase(Injection at, double amplitude, std::uint64_t seed) {
    return JitterSpec(at, JitterKind::WhitePhase, amplitude, 0.0, seed);
}

JitterSpec JitterSpec::random_walk(Injection at, double amplitude, std::uint64_t seed) {
    return JitterSpec(at, JitterKind::RandomWalk, amplitude, 0.0, seed);
}

SimConfig::SimConfig(const Fields& f) : f_(f) {
    require_positive(f.dt, "dt");
    require_positive(f.duration, "duration");
    if (!(f.duration > f.dt)) {
        throw InvalidInput("duration must exceed dt");
    }
    require_finite(f.lock_freq_tol, "lock_freq_tol");
    if (!(f.lock_freq_tol > 0.0 && f.lock_freq_tol < 1.0)) {
        throw InvalidInput("lock_freq_tol must lie in (0, 1)");
    }
    require_positive(f.lock_window, "lock_window");
    if (f.decimation < 1) {
        throw InvalidInput("decimation must be >= 1");
    }
}

void SimConfig::check_against(const LoopParams& params) const {
    if (f_.mode != SimMode::FullWave) {
        return;
    }
    const double max_dt = 1.0 / (20.0 * params.f_target());
    if (f_.dt > max_dt) {
        throw ConfigError("full_wave mode needs dt <= 1/(20*n_div*f_in) = " +
                              std::to_string(max_dt) + " s",
                          "dt_s");
    }
}

} // namespace pll
