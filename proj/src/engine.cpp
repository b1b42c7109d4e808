#include "pll/engine.hpp"

#include <cmath>

#include "pll/blocks.hpp"
#include "pll/errors.hpp"
#include "pll/jitter.hpp"

namespace pll {

LockDetector::LockDetector(double f_target, double tol, double window)
    : f_target_(f_target), tol_(tol), window_(window) {}

bool LockDetector::observe(double t, double freq_hz) {
    if (lock_time_) {
        return false;
    }
    const double rel = std::abs(freq_hz - f_target_) / f_target_;
    if (!(rel <= tol_)) {
        in_run_ = false;
        return false;
    }
    if (!in_run_) {
        run_start_ = t;
        in_run_ = true;
    }
    if (t - run_start_ >= window_) {
        lock_time_ = run_start_ + window_;
        return true;
    }
    return false;
}

std::optional<double> detect_lock(std::span<const double> t, std::span<const double> freq_hz,
                                  const LoopParams& params, const SimConfig& cfg) {
    LockDetector det(params.f_target(), cfg.lock_freq_tol(), cfg.lock_window());
    const std::size_t n = std::min(t.size(), freq_hz.size());
    for (std::size_t i = 0; i < n && !det.locked(); ++i) {
        det.observe(t[i], freq_hz[i]);
    }
    return det.lock_time();
}

namespace {

constexpr double kPhaseLimit = 1e15;  // rad
constexpr std::uint64_t kStopPollMask = 0xFFF;

struct Injected {
    std::optional<JitterSource> pd_input;
    std::optional<JitterSource> vco;
};

Injected make_sources(std::span<const JitterSpec> jitters, double dt) {
    Injected out;
    for (const auto& spec : jitters) {
        auto& slot = spec.injection() == Injection::PdInput ? out.pd_input : out.vco;
        if (slot) {
            throw ConfigError("at most one jitter spec per injection point");
        }
        slot.emplace(spec, 0.0, dt);
    }
    return out;
}

} // namespace

SimTrace simulate(const LoopParams& params, const RlcFilter& filter, const SimConfig& cfg,
                  std::span<const JitterSpec> jitters, std::stop_token stop) {
    cfg.check_against(params);
    const double dt = cfg.dt();
    auto sources = make_sources(jitters, dt);
    auto stepper = discretize_filter(filter_tf(filter), dt);

    const auto n_steps = static_cast<std::uint64_t>(std::floor(cfg.duration() / dt * (1.0 + 1e-12))) + 1;
    const auto decim = static_cast<std::uint64_t>(cfg.decimation());
    const bool full_wave = cfg.mode() == SimMode::FullWave;
    const double k_pd = params.k_pd();
    const double k_vco = params.k_vco();
    const double f_free = params.f_free();
    const double w_in = kTwoPi * params.f_in();
    const int n_div = params.n_div();

    SimTrace tr;
    const std::size_t rows = static_cast<std::size_t>((n_steps - 1) / decim + 1);
    for (auto* v : {&tr.t, &tr.v_pd, &tr.v_cont, &tr.phase_out, &tr.freq_out}) {
        v->reserve(rows);
    }
    if (full_wave) {
        for (auto* v : {&tr.ref_wave, &tr.fb_wave, &tr.out_wave}) v->reserve(rows);
    }

    LockDetector lock(params.f_target(), cfg.lock_freq_tol(), cfg.lock_window());
    const auto final_steps = std::min<std::uint64_t>(
        n_steps, static_cast<std::uint64_t>(std::ceil(cfg.lock_window() / dt)));
    const std::uint64_t final_from = n_steps - final_steps;
    double err_sum = 0.0;
    double vc_sum = 0.0;
    std::uint64_t vc_count = 0;

    double vco_jit = sources.vco ? sources.vco->at(0) : 0.0;
    double phi_vco = vco_jit;
    double phi_prev = phi_vco;
    double phi_rec_prev = 0.0;
    double t_rec_prev = 0.0;

    for (std::uint64_t k = 0; k < n_steps; ++k) {
        if ((k & kStopPollMask) == 0 && stop.stop_requested()) {
            throw SimulationCancelled("simulation cancelled");
        }
        const double t = static_cast<double>(k) * dt;
        const double phi_ref = w_in * t + (sources.pd_input ? sources.pd_input->at(k) : 0.0);
        const double phi_fb = divide_phase(phi_vco, n_div);
        // Negative feedback: the PD sees the divider output as its reference.
        const double v_pd = pd_output(k_pd, phi_fb, phi_ref);
        const double v_cont = stepper.step(v_pd);
        if (!std::isfinite(v_cont)) {
            throw SimulationDiverged("control voltage became non-finite");
        }

        const double freq_now =
            k == 0 ? f_free + (cfg.open_loop() ? 0.0 : k_vco * v_cont / kTwoPi)
                   : (phi_vco - phi_prev) / (kTwoPi * dt);
        if (lock.observe(t, freq_now)) {
            vc_sum = 0.0;
            vc_count = 0;
        }
        if (lock.locked()) {
            vc_sum += v_cont;
            ++vc_count;
        }
        if (k >= final_from) {
            err_sum += phi_ref - phi_fb;
        }

        if (k % decim == 0) {
            const double f_rec = tr.t.empty() ? freq_now
                                              : (phi_vco - phi_rec_prev) / (kTwoPi * (t - t_rec_prev));
            tr.t.push_back(t);
            tr.v_pd.push_back(v_pd);
            tr.v_cont.push_back(v_cont);
            tr.phase_out.push_back(phi_vco);
            tr.freq_out.push_back(f_rec);
            if (full_wave) {
                tr.ref_wave.push_back(std::sin(phi_ref));
                tr.fb_wave.push_back(std::sin(phi_fb));
                tr.out_wave.push_back(std::sin(phi_vco));
            }
            phi_rec_prev = phi_vco;
            t_rec_prev = t;
        }

        phi_prev = phi_vco;
        const double drive = cfg.open_loop() ? 0.0 : v_cont;
        phi_vco = vco_advance(phi_vco, f_free, k_vco, drive, dt);
        if (sources.vco) {
            const double next = sources.vco->at(k + 1);
            phi_vco += next - vco_jit;
            vco_jit = next;
        }
        if (!(std::abs(phi_vco) <= kPhaseLimit)) {
            throw SimulationDiverged("VCO phase accumulator left the +-1e15 rad range");
        }
    }

    tr.lock_time = lock.lock_time();
    if (tr.lock_time) {
        tr.final_phase_err = err_sum / static_cast<double>(final_steps);
        tr.mean_v_cont = vc_sum / static_cast<double>(vc_count);
    }
    return tr;
}

double steady_state_phase_error(const LoopParams& params) {
    return kTwoPi * (params.f_target() - params.f_free()) / (params.k_pd() * params.k_vco());
}

} // namespace pll
