#include <gtest/gtest.h>

#include <random>

#include "pll/config.hpp"
#include "pll/errors.hpp"
#include "pll/trace_io.hpp"

using namespace pll;

namespace {

ConfigError config_error(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e;
    }
    ADD_FAILURE() << "expected ConfigError for:\n" << text;
    return ConfigError("none");
}

} // namespace

TEST(ParseConfig, MinimalConfigTakesDefaults) {
    const auto cfg = parse_config("f_in_hz=5e7\nn_div=100\n");
    EXPECT_EQ(cfg.params, LoopParams(defaults::k_pd, defaults::k_vco, 100, 5e7));
    EXPECT_EQ(cfg.params.f_free(), 5e9);
    EXPECT_EQ(cfg.filter, default_filter());
    EXPECT_EQ(cfg.sim, SimConfig{});
    EXPECT_TRUE(cfg.jitters.empty());
}

TEST(ParseConfig, FullConfigWithCommentsAndJitter) {
    const auto cfg = parse_config(R"(# operating point
f_in_hz = 5.0E+07     # 50 MHz
n_div = 100
f_free_hz=4.999e9
k_pd_v_per_rad=0.5
k_vco_rad_per_s_per_v=+1e9
r_ohm=0
l_h=2e-6
c_f=3e-12
mode=full_wave
dt_s=1e-11
duration_s=1e-6
lock_freq_tol=1e-3
lock_window_s=1e-7
decimation=4
jitter.3.injection=vco
jitter.3.kind=random_walk
jitter.3.amplitude_rad=1e-4
jitter.3.seed=0xff
jitter.0.injection=pd_input
jitter.0.kind=sinusoidal
jitter.0.amplitude_rad=0.05
jitter.0.freq_hz=2.5e6
)");
    EXPECT_EQ(cfg.params.f_free(), 4.999e9);
    EXPECT_EQ(cfg.params.k_pd(), 0.5);
    EXPECT_EQ(cfg.params.k_vco(), 1e9);
    EXPECT_EQ(cfg.filter, RlcFilter(0.0, 2e-6, 3e-12));
    EXPECT_EQ(cfg.sim.mode(), SimMode::FullWave);
    EXPECT_EQ(cfg.sim.decimation(), 4);
    ASSERT_EQ(cfg.jitters.size(), 2u);
    EXPECT_EQ(cfg.jitters[0], JitterSpec::sinusoidal(Injection::PdInput, 0.05, 2.5e6));
    EXPECT_EQ(cfg.jitters[1], JitterSpec::random_walk(Injection::Vco, 1e-4, 255));
}

TEST(ParseConfig, InvariantViolationNamesKeyAndLine) {
    const auto e = config_error("f_in_hz=5e7\nn_div=0\n");
    EXPECT_EQ(e.key(), "n_div");
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("n_div"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
}

TEST(ParseConfig, Errors) {
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\nk_pd=1\n").key(), "k_pd");           // unknown
    EXPECT_EQ(config_error("f_in_hz=5e7\n").key(), "n_div");                              // missing
    EXPECT_EQ(config_error("f_in_hz=5e7x\nn_div=100\n").key(), "f_in_hz");                // number
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100.5\n").key(), "n_div");                 // integer
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\nn_div=10\n").key(), "n_div");          // duplicate
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\nmode=spice\n").key(), "mode");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\nr_ohm=-1\n").key(), "r_ohm");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\nlock_freq_tol=2\n").key(), "lock_freq_tol");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\ndt_s=nan\n").key(), "dt_s");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\nmode=full_wave\n").key(), "dt_s");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\njitter.0.kind=sinusoidal\n").key(),
              "jitter.0.injection");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\njitter.0.injection=vco\n"
                           "jitter.0.kind=sinusoidal\njitter.0.amplitude_rad=1\n")
                  .key(),
              "jitter.0.freq_hz");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\njitter.0.colour=red\n").key(), "jitter.0.colour");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\njitter.x.kind=red\n").key(), "jitter.x.kind");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\njitter.0.injection=vco\njitter.0.kind=white_phase\n"
                           "jitter.0.amplitude_rad=1\njitter.0.seed=-3\n")
                  .key(),
              "jitter.0.seed");
    EXPECT_EQ(config_error("f_in_hz=5e7\nn_div=100\nbogus line\n").line(), 3);
}

TEST(ParseConfig, TwoBlocksAtOneInjectionPointRejected) {
    const auto e = config_error(
        "f_in_hz=5e7\nn_div=100\n"
        "jitter.0.injection=vco\njitter.0.kind=white_phase\njitter.0.amplitude_rad=1\n"
        "jitter.1.injection=vco\njitter.1.kind=random_walk\njitter.1.amplitude_rad=1\n");
    EXPECT_EQ(e.key(), "jitter.1.injection");
}

TEST(FormatConfig, EchoCarriesLockTarget) {
    const auto cfg = parse_config("f_in_hz=5e7\nn_div=100\n");
    const auto report = format_report(cfg, Metrics{std::nullopt, std::nullopt, std::nullopt, 0.0});
    EXPECT_NE(report.find("# lock_target_hz=5000000000\n"), std::string::npos);
    EXPECT_NE(report.find("lock_time_s=none\n"), std::string::npos);
    EXPECT_EQ(parse_config(report_config_section(report)), cfg);
}

TEST(FormatConfig, RoundTripProperty) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto lu = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
    for (int i = 0; i < 300; ++i) {
        const int n_div = 1 + static_cast<int>(rng() % 1000);
        const double f_in = lu(1e3, 1e9);
        SimConfig::Fields sf;
        sf.mode = u(rng) < 0.5 ? SimMode::PhaseDomain : SimMode::FullWave;
        sf.dt = 1.0 / (20.0 * n_div * f_in) * lu(0.01, 1.0);
        sf.duration = sf.dt * lu(2.0, 1e6);
        sf.lock_freq_tol = lu(1e-9, 0.5);
        sf.lock_window = lu(1e-9, 1e-3);
        sf.decimation = 1 + static_cast<int>(rng() % 500);
        std::vector<JitterSpec> js;
        if (u(rng) < 0.5) js.push_back(JitterSpec::sinusoidal(Injection::PdInput, lu(1e-6, 1), lu(1, 1e9)));
        if (u(rng) < 0.5) {
            js.emplace_back(Injection::Vco, u(rng) < 0.5 ? JitterKind::WhitePhase : JitterKind::RandomWalk,
                            lu(1e-9, 1), 0.0, rng());
        }
        const ResolvedConfig cfg{LoopParams(lu(1e-3, 1e3), lu(1e3, 1e12), n_div, f_in, lu(1e3, 1e12)),
                                 RlcFilter(u(rng) < 0.1 ? 0.0 : lu(1e-3, 1e5), lu(1e-12, 1), lu(1e-18, 1e-3)),
                                 SimConfig(sf), js};
        const auto text = format_config(cfg);
        ASSERT_EQ(parse_config(text), cfg) << text;
    }
}
