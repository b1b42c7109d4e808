#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "pll/blocks.hpp"
#include "pll/errors.hpp"
#include "pll/linear_analysis.hpp"
#include "pll/measure.hpp"
#include "random_filters.hpp"

using namespace pll;
using cd = std::complex<double>;

namespace {

const RlcFilter kDefault(50.0, 1e-6, 1e-12);

double rel_err(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

// Closed-form unit-step response of a1 / (s^2 + a2 s + a1), underdamped case.
double underdamped_step(const RlcFilter& f, double t) {
    const double alpha = 0.5 * f.a2();
    const double wd = std::sqrt(f.a1() - alpha * alpha);
    return 1.0 - std::exp(-alpha * t) * (std::cos(wd * t) + alpha / wd * std::sin(wd * t));
}

} // namespace

TEST(PhaseDetector, Examples) {
    EXPECT_EQ(pd_output(1.0, 0.3, 0.3), 0.0);
    EXPECT_DOUBLE_EQ(pd_output(0.5, 0.0, 0.2), 0.1);
    EXPECT_DOUBLE_EQ(pd_output(2.0, std::numbers::pi / 4, 0.0), -std::numbers::pi / 2);
}

TEST(PhaseDetector, NonFiniteInputRejected) {
    EXPECT_THROW(pd_output(1.0, std::nan(""), 0.0), InvalidInput);
    EXPECT_THROW(pd_output(1.0, 0.0, INFINITY), InvalidInput);
}

TEST(PhaseDetector, Linearity) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double k = 0.1 + std::abs(u(rng));
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        EXPECT_NEAR(pd_output(k, a, b) + pd_output(k, c, d), pd_output(k, a + c, b + d),
                    1e-12 * k * 40.0);
    }
}

TEST(Reactances, ResonanceLeavesOnlyR) {
    const double f0 = 1.0 / (kTwoPi * std::sqrt(kDefault.l() * kDefault.c()));
    EXPECT_NEAR(reactances(kDefault, f0).z_mag, 50.0, 1e-9);
    EXPECT_NEAR(reactances(RlcFilter(0.0, 1e-6, 1e-12), f0).z_mag, 0.0, 1e-9);
}

TEST(Reactances, OracleValuesAt1GHz) {
    // mpmath, 50 digits: tests/oracles/compute_oracles.py
    const auto x = reactances(kDefault, 1e9);
    EXPECT_NEAR(x.x_l, 6283.1853071795865, 1e-12 * 6283.19);
    EXPECT_NEAR(x.x_c, 159.15494309189534, 1e-12 * 159.2);
    EXPECT_NEAR(x.z_mag, 6124.2344746317493, 1e-12 * 6124.3);
}

TEST(Reactances, NonPositiveFrequencyRejected) {
    EXPECT_THROW(reactances(kDefault, 0.0), InvalidInput);
    EXPECT_THROW(reactances(kDefault, -1.0), InvalidInput);
}

TEST(FilterTf, Coefficients) {
    const auto tf = filter_tf(kDefault);
    ASSERT_EQ(tf.den().size(), 3u);
    EXPECT_DOUBLE_EQ(tf.den()[0], 1e18);
    EXPECT_DOUBLE_EQ(tf.den()[1], 5e7);
    EXPECT_EQ(tf.den()[2], 1.0);
    EXPECT_EQ(tf.num(), Poly{tf.den()[0]});
    EXPECT_EQ(eval_tf(tf, 0.0), cd(1.0, 0.0));

    const auto undamped = filter_tf(RlcFilter(0.0, 1e-6, 1e-12));
    EXPECT_EQ(undamped.den()[1], 0.0);
}

TEST(FilterTf, HighFrequencyRolloff) {
    const auto tf = filter_tf(kDefault);
    EXPECT_LT(std::abs(eval_tf(tf, {0.0, 1e13})), 1e-7);
}

TEST(FilterPoles, DefaultFilterMatchesOracle) {
    const auto p = filter_poles(kDefault);
    EXPECT_LT(rel_err(p.s1, {-2.5e7, -999687451.15661025}), 1e-9);
    EXPECT_LT(rel_err(p.s2, {-2.5e7, 999687451.15661025}), 1e-9);
    EXPECT_EQ(p.s1, std::conj(p.s2));
}

TEST(FilterPoles, CriticalAndUndamped) {
    const double l = 1e-6, c = 1e-12;
    const RlcFilter crit(2.0 * std::sqrt(l / c), l, c);
    const auto pc = filter_poles(crit);
    EXPECT_LT(rel_err(pc.s1, -crit.a2() / 2), 1e-7);
    EXPECT_LT(rel_err(pc.s2, -crit.a2() / 2), 1e-7);

    const auto pu = filter_poles(RlcFilter(0.0, l, c));
    EXPECT_EQ(pu.s1.real(), 0.0);
    EXPECT_NEAR(pu.s1.imag(), -1e9, 1e-6);
    EXPECT_NEAR(pu.s2.imag(), 1e9, 1e-6);
}

TEST(FilterPoles, VietaAndStabilityOverRandomFilters) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const auto f = test_support::random_filter(rng);
        const auto [s1, s2] = filter_poles(f);
        EXPECT_LT(rel_err(s1 + s2, -f.a2()), 1e-9);
        EXPECT_LT(rel_err(s1 * s2, f.a1()), 1e-9);
        EXPECT_LT(s1.real(), 0.0);
        EXPECT_LT(s2.real(), 0.0);
        if (f.a2() * f.a2() < 4.0 * f.a1()) EXPECT_EQ(s1, std::conj(s2));
    }
}

TEST(EvalTf, FactoredAndExpandedAgreeAtOraclePoint) {
    const cd s(0.0, kTwoPi * 1e8);
    const cd want(1.6478629525540834, -0.085538314448292117);
    EXPECT_LT(rel_err(eval_tf(filter_tf(kDefault), s), want), 1e-9);
    EXPECT_LT(rel_err(eval_filter_factored(kDefault, s), want), 1e-9);
}

TEST(EvalTf, NearPoleRaises) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const auto f = test_support::random_filter(rng);
        const auto tf = filter_tf(f);
        const auto [s1, s2] = filter_poles(f);
        EXPECT_THROW(eval_tf(tf, s1), PoleEvaluationError);
        EXPECT_THROW(eval_tf(tf, s2 * cd(1.0 + 5e-7, 0.0)), PoleEvaluationError);
        EXPECT_THROW(eval_filter_factored(f, s1), PoleEvaluationError);
    }
}

TEST(FilterStepper, ZeroInputStaysZero) {
    auto st = discretize_filter(filter_tf(kDefault), 1e-10);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(st.step(0.0), 0.0);
}

TEST(FilterStepper, SecondOrderStateAndReset) {
    auto st = discretize_filter(filter_tf(kDefault), 1e-10);
    EXPECT_EQ(st.num_z().size(), 3u);
    EXPECT_EQ(st.den_z().size(), 3u);
    EXPECT_EQ(st.den_z()[0], 1.0);
    const double first = st.step(1.0);
    st.step(1.0);
    st.reset();
    EXPECT_EQ(st.step(1.0), first);
}

TEST(FilterStepper, StepConvergesAfterTenTimeConstants) {
    const double dt = 1e-10;
    auto st = discretize_filter(filter_tf(kDefault), dt);
    const double tau = 2.0 / kDefault.a2();  // envelope time constant, 40 ns
    double y = st.step(0.5);
    const int n = static_cast<int>(std::ceil(10.0 * tau / dt));
    for (int k = 1; k <= n; ++k) y = st.step(1.0);
    EXPECT_NEAR(y, 1.0, 1e-4);
}

TEST(FilterStepper, StepResponseMatchesClosedFormAt5ns) {
    // Closed form at 5 ns = 0.77216433804921439 (mpmath oracle).
    EXPECT_NEAR(underdamped_step(kDefault, 5e-9), 0.77216433804921439, 1e-12);
    const double dt = 1e-11;
    auto st = discretize_filter(filter_tf(kDefault), dt);
    double y = st.step(0.5);  // the step's value at its discontinuity
    for (int k = 1; k <= 500; ++k) y = st.step(1.0);
    EXPECT_NEAR(y, 0.77216433804921439, 1e-4);
}

TEST(FilterStepper, InvalidArguments) {
    EXPECT_THROW(discretize_filter(filter_tf(kDefault), 0.0), InvalidInput);
    EXPECT_THROW(discretize_filter(RationalTf({0.0, 0.0, 1.0}, {1.0, 1.0}), 1e-9), InvalidInput);
}

TEST(FilterStepper, BilinearKeepsStableFiltersStableAtAnyStep) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto f = test_support::random_filter(rng);
        // Step sizes from 1e-4 to 1e4 natural periods; far outside that the
        // z-plane coefficients no longer resolve the poles in double.
        const double w0 = std::sqrt(f.a1());
        for (double m : {1e-4, 1e-2, 1.0, 1e2, 1e4}) {
            EXPECT_NO_THROW(discretize_filter(filter_tf(f), m / w0));
        }
    }
}

TEST(FilterStepper, SinusoidalSteadyStateMatchesFrequencyResponse) {
    const double dt = 1e-11;
    const auto tf = filter_tf(kDefault);
    for (double f : {1e6, 3e7, 1.5e8, 1.5915494e8, 1.7e8, 5e8, 1.0 / (50.0 * dt)}) {
        auto st = discretize_filter(tf, dt);
        const double settle = 1e-6;  // 25 envelope time constants
        const double span = std::max(4.0 / f, 20e-9);
        const auto n = static_cast<std::size_t>((settle + span) / dt);
        std::vector<double> t(n), y(n);
        for (std::size_t k = 0; k < n; ++k) {
            t[k] = static_cast<double>(k) * dt;
            y[k] = st.step(std::sin(kTwoPi * f * t[k]));
        }
        const auto fit = fit_sinusoid(t, y, f, settle);
        const cd measured = std::polar(fit.amplitude, fit.phase);
        const cd expected = eval_tf(tf, {0.0, kTwoPi * f});
        EXPECT_LT(rel_err(measured, expected), 0.01) << "f = " << f;
    }
}

TEST(Vco, Examples) {
    EXPECT_DOUBLE_EQ(vco_advance(0.0, 5e9, 1e9, 0.0, 1e-12), kTwoPi * 5e-3);
    const double dphi = vco_advance(0.0, 5e9, kTwoPi * 1e8, 1.0, 1e-12);
    EXPECT_NEAR(dphi / (kTwoPi * 1e-12), 5.1e9, 1e-3);

    double phase = 0.0;
    const double v = 0.37, dt = 1e-12;
    const int n = 10000;
    for (int i = 0; i < n; ++i) phase = vco_advance(phase, 5e9, 1e9, v, dt);
    const double exact = (kTwoPi * 5e9 + 1e9 * v) * (n * dt);
    EXPECT_NEAR(phase, exact, 1e-12 * exact);
}

TEST(Vco, RejectsBadInput) {
    EXPECT_THROW(vco_advance(0.0, 5e9, 1e9, std::nan(""), 1e-12), InvalidInput);
    EXPECT_THROW(vco_advance(0.0, 5e9, 1e9, 0.0, 0.0), InvalidInput);
}

TEST(Divider, Examples) {
    EXPECT_DOUBLE_EQ(divide_phase(kTwoPi * 100, 100), kTwoPi);
    EXPECT_EQ(divide_phase(1.2345, 1), 1.2345);
    // Phase ramp at 5 GHz divides to a 50 MHz ramp.
    const double t = 3e-7;
    EXPECT_NEAR(divide_phase(kTwoPi * 5e9 * t, 100) / t, kTwoPi * 5e7, 1e-6);
}
