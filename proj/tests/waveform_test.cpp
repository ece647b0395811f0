#include "oim/waveform.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oim/types.hpp"

namespace {

oim::StrategySpec spec_of(double a, double p, double t1, double v) {
    oim::StrategySpec s;
    s.alpha_sq = a;
    s.p = p;
    s.t1 = t1;
    s.v = v;
    s.n0 = v > 0.5 ? 0 : 1;
    return s;
}

TEST(Waveform, FrozenMagnitudes) {
    EXPECT_NEAR(oim::dolinar_magnitude(1.0, 0.2, 0.5), 0.6026551619153517, 1e-12);
    EXPECT_NEAR(oim::dolinar_magnitude(0.5, 0.4, 0.3), 0.80156382458855, 1e-12);
    EXPECT_NEAR(oim::single_state_magnitude(1.0, 0.2, 0.3, 0.5), 0.676563381603409, 1e-12);
    EXPECT_NEAR(oim::single_state_magnitude(0.75, 0.6, 0.45, 0.25), 0.924620370706239, 1e-12);
}

TEST(Waveform, DivergesAtEqualPriorStart) {
    EXPECT_TRUE(std::isinf(oim::dolinar_magnitude(0.0, 0.2, 0.5)));
    EXPECT_TRUE(std::isfinite(oim::dolinar_magnitude(1e-4, 0.2, 0.5)));
    EXPECT_TRUE(std::isfinite(oim::dolinar_magnitude(0.0, 0.2, 0.3)));
}

TEST(Waveform, MagnitudeDominatesSqrtAlphaAndDecays) {
    const double a = 0.35;
    const double sqrt_a = std::sqrt(a);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
        const double t = (k + 0.5) / 200.0;
        const double m = oim::dolinar_magnitude(t, a, 0.5);
        EXPECT_GE(m, sqrt_a);
        EXPECT_LE(m, prev);
        prev = m;
    }
    prev = std::numeric_limits<double>::infinity();
    for (int k = 100; k < 200; ++k) {
        const double t = (k + 0.5) / 200.0;
        const double m = oim::single_state_magnitude(t, a, 0.3, 0.5);
        EXPECT_GE(m, sqrt_a);
        EXPECT_LE(m, prev);
        prev = m;
    }
}

TEST(Waveform, RejectsBadArguments) {
    EXPECT_THROW(oim::dolinar_magnitude(-0.1, 0.2, 0.5), std::invalid_argument);
    EXPECT_THROW(oim::dolinar_magnitude(1.1, 0.2, 0.5), std::invalid_argument);
    EXPECT_THROW(oim::dolinar_magnitude(0.5, 0.2, 0.0), std::invalid_argument);
    EXPECT_THROW(oim::single_state_magnitude(0.5, 0.2, 0.3, 0.5), std::invalid_argument);
    EXPECT_THROW(oim::single_state_magnitude(1.2, 0.2, 0.3, 0.5), std::invalid_argument);
    EXPECT_THROW(oim::single_state_magnitude(0.8, 0.2, 1.0, 0.5), std::invalid_argument);
}

TEST(Waveform, QuantizerRoundTripAndLevels) {
    const double cap = 3.0;
    const int bits = 5;
    std::set<double> seen;
    for (int i = 0; i <= 1000; ++i) {
        const double x = 4.0 * i / 1000.0; // sweeps past the cap
        const double q = oim::quantize_magnitude(x, cap, bits);
        EXPECT_DOUBLE_EQ(oim::quantize_magnitude(q, cap, bits), q);
        EXPECT_GE(q, 0.0);
        EXPECT_LE(q, cap);
        seen.insert(q);
    }
    EXPECT_LE(seen.size(), static_cast<std::size_t>(1 << bits));
    // reconstruction sits at level centers
    const double delta = cap / (1 << bits);
    for (double q : seen) {
        const double idx = q / delta - 0.5;
        EXPECT_NEAR(idx, std::round(idx), 1e-9);
    }
}

TEST(Waveform, QuantizerPassThrough) {
    EXPECT_DOUBLE_EQ(oim::quantize_magnitude(1.7, 3.0, 0), 1.7);
    EXPECT_DOUBLE_EQ(
        oim::quantize_magnitude(1.7, std::numeric_limits<double>::infinity(), 8), 1.7);
    EXPECT_DOUBLE_EQ(oim::quantize_magnitude(1.7, 0.0, 8), 0.0);
}

TEST(Waveform, ModeBoundaryOnBinGrid) {
    oim::ImperfectionModel imp = oim::ImperfectionModel::ideal(64);
    const int m = 40;
    const auto wf = oim::build_waveform(spec_of(0.2, 0.5, m / 64.0, 0.3), imp);
    ASSERT_EQ(wf.n_bins(), 64u);
    EXPECT_EQ(wf.t1_index(), static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < wf.n_bins(); ++k) {
        EXPECT_EQ(wf.bins[k].mode == oim::Mode::first, k < static_cast<std::size_t>(m));
        EXPECT_NEAR(wf.bins[k].t_mid, (k + 0.5) / 64.0, 1e-15);
    }
}

TEST(Waveform, PureDolinarNeverSwitches) {
    oim::ImperfectionModel imp = oim::ImperfectionModel::ideal(32);
    oim::StrategySpec s = spec_of(0.2, 0.5, 1.0, 0.5);
    s.n0 = 1;
    const auto wf = oim::build_waveform(s, imp);
    EXPECT_EQ(wf.t1_index(), wf.n_bins());
    for (const auto& b : wf.bins) EXPECT_EQ(b.mode, oim::Mode::first);
}

TEST(Waveform, ClampAndQuantizeApplied) {
    oim::ImperfectionModel imp = oim::ImperfectionModel::ideal(256);
    imp.r_max = 50.0;
    imp.dac_bits = 8;
    const double a = 0.2;
    const auto wf = oim::build_waveform(spec_of(a, 0.5, 0.5, 0.3), imp);
    const double cap = std::sqrt(imp.r_max * a);
    const double delta = cap / (1 << 8);
    bool clamped_somewhere = false;
    for (const auto& b : wf.bins) {
        EXPECT_LE(b.mag_applied, cap);
        EXPECT_GE(b.mag_ideal, b.mag_applied - 0.5 * delta);
        const double idx = b.mag_applied / delta - 0.5;
        EXPECT_NEAR(idx, std::round(idx), 1e-9);
        if (b.mag_ideal > cap) clamped_somewhere = true;
    }
    EXPECT_TRUE(clamped_somewhere); // the equal-prior start diverges
}

TEST(Waveform, UnclampedTableMatchesClosedForm) {
    oim::ImperfectionModel imp = oim::ImperfectionModel::ideal(128);
    const auto wf = oim::build_waveform(spec_of(0.4, 0.5, 0.5, 0.3), imp);
    for (const auto& b : wf.bins) {
        const double want = b.mode == oim::Mode::first
                                ? oim::dolinar_magnitude(b.t_mid, 0.4, 0.5)
                                : oim::single_state_magnitude(b.t_mid, 0.4, 0.3, 0.5);
        EXPECT_DOUBLE_EQ(b.mag_ideal, want);
        EXPECT_DOUBLE_EQ(b.mag_applied, want);
    }
}

} // namespace
