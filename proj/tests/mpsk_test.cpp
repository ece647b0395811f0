#include "oim/mpsk.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

namespace {

TEST(VacuumLikelihood, NullingOwnStateIsSilent) {
    for (int j = 0; j < 5; ++j) {
        const double th = 2.0 * std::numbers::pi * j / 5.0;
        EXPECT_DOUBLE_EQ(oim::vacuum_likelihood(th, th, 0.37), 1.0);
    }
    // opposite phase at energy E leaves 4E mean photons
    EXPECT_NEAR(oim::vacuum_likelihood(0.0, std::numbers::pi, 0.25), std::exp(-1.0), 1e-12);
    EXPECT_THROW(oim::vacuum_likelihood(0.0, 1.0, -0.1), std::invalid_argument);
}

TEST(MinInconclusive, TernaryMatchesClosedForm) {
    // with one third of the energy left after two tests, the inconclusive
    // weight of the elimination stage is exp(-2 f alpha_sq)
    for (double a : {0.2, 0.4, 0.6}) {
        const double want = std::exp(-2.0 * (2.0 / 3.0) * a);
        EXPECT_NEAR(oim::min_inconclusive_prob(3, a, 2.0 / 3.0), want, 1e-9) << "a=" << a;
    }
    EXPECT_NEAR(oim::min_inconclusive_prob(3, 0.2, 2.0 / 3.0), 0.766, 1e-3);
    EXPECT_NEAR(oim::min_inconclusive_prob(3, 0.4, 2.0 / 3.0), 0.587, 1e-3);
    EXPECT_NEAR(oim::min_inconclusive_prob(3, 0.6, 2.0 / 3.0), 0.449, 1e-3);
}

TEST(MinInconclusive, WellBehavedAcrossAlphabets) {
    for (int m = 3; m <= 8; ++m) {
        const double f = (m - 1.0) / m;
        const double pi1 = oim::min_inconclusive_prob(m, 0.2 * std::log2(m), f);
        EXPECT_GT(pi1, 0.0);
        EXPECT_LT(pi1, 1.0);
    }
    // more energy, fewer inconclusive outcomes
    double prev = 1.0;
    for (double a : {0.1, 0.3, 0.6, 1.0}) {
        const double pi1 = oim::min_inconclusive_prob(4, a, 0.75);
        EXPECT_LT(pi1, prev);
        prev = pi1;
    }
    EXPECT_THROW(oim::min_inconclusive_prob(2, 0.2, 0.5), std::invalid_argument);
    EXPECT_THROW(oim::min_inconclusive_prob(3, 0.2, 0.0), std::invalid_argument);
    EXPECT_THROW(oim::min_inconclusive_prob(3, 0.2, 1.5), std::invalid_argument);
}

TEST(HybridTpsk, ZeroBudgetLeavesStageOneOnly) {
    oim::MpskConfig c;
    c.m = 3;
    c.alpha_sq = 0.2;
    c.f = 2.0 / 3.0;
    c.target_pi2 = 0.0;
    const auto r = oim::hybrid_tpsk(c);
    EXPECT_DOUBLE_EQ(r.p_i_stage2, 0.0);
    EXPECT_NEAR(r.p_i_total, r.p_i_stage1, 1e-15);
    EXPECT_NEAR(r.p_i_stage1, oim::min_inconclusive_prob(3, 0.2, 2.0 / 3.0), 1e-12);
    EXPECT_GT(r.p_e, 0.0);
    EXPECT_NEAR(r.conditional_error, r.p_e / (1.0 - r.p_i_total), 1e-15);
}

TEST(HybridTpsk, ErrorFallsAsBudgetGrows) {
    oim::MpskConfig c;
    c.m = 3;
    c.alpha_sq = 0.2;
    c.f = 0.66;
    double prev = 1.0;
    for (double pi2 : {0.0, 0.05, 0.10, 0.15}) {
        c.target_pi2 = pi2;
        const auto r = oim::hybrid_tpsk(c);
        EXPECT_NEAR(r.p_i_stage2, pi2, 2e-5);
        EXPECT_LT(r.conditional_error, prev);
        prev = r.conditional_error;
    }
}

TEST(HybridTpsk, RejectsBudgetBeyondConclusiveMass) {
    oim::MpskConfig c;
    c.m = 3;
    c.alpha_sq = 0.2;
    c.f = 2.0 / 3.0;
    c.target_pi2 = 0.5; // conclusive mass is only ~0.234
    EXPECT_THROW(oim::hybrid_tpsk(c), std::invalid_argument);
    c.target_pi2 = 0.0;
    c.m = 4;
    EXPECT_THROW(oim::hybrid_tpsk(c), std::invalid_argument);
}

TEST(Heterodyne, DegenerateAlphabetGuessesUniformly) {
    // tolerance covers the mass outside the finite 6-sigma grid window
    EXPECT_NEAR(oim::heterodyne_baseline(3, 0.0, 0.0), 2.0 / 3.0, 1e-7);
    EXPECT_NEAR(oim::heterodyne_baseline(3, 0.0, 0.5), 2.0 / 3.0, 1e-7);
    EXPECT_NEAR(oim::heterodyne_baseline(4, 0.0, 0.0), 3.0 / 4.0, 1e-7);
}

TEST(Heterodyne, MonotoneInBudgetAndEnergy) {
    double prev = 1.0;
    for (double t : {0.0, 0.2, 0.4, 0.6}) {
        const double e = oim::heterodyne_baseline(3, 0.4, t);
        EXPECT_LT(e, prev);
        prev = e;
    }
    prev = 1.0;
    for (double a : {0.1, 0.3, 0.6}) {
        const double e = oim::heterodyne_baseline(3, a, 0.2);
        EXPECT_LT(e, prev);
        prev = e;
    }
    EXPECT_THROW(oim::heterodyne_baseline(1, 0.2, 0.1), std::invalid_argument);
    EXPECT_THROW(oim::heterodyne_baseline(3, 0.2, 1.0), std::invalid_argument);
}

TEST(Heterodyne, GridAgreesWithSampling) {
    const double grid = oim::heterodyne_baseline(3, 0.4, 0.3);
    const double mc = oim::heterodyne_baseline_mc(3, 0.4, 0.3, 400000, 909090);
    EXPECT_NEAR(grid, mc, 0.005);
}

TEST(ScalingStudy, CeilingFallsQuadratically) {
    std::vector<int> ms{3, 4, 5, 6, 7, 8};
    const auto pts = oim::scaling_study(ms, 0.2);
    ASSERT_EQ(pts.size(), 6u);
    EXPECT_NEAR(pts[0].log10_p_conc_max, -0.46256323, 1e-6);
    EXPECT_NEAR(pts[5].log10_p_conc_max, -4.80880887, 1e-6);
    for (std::size_t i = 1; i < pts.size(); ++i)
        EXPECT_LT(pts[i].log10_p_conc_max, pts[i - 1].log10_p_conc_max);
    EXPECT_THROW(oim::scaling_study(ms, 0.0), std::invalid_argument);
}

} // namespace
