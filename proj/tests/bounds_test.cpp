#include "oim/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace {

// Minimum error from the eigenvalues of p*rho1 - (1-p)*rho2 restricted to
// the two-dimensional span of the states: trace 2p-1 and determinant
// -p(1-p)(1-c^2) for squared state overlap c^2.
double helstrom_eigen_oracle(double alpha_sq, double p) {
    const double c2 = std::exp(-4.0 * alpha_sq);
    const double tr = 2.0 * p - 1.0;
    const double det = -p * (1.0 - p) * (1.0 - c2);
    const double gap = std::sqrt(tr * tr - 4.0 * det);
    return 0.5 * (1.0 - gap);
}

// Tail mass of the standard normal beyond 2*sqrt(alpha_sq), by Simpson
// integration.
double homodyne_tail_oracle(double alpha_sq) {
    const double lo = 2.0 * std::sqrt(alpha_sq);
    const double hi = lo + 40.0;
    const int n = 40000; // even
    const double h = (hi - lo) / n;
    auto phi = [](double x) {
        return std::exp(-0.5 * x * x) / std::sqrt(8.0 * std::atan(1.0));
    };
    double s = phi(lo) + phi(hi);
    for (int i = 1; i < n; ++i) s += phi(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

TEST(Bounds, FrozenValues) {
    EXPECT_NEAR(oim::helstrom_error(0.2, 0.5), 0.12896393844978543, 1e-12);
    EXPECT_NEAR(oim::helstrom_error(0.6, 0.5), 0.02321859130451942, 1e-12);
    EXPECT_NEAR(oim::helstrom_error(0.3, 0.7), 0.06785509895587388, 1e-12);
    EXPECT_NEAR(oim::idp_bound(0.2), 0.6703200460356393, 1e-12);
    EXPECT_NEAR(oim::idp_bound(0.6), 0.30119421191220214, 1e-12);
    EXPECT_NEAR(oim::overlap_sq(0.2), 0.44932896411722156, 1e-12);
    EXPECT_NEAR(oim::overlap_sq(0.6), 0.09071795328941251, 1e-12);
    EXPECT_NEAR(oim::homodyne_error(0.2), 0.18554668476134878, 1e-12);
    EXPECT_NEAR(oim::homodyne_error(0.6), 0.06066762517924107, 1e-12);
}

TEST(Bounds, HelstromMatchesEigenvalueOracle) {
    const double alphas[] = {0.01, 0.05, 0.2, 0.35, 0.6, 0.85, 1.2, 2.0};
    const double priors[] = {0.1, 0.25, 0.5, 0.65, 0.9};
    for (double a : alphas)
        for (double p : priors)
            EXPECT_NEAR(oim::helstrom_error(a, p), helstrom_eigen_oracle(a, p), 1e-12)
                << "a=" << a << " p=" << p;
}

TEST(Bounds, HomodyneMatchesGaussianTail) {
    for (double a : {0.05, 0.2, 0.4, 0.6, 1.0})
        EXPECT_NEAR(oim::homodyne_error(a), homodyne_tail_oracle(a), 1e-10) << "a=" << a;
}

TEST(Bounds, LimitsAndOrdering) {
    EXPECT_DOUBLE_EQ(oim::overlap_sq(0.0), 1.0);
    EXPECT_DOUBLE_EQ(oim::idp_bound(0.0), 1.0);
    EXPECT_DOUBLE_EQ(oim::helstrom_error(0.0, 0.5), 0.5);
    EXPECT_NEAR(oim::helstrom_error(50.0, 0.5), 0.0, 1e-12);
    for (double a : {0.05, 0.2, 0.4, 0.6, 1.0}) {
        EXPECT_LT(oim::helstrom_error(a, 0.5), oim::homodyne_error(a));
        EXPECT_LT(oim::helstrom_error(a, 0.5), oim::idp_bound(a));
        EXPECT_DOUBLE_EQ(oim::overlap_sq(a), oim::idp_bound(a) * oim::idp_bound(a));
    }
}

TEST(Bounds, MonotoneInAlpha) {
    double prev_h = 1.0, prev_u = 2.0, prev_x = 1.0;
    for (double a = 0.05; a <= 2.0; a += 0.05) {
        const double h = oim::helstrom_error(a, 0.5);
        const double u = oim::idp_bound(a);
        const double x = oim::homodyne_error(a);
        EXPECT_LT(h, prev_h);
        EXPECT_LT(u, prev_u);
        EXPECT_LT(x, prev_x);
        prev_h = h;
        prev_u = u;
        prev_x = x;
    }
}

TEST(Bounds, RejectsBadArguments) {
    EXPECT_THROW(oim::overlap_sq(-0.1), std::invalid_argument);
    EXPECT_THROW(oim::idp_bound(-1.0), std::invalid_argument);
    EXPECT_THROW(oim::homodyne_error(-0.5), std::invalid_argument);
    EXPECT_THROW(oim::helstrom_error(-0.2, 0.5), std::invalid_argument);
    EXPECT_THROW(oim::helstrom_error(0.2, 0.0), std::invalid_argument);
    EXPECT_THROW(oim::helstrom_error(0.2, 1.0), std::invalid_argument);
    EXPECT_THROW(oim::helstrom_error(0.2, 1.5), std::invalid_argument);
}

} // namespace
