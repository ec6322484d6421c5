#include "rglab/fd.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace rglab;

namespace {

std::vector<double> sample_series(int n, double dt, const std::function<double(double)>& f) {
    std::vector<double> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = f(i * dt);
    return s;
}

} // namespace

TEST(FdDerivative, ExactOnQuadratic) {
    auto series = sample_series(25, 0.1, [](double t) { return t * t; });
    FdEstimate est = fd_time_derivative(series, 2, 0.1);
    EXPECT_NEAR(est.value, 2.0, 1e-12);
    for (double d : est.estimates) EXPECT_NEAR(d, 2.0, 1e-12);
    EXPECT_TRUE(est.converged);
}

TEST(FdDerivative, ConstantSeriesGivesZeroAllOrders) {
    auto series = sample_series(40, 0.05, [](double) { return 0.7071; });
    for (int m = 1; m <= 4; ++m) {
        FdEstimate est = fd_time_derivative(series, m, 0.05);
        EXPECT_NEAR(est.value, 0.0, 1e-7);
        EXPECT_TRUE(est.converged);
    }
}

TEST(FdDerivative, SecondOrderAccuracyOnSmoothSeries) {
    auto f = [](double t) { return std::exp(2 * t); };
    auto series = sample_series(40, 0.01, f);
    // second-order stencils with a cubic-in-dt Richardson residue
    FdEstimate d1 = fd_time_derivative(series, 1, 0.01);
    EXPECT_NEAR(d1.value, 2.0, 1e-5);
    EXPECT_NEAR(d1.order_estimate, 2.0, 0.4);
    FdEstimate d2 = fd_time_derivative(series, 2, 0.01);
    EXPECT_NEAR(d2.value, 4.0, 1e-4);
    EXPECT_TRUE(d2.converged);
    EXPECT_NEAR(d2.order_estimate, 2.0, 0.5);
}

TEST(FdDerivative, SeriesTooShortRejected) {
    auto series = sample_series(8, 0.1, [](double t) { return t; });
    EXPECT_THROW(fd_time_derivative(series, 2, 0.1), std::invalid_argument);
}

TEST(CuspProbe, OracleSanityAnchors) {
    // f(0) = int e^{-3|x|} dx = 2/3 exactly
    EXPECT_NEAR(oracles::cusp_observable(0.0), 2.0 / 3.0, 1e-9);
    // Gaussian-observable control at t=0: int e^{-x^2-2|x|} dx = e sqrt(pi) erfc(1)
    const double expected = std::exp(1.0) * std::sqrt(M_PI) * std::erfc(1.0);
    EXPECT_NEAR(oracles::gaussian_observable_of_cusp_state(0.0), expected, 1e-9);
}

TEST(CuspProbe, SecondDerivativeFailsToConverge) {
    // The kink state observed through the slowly-decaying weight e^{-|x|}
    // has no finite second time-derivative at t = 0: the three-scale
    // estimates drift apart instead of settling.
    const double dt = 4e-3;
    std::vector<double> f(25);
    for (int i = 0; i < 25; ++i) f[static_cast<size_t>(i)] = oracles::cusp_observable(i * dt);
    FdEstimate est = fd_time_derivative(f, 2, dt);
    EXPECT_FALSE(est.converged);
    EXPECT_LT(est.order_estimate, 0.8);
}

TEST(CuspProbe, GaussianObservableControlConverges) {
    // Same state, smooth localized observable: the second derivative
    // exists and the estimates settle at second order.
    const double dt = 4e-3;
    std::vector<double> f(25);
    for (int i = 0; i < 25; ++i)
        f[static_cast<size_t>(i)] = oracles::gaussian_observable_of_cusp_state(i * dt);
    FdEstimate est = fd_time_derivative(f, 2, dt);
    EXPECT_TRUE(est.converged);
    EXPECT_GT(est.order_estimate, 1.2);
}
