#include "rglab/twobody.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace rglab;

namespace {

Mat3 rotation(double a, double b, double c) {
    auto mul = [](const Mat3& x, const Mat3& y) {
        Mat3 r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
        return r;
    };
    Mat3 rz{{{std::cos(a), -std::sin(a), 0}, {std::sin(a), std::cos(a), 0}, {0, 0, 1}}};
    Mat3 ry{{{std::cos(b), 0, std::sin(b)}, {0, 1, 0}, {-std::sin(b), 0, std::cos(b)}}};
    Mat3 rx{{{1, 0, 0}, {0, std::cos(c), -std::sin(c)}, {0, std::sin(c), std::cos(c)}}};
    return mul(rz, mul(ry, rx));
}

} // namespace

TEST(HessianCusp, PrintedEntryAtHalf) {
    Mat3 h = hessian_cusp(Vec3{0.5, 0, 0}, 1.0);
    const double e = std::exp(0.125);
    EXPECT_NEAR(h[0][0], e / 16.0, 1e-14);
    EXPECT_NEAR(h[1][1], e / 2.0, 1e-14);
    EXPECT_NEAR(h[2][2], e / 2.0, 1e-14);
    EXPECT_NEAR(h[0][1], 0.0, 1e-15);
}

TEST(HessianCusp, LinearInProfileValue) {
    Mat3 h0 = hessian_cusp(Vec3{0.3, -0.2, 0.1}, 0.0);
    Mat3 h2 = hessian_cusp(Vec3{0.3, -0.2, 0.1}, 2.0);
    Mat3 h1 = hessian_cusp(Vec3{0.3, -0.2, 0.1}, 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            EXPECT_EQ(h0[i][j], 0.0);
            EXPECT_NEAR(h2[i][j], 2.0 * h1[i][j], 1e-15);
        }
}

TEST(HessianCusp, MatchesCentralDifferences) {
    const Vec3 v{0.31, -0.22, 0.4};
    const double f = 1.7;
    auto psi = [&](const Vec3& y) { return f * std::exp(norm3(y) / 4.0); };
    const double d = 3e-4;
    Mat3 h = hessian_cusp(v, f);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Vec3 pp = v, pm = v, mp = v, mm = v;
            pp[i] += d; pp[j] += d;
            pm[i] += d; pm[j] -= d;
            mp[i] -= d; mp[j] += d;
            mm[i] -= d; mm[j] -= d;
            const double fd = (psi(pp) - psi(pm) - psi(mp) + psi(mm)) / (4 * d * d);
            EXPECT_NEAR(h[i][j], fd, 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST(HessianCusp, SymmetricAndRotationCovariant) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(-0.4, 0.4);
    std::uniform_real_distribution<double> ang(0.0, 6.28);
    for (int trial = 0; trial < 10; ++trial) {
        Vec3 v{uni(rng), uni(rng), uni(rng)};
        if (norm3(v) < 0.05) continue;
        Mat3 h = hessian_cusp(v, 1.3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) EXPECT_EQ(h[i][j], h[j][i]);

        Mat3 r = rotation(ang(rng), ang(rng), ang(rng));
        Vec3 rv{};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) rv[i] += r[i][k] * v[k];
        Mat3 hrv = hessian_cusp(rv, 1.3);
        // R h R^T
        Mat3 rhrt{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) rhrt[i][j] += r[i][k] * h[k][l] * r[j][l];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) EXPECT_NEAR(hrv[i][j], rhrt[i][j], 1e-12);
    }
}

TEST(HessianCusp, SingularityRejected) {
    EXPECT_THROW(hessian_cusp(Vec3{0, 0, 0}, 1.0), std::domain_error);
    EXPECT_THROW(hessian_cusp(Vec3{1.5, 0, 0}, 1.0), std::domain_error);
}

TEST(SingularLimit, HarmonicBatteryVanishes) {
    const Vec3 u{0.4, -0.3, 0.6};
    for (const auto& V : harmonic_battery()) {
        SingularLimit lim = singular_limit_estimate(V, 1.0, u);
        EXPECT_LT(std::abs(lim.limit), 1e-6) << V.name;
    }
}

TEST(SingularLimit, QuadraticPotentialConvergesAndReportsKappa) {
    // For V = |x|^2 the integrand reduces to f e^{r/4} (1/4 + 1/r), so
    // L(r) = f (1 + r/4) e^{r/4}: an O(r) approach to the limit f.
    const Vec3 u{0.2, 0.1, -0.3};
    SingularLimit lim = singular_limit_estimate(potential_quadratic_radial(), 1.0, u);
    for (const auto& [r, L] : lim.per_radius)
        EXPECT_NEAR(L, (1.0 + r / 4.0) * std::exp(r / 4.0), 1e-12);
    EXPECT_LT(lim.uncertainty, 5e-3 * std::max(1.0, std::abs(lim.limit)));
    EXPECT_NEAR(lim.order_estimate, 1.0, 0.3);
    ASSERT_TRUE(lim.kappa.has_value());
    EXPECT_NEAR(*lim.kappa, lim.limit / 6.0, 1e-12); // f = 1, LapV = 6
    EXPECT_GT(*lim.kappa, 0.0);
    EXPECT_LT(*lim.kappa, 1.0);
}

TEST(SingularLimit, ScalesLinearlyInProfileValue) {
    const Vec3 u{0.2, 0.1, -0.3};
    SingularLimit l1 = singular_limit_estimate(potential_quadratic_radial(), 1.0, u);
    SingularLimit l2 = singular_limit_estimate(potential_quadratic_radial(), 2.0, u);
    EXPECT_NEAR(l2.limit, 2.0 * l1.limit, 1e-9 * std::max(1.0, std::abs(l1.limit)));
    EXPECT_NEAR(*l2.kappa, *l1.kappa, 1e-9);
}

TEST(SingularLimit, HarmonicPotentialHasNoKappa) {
    SingularLimit lim = singular_limit_estimate(harmonic_battery()[1], 1.0, Vec3{0.4, -0.3, 0.6});
    EXPECT_FALSE(lim.kappa.has_value());
}

TEST(SingularLimit, DegenerateProfileRejected) {
    EXPECT_THROW(singular_limit_estimate(potential_quadratic_radial(), 0.0, Vec3{0, 0, 0}),
                 std::domain_error);
}

TEST(InteractionCommutator, ConstantAndLinearPotentialsVanish) {
    std::vector<CommutatorSample> pts{{Vec3{0.5, 0.2, -0.1}, Vec3{-0.4, 0.3, 0.6}}};
    SmoothPotential3D vconst{"const", [](const Vec3&) { return 3.0; },
                             [](const Vec3&) { return Vec3{0, 0, 0}; },
                             [](const Vec3&) { return Mat3{}; }};
    EXPECT_LT(interaction_commutator_identity(vconst, pts).max_deviation, 1e-8);

    SmoothPotential3D vlin{"linear", [](const Vec3& x) { return x[0] - 2 * x[2]; },
                           [](const Vec3&) { return Vec3{1, 0, -2}; },
                           [](const Vec3&) { return Mat3{}; }};
    EXPECT_LT(interaction_commutator_identity(vlin, pts).max_deviation, 1e-8);
}

TEST(InteractionCommutator, QuadraticPotentialMatchesMultiplier) {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<CommutatorSample> pts;
    while (pts.size() < 8) {
        CommutatorSample s{{uni(rng), uni(rng), uni(rng)}, {uni(rng), uni(rng), uni(rng)}};
        const Vec3 d{s.x_ell[0] - s.x_k[0], s.x_ell[1] - s.x_k[1], s.x_ell[2] - s.x_k[2]};
        if (norm3(d) > 0.5) pts.push_back(s);
    }
    CommutatorCheck check = interaction_commutator_identity(potential_quadratic_radial(), pts);
    EXPECT_LT(check.max_deviation, 1e-6);
    EXPECT_DOUBLE_EQ(check.derived_vs_printed, -2.0);
}

TEST(HardyChain, FirstCoordinateGaussian) {
    Poly3 p = Poly3::monomial(1, 0, 0, 1.0); // f = y1 e^{-|y|^2}
    HardyCheck c = hardy_chain_verify(p);
    EXPECT_TRUE(c.holds);
    EXPECT_GT(c.margin, 0.0);
    // lhs = (4pi/3) int e^{-2r^2} dr = (2pi/3) sqrt(pi/2)
    EXPECT_NEAR(c.lhs, 2.0 * M_PI / 3.0 * std::sqrt(M_PI / 2.0), 1e-6);
}

TEST(HardyChain, ZeroFunctionHolds) {
    HardyCheck c = hardy_chain_verify(Poly3{});
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.lhs, 0.0);
}

TEST(HardyChain, EvenPolynomialRejected) {
    EXPECT_THROW(hardy_chain_verify(Poly3::monomial(2, 0, 0, 1.0)), std::invalid_argument);
}

TEST(HardyChain, RandomizedOddBatterySatisfiesInequality) {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Poly3 p = random_odd_polynomial(rng);
        HardyCheck c = hardy_chain_verify(p);
        EXPECT_TRUE(c.holds) << "trial " << trial;
        EXPECT_GE(c.margin, 0.0);
    }
}
