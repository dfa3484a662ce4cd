#include <gtest/gtest.h>

#include <cmath>

#include "riesz/space.hpp"

using riesz::SpaceParams;

namespace {
const SpaceParams h2 = SpaceParams::hyperbolic(2);
const SpaceParams h3 = SpaceParams::hyperbolic(3);
const SpaceParams h5 = SpaceParams::hyperbolic(5);

// H^3 closed form, the oracle for the generic spherical-function pipeline.
double phi_h3(double lambda, double r) {
    if (r == 0.0) return 1.0;
    if (lambda == 0.0) return r / std::sinh(r);
    return std::sin(lambda * r) / (lambda * std::sinh(r));
}
}  // namespace

TEST(SpaceParams, Invariants) {
    EXPECT_EQ(h3.n, 3);
    EXPECT_DOUBLE_EQ(h3.rho, 1.0);
    EXPECT_EQ(h3.m_alpha, 2);
    EXPECT_EQ(h3.m_2alpha, 0);
    EXPECT_EQ(h3.rank, 1);
    EXPECT_DOUBLE_EQ(h3.rho, 0.5 * (h3.m_alpha + 2.0 * h3.m_2alpha));
    EXPECT_DOUBLE_EQ(h2.rho, 0.5);
    EXPECT_DOUBLE_EQ(h5.rho, 2.0);
    // omega_{n-1}: circle 2pi, sphere 4pi
    EXPECT_NEAR(h2.unit_sphere_area, 2.0 * M_PI, 1e-14);
    EXPECT_NEAR(h3.unit_sphere_area, 4.0 * M_PI, 1e-13);
    EXPECT_THROW(SpaceParams::hyperbolic(1), std::domain_error);
}

TEST(Density, ClosedFormValues) {
    EXPECT_DOUBLE_EQ(riesz::density(h3, 0.0), 0.0);
    const double s1 = std::sinh(1.0);
    EXPECT_NEAR(riesz::density(h3, 1.0), 4.0 * M_PI * s1 * s1, 1e-12);
    EXPECT_NEAR(riesz::density(h2, 2.0), 2.0 * M_PI * std::sinh(2.0), 1e-12);
    EXPECT_THROW(riesz::density(h3, -0.5), std::domain_error);
}

TEST(BallVolume, ClosedFormAntiderivatives) {
    // n=3: int_0^1 4 pi sinh^2 = pi (sinh 2 - 2);  n=2: 2 pi (cosh 1 - 1)
    EXPECT_NEAR(riesz::ball_volume(h3, 1.0), M_PI * (std::sinh(2.0) - 2.0), 1e-10);
    EXPECT_NEAR(riesz::ball_volume(h2, 1.0), 2.0 * M_PI * (std::cosh(1.0) - 1.0), 1e-10);
}

TEST(BallVolume, EuclideanSmallBallLimit) {
    const double r = 1e-3;
    EXPECT_NEAR(riesz::ball_volume(h3, r) / (r * r * r), 4.0 * M_PI / 3.0,
                4.0 * M_PI / 3.0 * 1e-5);
}

TEST(SphericalFunction, NormalizedAtOrigin) {
    for (const auto* sp : {&h2, &h3, &h5})
        for (double lam : {0.0, 0.7, 3.0})
            EXPECT_DOUBLE_EQ(riesz::spherical_function(*sp, lam, 0.0), 1.0);
}

TEST(SphericalFunction, HyperbolicThreeClosedForm) {
    EXPECT_NEAR(riesz::spherical_function(h3, 1.0, 1.0), std::sin(1.0) / std::sinh(1.0),
                1e-10);
    EXPECT_NEAR(riesz::spherical_function(h3, 0.0, 2.0), 2.0 / std::sinh(2.0), 1e-10);
}

TEST(SphericalFunction, OracleGridH3) {
    // 100 x 100 grid, relative error <= 1e-8 against the closed form.
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double lam = 0.11 + 4.9 * (i + 0.5) / 100.0;
        for (int j = 0; j < 100; ++j) {
            const double r = 0.07 + 5.9 * (j + 0.5) / 100.0;
            const double impl = riesz::spherical_function(h3, lam, r);
            const double ref = phi_h3(lam, r);
            const double scale = std::max(std::abs(ref), (1.0 + r) * std::exp(-r) * 1e-4);
            worst = std::max(worst, std::abs(impl - ref) / scale);
        }
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(SphericalFunction, WeylSymmetry) {
    for (const auto* sp : {&h2, &h3, &h5}) {
        for (double lam : {0.5, 2.0}) {
            const double plus = riesz::spherical_function(*sp, lam, 1.7);
            const double minus = riesz::spherical_function(*sp, -lam, 1.7);
            EXPECT_NEAR(plus, minus, 1e-12 * std::max(1.0, std::abs(plus)));
        }
    }
}

TEST(SphericalFunction, DominatedByPhi0) {
    for (const auto* sp : {&h2, &h3, &h5}) {
        for (double r : {0.2, 1.0, 3.0, 8.0}) {
            const double p0 = riesz::phi0(*sp, r);
            EXPECT_LE(p0, 1.0 + 1e-12);
            for (double lam : {0.3, 1.0, 4.0})
                EXPECT_LE(std::abs(riesz::spherical_function(*sp, lam, r)), p0 + 1e-12);
        }
    }
}

TEST(Phi0Bound, FiniteAndStable) {
    const auto grid = riesz::logspace(0.1, 20.0, 80);
    for (const auto* sp : {&h2, &h3}) {
        auto rep = riesz::phi0_bound_check(*sp, grid);
        EXPECT_TRUE(rep.passed) << rep.summary();
        EXPECT_TRUE(std::isfinite(rep.sup_ratio));
        EXPECT_LE(rep.refined_sup_ratio, 2.0 * rep.sup_ratio);
    }
}

TEST(Phi0Bound, RatioTendsToOneAtZero) {
    // n=3: (r/sinh r)/((1+r) e^{-r}) -> 1 as r -> 0+.
    const double r = 1e-3;
    const double ratio = riesz::phi0(h3, r) / ((1.0 + r) * std::exp(-r));
    EXPECT_NEAR(ratio, 1.0, 1e-5);
}

TEST(PlancherelDensity, VanishesAtZeroAndScalesAsLambdaSq) {
    EXPECT_DOUBLE_EQ(riesz::plancherel_density(h3, 0.0), 0.0);
    const double d1 = riesz::plancherel_density(h3, 1.0);
    const double d2 = riesz::plancherel_density(h3, 2.0);
    EXPECT_NEAR(d2 / d1, 4.0, 1e-10);
    // n=3: density proportional to lambda^2 across the window
    for (double lam : {0.25, 0.5, 3.0, 10.0, 40.0})
        EXPECT_NEAR(riesz::plancherel_density(h3, lam) / (lam * lam), d1, 1e-9 * d1);
}

TEST(PlancherelDensity, HyperbolicPlaneClosedForm) {
    // n=2: |c|^-2 proportional to lambda tanh(pi lambda)
    const double ref = riesz::plancherel_density(h2, 1.0) / std::tanh(M_PI);
    for (double lam : {0.2, 0.7, 2.0, 5.0})
        EXPECT_NEAR(riesz::plancherel_density(h2, lam) /
                        (lam * std::tanh(M_PI * lam)),
                    ref, 1e-10 * ref);
}

TEST(PlancherelDensity, LargeLambdaExponent) {
    // density / lambda^{n-1} -> constant: log-log slope -> n-1.
    for (const auto* sp : {&h2, &h5}) {
        std::vector<double> xs, ys;
        for (double lam : riesz::logspace(20.0, 90.0, 12)) {
            xs.push_back(std::log(lam));
            ys.push_back(std::log(riesz::plancherel_density(*sp, lam)));
        }
        auto f = riesz::fit_line(xs, ys);
        EXPECT_NEAR(f.slope, sp->n - 1.0, 0.02) << "n = " << sp->n;
    }
}

TEST(DensityGrowth, BoundedAndConverging) {
    auto rep = riesz::density_growth_check(h3);
    EXPECT_TRUE(rep.passed) << rep.summary();
    // n=3: density/e^{2r} -> pi
    EXPECT_NEAR(riesz::density(h3, 30.0) / std::exp(60.0), M_PI, 1e-8);
    EXPECT_NEAR(rep.sup_ratio, M_PI, 0.01);
}

TEST(BallVolumeCheck, SmallBallBound) {
    for (const auto* sp : {&h2, &h3}) {
        auto rep = riesz::ball_volume_check(*sp);
        EXPECT_TRUE(rep.passed) << rep.summary();
    }
}
