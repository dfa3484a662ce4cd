#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "riesz/quadrature.hpp"
#include "riesz/report.hpp"

using riesz::integrate;
using riesz::QuadratureSpec;

TEST(Quadrature, Polynomial) {
    QuadratureSpec q;
    auto r = integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, 0.0, 2.0, q);
    EXPECT_NEAR(r.value, 2.0, 1e-13);
}

TEST(Quadrature, SmoothExponential) {
    QuadratureSpec q;
    auto r = integrate([](double x) { return std::exp(-x * x); }, 0.0, 10.0, q);
    EXPECT_NEAR(r.value, 0.5 * std::sqrt(M_PI), 1e-13);
}

TEST(Quadrature, OscillatoryCosine) {
    QuadratureSpec q;
    const double w = 137.0;
    auto r = integrate([&](double x) { return std::cos(w * x); }, 0.0, 3.0, q, w);
    EXPECT_NEAR(r.value, std::sin(w * 3.0) / w, 1e-12);
}

TEST(Quadrature, EndpointSqrtSingularDerivative) {
    QuadratureSpec q;
    auto r = integrate([](double x) { return std::sqrt(1.0 - x); }, 0.0, 1.0, q);
    EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-10);
}

TEST(Quadrature, ComplexIntegrand) {
    QuadratureSpec q;
    auto r = integrate(
        [](double x) { return std::complex<double>(std::cos(x), std::sin(x)); }, 0.0,
        M_PI / 2.0, q);
    EXPECT_NEAR(r.value.real(), 1.0, 1e-13);
    EXPECT_NEAR(r.value.imag(), 1.0, 1e-13);
}

TEST(Quadrature, AbsIntegralTracked) {
    QuadratureSpec q;
    auto r = integrate([](double x) { return std::sin(x); }, 0.0, 2.0 * M_PI, q, 1.0);
    EXPECT_NEAR(r.value, 0.0, 1e-12);
    EXPECT_NEAR(r.abs_integral, 4.0, 0.05);  // coarse by design: noise-floor estimate
}

TEST(Quadrature, BudgetExceededThrows) {
    QuadratureSpec q;
    q.max_panels = 4;
    q.rel_tol = 1e-14;
    EXPECT_THROW(
        integrate([](double x) { return std::cos(200.0 * x) / std::sqrt(x + 1e-12); },
                  0.0, 10.0, q),
        riesz::QuadratureError);
}

TEST(Quadrature, SpecValidation) {
    QuadratureSpec q;
    q.osc_points_per_period = 4;
    EXPECT_THROW(q.validate(), std::domain_error);
    q = {};
    q.rel_tol = 0.0;
    EXPECT_THROW(q.validate(), std::domain_error);
}

TEST(FitLine, RecoversSlope) {
    std::vector<double> xs, ys;
    for (int i = 0; i < 10; ++i) {
        xs.push_back(i);
        ys.push_back(3.5 - 2.25 * i);
    }
    auto f = riesz::fit_line(xs, ys);
    EXPECT_NEAR(f.slope, -2.25, 1e-12);
    EXPECT_NEAR(f.intercept, 3.5, 1e-12);
    EXPECT_NEAR(f.residual, 0.0, 1e-12);
}

TEST(Grids, LogspaceEndpoints) {
    auto v = riesz::logspace(0.1, 100.0, 31);
    EXPECT_NEAR(v.front(), 0.1, 1e-15);
    EXPECT_NEAR(v.back(), 100.0, 1e-12);
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GT(v[i], v[i - 1]);
}
