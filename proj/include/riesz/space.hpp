// space.hpp — the rank-one model: real hyperbolic space H^n in geodesic polar
// coordinates.  Everything downstream (transforms, kernels, Riesz means)
// consumes this module.
//
// Conventions:
//   rho = (n-1)/2, root multiplicities (m_alpha, m_2alpha) = (n-1, 0), one
//   positive indivisible root, rank 1.
//   The radial volume density carries the Euclidean unit-sphere area, so
//   small balls match Euclidean volume:  density(r) = omega_{n-1} sinh^{n-1} r.
//
// The spherical function is evaluated from its integral representation
//   phi_lambda(r) = c_n int_0^pi (cosh r - sinh r cos th)^{-(rho+i lambda)}
//                   sin^{n-2} th  dth            (real part; real by symmetry)
// after the change of variables u = cosh r - sinh r cos th, v = log u, which
// turns the oscillation into a plain cos(lambda v) and flattens the integrand
// to the size of the result (~ e^{-rho r}), and a further endpoint map
// v = +-(r - s^2) that removes the square-root behaviour at v = +-r for even
// n.  For n = 3 the result must match sin(lambda r)/(lambda sinh r); the test
// suite pins that to 1e-8.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "riesz/quadrature.hpp"
#include "riesz/report.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

struct SpaceParams {
    int n;                        // dimension >= 2
    double rho;                   // (n-1)/2
    int m_alpha;                  // n-1
    int m_2alpha;                 // 0
    int rank;                     // 1
    int indivisible_roots;        // d = 1
    double unit_sphere_area;      // omega_{n-1} = 2 pi^{n/2} / Gamma(n/2)

    static SpaceParams hyperbolic(int n) {
        if (n < 2) throw std::domain_error("SpaceParams: dimension must be >= 2");
        SpaceParams sp;
        sp.n = n;
        sp.rho = 0.5 * (n - 1);
        sp.m_alpha = n - 1;
        sp.m_2alpha = 0;
        sp.rank = 1;
        sp.indivisible_roots = 1;
        sp.unit_sphere_area =
            2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
        return sp;
    }
};

// Radial volume density delta(r) = omega_{n-1} sinh^{n-1} r.
inline double density(const SpaceParams& sp, double r) {
    if (!(r >= 0.0)) throw std::domain_error("density: need r >= 0");
    return sp.unit_sphere_area * std::pow(std::sinh(r), sp.n - 1);
}

// |B(x, r)| by quadrature.
inline double ball_volume(const SpaceParams& sp, double r, const QuadratureSpec& q = {}) {
    if (!(r >= 0.0)) throw std::domain_error("ball_volume: need r >= 0");
    if (r == 0.0) return 0.0;
    return integrate([&](double s) { return density(sp, s); }, 0.0, r, q).value;
}

namespace space_detail {

// Normalization c_n = 1 / int_0^pi sin^{n-2} th dth = Gamma(n/2)/(sqrt(pi) Gamma((n-1)/2)).
inline double phi_norm(const SpaceParams& sp) {
    return std::tgamma(0.5 * sp.n) /
           (std::sqrt(M_PI) * std::tgamma(0.5 * (sp.n - 1)));
}

inline double pow_int_or_real(double x, double p) {
    const int ip = int(p);
    if (double(ip) == p && ip >= 0 && ip <= 8) {
        double out = 1.0;
        for (int k = 0; k < ip; ++k) out *= x;
        return out;
    }
    return std::pow(x, p);
}

// Oscillation-free part of the phi integrand after merging the two halves
// v = +-(r - s^2): the cosine argument lambda*(r - s^2) is shared, so
//   phi = c_n / sinh^{n-2} r * int_0^sqrt(r) comb(s) cos(lambda (r - s^2)) ds.
struct PhiEnvelope {
    double r, rho, half;
    int n;
    double em1_r, em1_mr, exp_r, exp_mr;

    explicit PhiEnvelope(const SpaceParams& sp, double r_)
        : r(r_), rho(sp.rho), half(0.5 * (sp.n - 3)), n(sp.n),
          em1_r(std::expm1(r_)), em1_mr(std::expm1(-r_)),
          exp_r(std::exp(r_)), exp_mr(std::exp(-r_)) {}

    double operator()(double s) const {
        const double s2 = s * s;
        double base = 2.0 * pow_int_or_real(s, n - 2);
        // right half, v = r - s^2
        const double vr = r - s2;
        double env_r = base * std::exp((1.0 - rho) * vr);
        // left half, v = -r + s^2
        const double vl = -r + s2;
        double env_l = base * std::exp((1.0 - rho) * vl);
        if (half != 0.0) {
            const double qr = s2 > 0.0 ? -std::expm1(-s2) / s2 : 1.0;
            const double ql = s2 > 0.0 ? std::expm1(s2) / s2 : 1.0;
            const double A = std::expm1(vr) - em1_mr;  // e^v - e^-r, right
            const double B = em1_r - std::expm1(vl);   // e^r - e^v, left
            env_r *= pow_int_or_real(A * exp_r * qr, half);
            env_l *= pow_int_or_real(exp_mr * ql * B, half);
        }
        return env_r + env_l;
    }
};

}  // namespace space_detail

// Elementary spherical function phi_lambda(r), lambda >= 0 (even in lambda).
inline double spherical_function(const SpaceParams& sp, double lambda, double r,
                                 const QuadratureSpec& q = {}) {
    if (!(r >= 0.0)) throw std::domain_error("spherical_function: need r >= 0");
    if (r == 0.0) return 1.0;

    const space_detail::PhiEnvelope env(sp, r);
    const double smax = std::sqrt(r);
    const double freq = 2.0 * std::abs(lambda) * smax;  // d/ds of lambda(r-s^2)
    const auto res = integrate(
        [&](double s) { return env(s) * std::cos(lambda * (r - s * s)); }, 0.0, smax, q,
        freq);
    const double c_n = space_detail::phi_norm(sp);
    return c_n * res.value / std::pow(std::sinh(r), sp.n - 2);
}

// phi_lambda(r) for a family of lambdas at one radius.  The adaptive panel
// decomposition is computed once, for the fastest oscillation in the family,
// and reused: slower oscillations on the same envelope are resolved at least
// as well.
inline std::vector<double> spherical_function_batch(const SpaceParams& sp,
                                                    const std::vector<double>& lambdas,
                                                    double r,
                                                    const QuadratureSpec& q = {}) {
    if (!(r >= 0.0)) throw std::domain_error("spherical_function: need r >= 0");
    std::vector<double> out(lambdas.size());
    if (r == 0.0) {
        for (auto& v : out) v = 1.0;
        return out;
    }
    double lam_star = 0.0;
    for (double lam : lambdas) lam_star = std::max(lam_star, std::abs(lam));

    const space_detail::PhiEnvelope env(sp, r);
    const double smax = std::sqrt(r);
    std::vector<std::pair<double, double>> panels;
    integrate([&](double s) { return env(s) * std::cos(lam_star * (r - s * s)); }, 0.0,
              smax, q, 2.0 * lam_star * smax, &panels);

    // node/weight/envelope tables over the captured panels
    std::vector<double> ws, phase, envval;
    for (const auto& [a, b] : panels) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int i = 0; i < 15; ++i) {
            const int j = (i < 7) ? i : (i == 7 ? 7 : 14 - i);
            const double sgn = (i < 7) ? -1.0 : (i == 7 ? 0.0 : 1.0);
            const double s = c + sgn * h * quad_detail::kXgk[j];
            ws.push_back(quad_detail::kWgk[j] * h);
            phase.push_back(r - s * s);
            envval.push_back(env(s));
        }
    }
    const double c_n = space_detail::phi_norm(sp) / std::pow(std::sinh(r), sp.n - 2);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < ws.size(); ++i)
            acc += ws[i] * envval[i] * std::cos(lambdas[k] * phase[i]);
        out[k] = c_n * acc;
    }
    return out;
}

inline double phi0(const SpaceParams& sp, double r, const QuadratureSpec& q = {}) {
    return spherical_function(sp, 0.0, r, q);
}

// sup over the grid of phi_0(r) / ((1+r)^d e^{-rho r}); passes when finite and
// stable under doubling both the point count and r_max.
inline BoundReport phi0_bound_check(const SpaceParams& sp, const std::vector<double>& grid,
                                    const QuadratureSpec& q = {}) {
    if (grid.empty()) throw std::invalid_argument("phi0_bound_check: empty grid");
    auto ratio = [&](double r) {
        return phi0(sp, r, q) /
               (std::pow(1.0 + r, sp.indivisible_roots) * std::exp(-sp.rho * r));
    };
    double sup = 0.0;
    for (double r : grid) {
        if (!(r > 0.0)) throw std::domain_error("phi0_bound_check: grid values must be > 0");
        sup = std::max(sup, ratio(r));
    }
    const double r_lo = grid.front(), r_hi = grid.back();
    double refined = 0.0;
    for (double r : logspace(r_lo, 2.0 * r_hi, 2 * grid.size()))
        refined = std::max(refined, ratio(r));

    BoundReport rep;
    rep.check = "phi0-envelope";
    rep.grid = "r in [" + std::to_string(r_lo) + ", " + std::to_string(r_hi) + "]";
    rep.grid_points = grid.size();
    rep.set_refinement(sup, refined, 0.05);
    return rep;
}

// Plancherel density |c(lambda)|^-2 up to one space-wide constant (the
// constant is fixed by the transform round-trip calibration).  The rank-one
// Gindikin–Karpelevich product with multiplicities (n-1, 0) collapses, via
// the Legendre duplication formula, to  c(lambda) ∝ Gamma(i lambda) /
// Gamma(rho + i lambda),  so
//   |c(lambda)|^-2 ∝ |Gamma(rho + i lambda)|^2 * lambda sinh(pi lambda) / pi,
// where |Gamma(i lambda)|^2 = pi / (lambda sinh(pi lambda)) was used.
inline double plancherel_density(const SpaceParams& sp, double lambda) {
    if (!(lambda >= 0.0)) throw std::domain_error("plancherel_density: need lambda >= 0");
    if (lambda == 0.0) return 0.0;
    const cplx g = gamma_complex(cplx(sp.rho, lambda));
    const double d = std::norm(g) * lambda * std::sinh(M_PI * lambda) / M_PI;
    if (!std::isfinite(d))
        throw std::range_error("plancherel_density: overflow beyond supported spectral window");
    return d;
}

// density(r) / e^{2 rho r} bounded above uniformly (volume growth check).
inline BoundReport density_growth_check(const SpaceParams& sp, double r_max = 30.0,
                                        std::size_t points = 400) {
    auto sweep = [&](double hi, std::size_t n) {
        double sup = 0.0;
        for (double r : linspace(1e-3, hi, n))
            sup = std::max(sup, density(sp, r) / std::exp(2.0 * sp.rho * r));
        return sup;
    };
    BoundReport rep;
    rep.check = "density-growth";
    rep.grid = "r in (0, " + std::to_string(r_max) + "]";
    rep.grid_points = points;
    rep.set_refinement(sweep(r_max, points), sweep(2.0 * r_max, 2 * points), 0.05);
    return rep;
}

// |B(x, r)| / r^n bounded for r <= 1 (small-ball volume check).
inline BoundReport ball_volume_check(const SpaceParams& sp, std::size_t points = 60,
                                     const QuadratureSpec& q = {}) {
    auto sweep = [&](std::size_t n) {
        double sup = 0.0;
        for (double r : logspace(1e-3, 1.0, n))
            sup = std::max(sup, ball_volume(sp, r, q) / std::pow(r, sp.n));
        return sup;
    };
    BoundReport rep;
    rep.check = "ball-volume";
    rep.grid = "r in (0, 1]";
    rep.grid_points = points;
    rep.set_refinement(sweep(points), sweep(2 * points), 0.05);
    return rep;
}

}  // namespace riesz
