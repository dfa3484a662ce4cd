// report.hpp — the BoundReport record produced by every estimate check, plus
// the small fitting/grid helpers the checks share.
//
// A "pass" throughout the library means: the measured sup-ratio is finite,
// it moves by less than the stated drift when the grid is refined, and any
// regression slope lands inside its stated tolerance band.  The measured
// constants are always reported; nothing is asserted from the outside.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace riesz {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS residual of the fit
};

// Ordinary least squares y = slope*x + intercept.
inline SlopeFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_line: need two samples of equal length");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    SlopeFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (f.slope * xs[i] + f.intercept);
        rss += r * r;
    }
    f.residual = std::sqrt(rss / n);
    return f;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    return v;
}

inline std::vector<double> logspace(double a, double b, std::size_t n) {
    if (!(a > 0.0) || !(b > a))
        throw std::invalid_argument("logspace: need 0 < a < b");
    std::vector<double> v(n);
    const double la = std::log(a), lb = std::log(b);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::exp(la + (lb - la) * double(i) / double(n - 1));
    return v;
}

// Outcome of one quantitative estimate check.
struct BoundReport {
    std::string check;           // which estimate
    std::string grid;            // human-readable grid description
    std::size_t grid_points = 0;

    double sup_ratio = std::numeric_limits<double>::quiet_NaN();
    double refined_sup_ratio = std::numeric_limits<double>::quiet_NaN();
    double refinement_drift = std::numeric_limits<double>::quiet_NaN();

    std::optional<double> slope;         // measured regression slope
    std::optional<double> slope_target;  // expected exponent
    std::optional<double> slope_tol;     // tolerance band
    bool slope_one_sided = false;        // pass if slope <= target + tol

    bool passed = false;
    std::string detail;

    // Fill the refinement fields and the finite/stable part of the verdict.
    void set_refinement(double sup, double refined, double max_drift) {
        sup_ratio = sup;
        refined_sup_ratio = refined;
        refinement_drift = (sup != 0.0) ? (refined - sup) / sup
                                        : (refined == 0.0 ? 0.0 : INFINITY);
        passed = std::isfinite(sup) && std::isfinite(refined) &&
                 refinement_drift < max_drift;
    }

    void set_slope(double measured, double target, double tol, bool one_sided) {
        slope = measured;
        slope_target = target;
        slope_tol = tol;
        slope_one_sided = one_sided;
        const bool ok = one_sided ? measured <= target + tol
                                  : std::abs(measured - target) <= tol;
        passed = passed && ok;
    }

    std::string summary() const {
        std::ostringstream os;
        os << check << ": sup=" << sup_ratio;
        if (std::isfinite(refinement_drift)) os << " drift=" << refinement_drift;
        if (slope) {
            os << " slope=" << *slope << " target=" << *slope_target
               << (slope_one_sided ? " (one-sided)" : "") << " tol=" << *slope_tol;
        }
        os << (passed ? " [pass]" : " [FAIL]");
        if (!detail.empty()) os << " " << detail;
        return os.str();
    }
};

}  // namespace riesz
