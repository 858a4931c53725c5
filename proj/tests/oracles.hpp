#pragma once

// Reference numerics for the test suite, deliberately independent of the
// library's routes: adaptive Simpson for radial integrals, composite
// midpoint sums with Richardson extrapolation for the deflection integral
// (never evaluates the endpoints, so the u = u_t sin(theta) substitution
// needs no factoring of the turning-point root), and plain bisection for
// roots in place of any closed form.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

namespace detail {

inline double simpson_rec(const Fn& f, double a, double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double adaptive_simpson(const Fn& f, double a, double b, double tol = 1e-13) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Midpoint sums halved level by level, accelerated by a Richardson table
// (the midpoint rule has an even-power error expansion).
inline double midpoint_richardson(const Fn& f, double a, double b, double tol = 5e-14) {
    std::vector<double> prev;
    double best = 0.0;
    std::size_t n = 16;
    for (int level = 0; level < 16; ++level, n *= 2) {
        const double h = (b - a) / static_cast<double>(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += f(a + (static_cast<double>(i) + 0.5) * h);
        }
        std::vector<double> row(prev.size() + 1);
        row[0] = sum * h;
        double pow4 = 1.0;
        for (std::size_t j = 1; j < row.size(); ++j) {
            pow4 *= 4.0;
            row[j] = (pow4 * row[j - 1] - prev[j - 1]) / (pow4 - 1.0);
        }
        if (level > 2 && std::fabs(row.back() - best) <= tol * std::max(1.0, std::fabs(best))) {
            return row.back();
        }
        best = row.back();
        prev = std::move(row);
    }
    return best;
}

inline double bisect(const Fn& f, double lo, double hi, int iterations = 200) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw std::invalid_argument("bisect: endpoints do not bracket a root");
    }
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Outer root of r^4 - b^2 r^2 + b^2 c0^2 = 0, found by bisection on
// (sqrt(2) c0, |b|]; no quadratic formula involved.
inline double turning_point_reference(double c0, double b) {
    const double ab = std::fabs(b);
    auto poly = [&](double r) {
        const double r2 = r * r;
        return r2 * r2 - b * b * r2 + b * b * c0 * c0;
    };
    const double lo = std::numbers::sqrt2 * c0 * (1.0 + 1e-12);
    return bisect(poly, lo, ab);
}

// Swept angle minus pi by brute quadrature in u = 1/r. The turning point
// u_t is bisected from the raw quartic g(u) = 1 - b^2 u^2 + b^2 c0^2 u^4
// and the substitution u = u_t sin(theta) makes the integrand smooth on
// [0, pi/2] without any algebraic factoring; midpoint sums never touch
// the endpoint.
inline double deflection_reference(double c0, double b) {
    const double ab = std::fabs(b);
    auto g = [&](double u) {
        const double u2 = u * u;
        return 1.0 - b * b * u2 + b * b * c0 * c0 * u2 * u2;
    };
    const double hi = c0 > 0.0 ? 1.0 / (std::numbers::sqrt2 * c0) : 1.5 / ab;
    const double u_t = bisect(g, 0.0, hi);

    auto integrand = [&](double theta) {
        const double u = u_t * std::sin(theta);
        return 2.0 * ab * u_t * std::cos(theta) / std::sqrt(g(u));
    };
    const double theta_total = midpoint_richardson(integrand, 0.0, std::numbers::pi / 2.0);
    const double sign = b > 0.0 ? 1.0 : -1.0;
    return sign * (theta_total - std::numbers::pi);
}

}  // namespace oracle
