#include "acoustic_lens/lensing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "acoustic_lens/geodesic.hpp"

namespace alens {

namespace {

constexpr double kPi = std::numbers::pi;

std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double sign_of(double b) { return b > 0.0 ? 1.0 : -1.0; }

void require_deflected(double c0, double b) {
    if (!(std::fabs(b) > 2.0 * c0) || b == 0.0) {
        throw std::domain_error("captured regime: |b| must exceed the critical impact parameter 2 c0");
    }
}

}  // namespace

QuadratureError::QuadratureError(const std::string& what, double achieved_error)
    : std::runtime_error(what), achieved_(achieved_error) {}

double deflection_series(double c0, double b) {
    if (b == 0.0 || !std::isfinite(b)) {
        throw std::domain_error("deflection series needs a nonzero finite impact parameter");
    }
    return sign_of(b) * kPi * (3.0 * c0 * c0 / (4.0 * b * b));
}

double deflection_exact(double c0, double b, double quad_tol) {
    if (!(c0 >= 0.0)) {
        throw std::domain_error("sink strength c0 must be nonnegative");
    }
    require_deflected(c0, b);
    if (!(quad_tol > 0.0)) {
        throw std::domain_error("quadrature tolerance must be positive");
    }

    const double ab = std::fabs(b);
    const double rt = turning_point(c0, b);
    const double ut = 1.0 / rt;
    const double inv_ut2 = rt * rt;
    const double bc2 = b * b * c0 * c0;

    // In u = 1/r the swept-angle integrand is |b|/sqrt(g(u)) with
    // g(u) = 1 - b^2 u^2 + b^2 c0^2 u^4, which factors exactly as
    // (u_t^2 - u^2) h(u), h(u) = 1/u_t^2 - b^2 c0^2 u^2. Substituting
    // u = u_t - s^2 removes the endpoint root:
    //   Theta = 4 |b| int_0^sqrt(u_t) ds / sqrt((2 u_t - s^2) h(u_t - s^2)).
    auto integrand = [=](double s) {
        const double u = ut - s * s;
        const double h = inv_ut2 - bc2 * u * u;
        return 4.0 * ab / std::sqrt((2.0 * ut - s * s) * h);
    };

    double error_estimate = 0.0;
    double l1_norm = 0.0;
    const double theta = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, std::sqrt(ut), 15, quad_tol / 8.0, &error_estimate, &l1_norm);

    if (!std::isfinite(theta) || !(error_estimate <= quad_tol)) {
        throw QuadratureError(
            "deflection quadrature did not reach tolerance " + short_number(quad_tol) +
                "; achieved error estimate " + short_number(error_estimate),
            error_estimate);
    }
    return sign_of(b) * (theta - kPi);
}

double focal_length(double c0, double b) {
    if (!(c0 > 0.0)) {
        throw std::domain_error("focal length needs c0 > 0");
    }
    // The critical boundary |b| = 2 c0 is allowed: the formula is the
    // thin-lens limit and stays finite there.
    if (!(std::fabs(b) >= 2.0 * c0)) {
        throw std::domain_error("captured regime: |b| must reach the critical impact parameter 2 c0");
    }
    const double ab = std::fabs(b);
    return (2.0 / (3.0 * kPi)) * ab * ab * ab / (c0 * c0);
}

double einstein_angle(double c0, double d_lens, double d_source) {
    if (!(c0 >= 0.0)) {
        throw std::domain_error("sink strength c0 must be nonnegative");
    }
    if (!(d_lens > 0.0) || !(d_lens < d_source)) {
        throw std::domain_error("lens geometry requires 0 < d_lens < d_source");
    }
    return std::cbrt(3.0 * kPi * c0 * c0 * (d_source - d_lens) /
                     (4.0 * d_source * d_lens * d_lens));
}

double max_deflection(double c0, double wavelength) {
    if (!(wavelength > 0.0)) {
        throw std::domain_error("wavelength must be positive");
    }
    return (3.0 * kPi / 4.0) * c0 * c0 / (wavelength * wavelength);
}

LensGeometry lens_solve(double c0, double d_lens, double d_source, double quad_tol) {
    if (!(c0 >= 0.0)) {
        throw std::domain_error("sink strength c0 must be nonnegative");
    }
    if (!(d_lens > 0.0) || !(d_lens < d_source)) {
        throw std::domain_error("lens geometry requires 0 < d_lens < d_source");
    }
    if (c0 == 0.0) {
        throw NoLensingSolution("deflection vanishes without a sink; no lensing solution");
    }

    // With the source directly behind the sink, b = d_L theta_E and
    // theta_s = b/(d_s - d_L) reduce the system to one equation,
    // G(b) = deflection(b) - k b = 0 with k = 1/d_L + 1/(d_s - d_L).
    // G is strictly decreasing on (2 c0, inf): deflection falls
    // monotonically from its near-critical divergence while k b grows.
    const double k = 1.0 / d_lens + 1.0 / (d_source - d_lens);
    auto g = [&](double b) { return deflection_exact(c0, b, quad_tol) - k * b; };

    double lo = 0.0;
    bool bracketed_low = false;
    for (int n = 1; n <= 13; ++n) {
        lo = 2.0 * c0 * (1.0 + std::pow(10.0, -n));
        if (g(lo) > 0.0) {
            bracketed_low = true;
            break;
        }
    }
    if (!bracketed_low) {
        throw NoLensingSolution(
            "no impact parameter balances the lens geometry; the required bending exceeds "
            "what the sink can provide outside the capture regime");
    }

    double hi = std::max(4.0 * c0, 2.0 * lo);
    while (g(hi) >= 0.0) {
        hi *= 2.0;
        if (hi > 1e300) {
            throw NoLensingSolution("lens equation has no finite root");
        }
    }

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double b_solved = 0.5 * (lo + hi);

    LensGeometry geo;
    geo.d_lens = d_lens;
    geo.d_source = d_source;
    geo.b_solved = b_solved;
    geo.theta_einstein = b_solved / d_lens;
    geo.theta_source = b_solved / (d_source - d_lens);
    geo.deflection = deflection_exact(c0, b_solved, quad_tol);
    geo.theta_einstein_closed_form = einstein_angle(c0, d_lens, d_source);
    geo.image_angles = {geo.theta_einstein, -geo.theta_einstein};
    return geo;
}

std::vector<SweepPoint> deflection_sweep(double c0, const std::vector<double>& grid,
                                         double quad_tol) {
    for (double b : grid) {
        require_deflected(c0, b);
    }

    std::vector<SweepPoint> points(grid.size());
    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double b = grid[i];
            SweepPoint& p = points[i];
            p.b = b;
            p.deflection_exact = deflection_exact(c0, b, quad_tol);
            p.deflection_series = deflection_series(c0, b);
            p.abs_error = std::fabs(p.deflection_exact - p.deflection_series);
            p.focal_length = focal_length(c0, b);
        }
    };

    const std::size_t n = grid.size();
    const std::size_t workers =
        std::min<std::size_t>({n, std::max(1u, std::thread::hardware_concurrency()), 16});
    if (workers <= 1) {
        eval_range(0, n);
        return points;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                eval_range(begin, end);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return points;
}

}  // namespace alens
