#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace alens {

/// Thrown when the deflection quadrature cannot reach the requested
/// tolerance; carries the error estimate it did achieve.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error);
    double achieved_error() const { return achieved_; }

private:
    double achieved_;
};

/// Thrown by lens_solve when no impact parameter satisfies the thin-lens
/// consistency system (vanishing deflection or degenerate bracket).
class NoLensingSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Leading-order deflection sign(b) pi 3 c0^2 / (4 b^2). Accurate to
/// O((c0/b)^3); degrades below |b| ~ 10 c0. Throws std::domain_error
/// for b = 0.
double deflection_series(double c0, double b);

/// Exact deflection angle: sign(b) (Theta - pi) with
///   Theta = 2 int_{r_t}^inf |b| dr / sqrt(r^4 + b^2 (c0^2 - r^2)).
/// Evaluated in u = 1/r after factoring out the turning-point root and
/// substituting u = u_t - s^2, which removes the endpoint singularity;
/// the smooth result goes to adaptive Gauss-Kronrod quadrature with
/// absolute tolerance quad_tol. Requires |b| > 2 c0 (throws
/// std::domain_error otherwise, the phonon is captured) and throws
/// QuadratureError if the tolerance is not met.
double deflection_exact(double c0, double b, double quad_tol = 1e-12);

/// Thin-lens focal length (2/(3 pi)) |b|^3 / c0^2; two antiparallel
/// beams at +-b cross the axis at 2f. Requires c0 > 0 and |b| > 2 c0.
double focal_length(double c0, double b);

/// Closed-form Einstein angle (3 pi c0^2 (d_s - d_L) / (4 d_s d_L^2))^(1/3),
/// valid in the small-angle regime (flag results above ~0.1 rad).
/// Requires 0 < d_L < d_s.
double einstein_angle(double c0, double d_lens, double d_source);

/// Wavelength-limited maximum deflection (3 pi / 4) c0^2 / wavelength^2,
/// from requiring the impact parameter to stay above the phonon
/// wavelength. Requires wavelength > 0.
double max_deflection(double c0, double wavelength);

/// Solved thin-lens geometry for a source directly behind the sink.
struct LensGeometry {
    double d_lens;    ///< observer-lens distance
    double d_source;  ///< observer-source distance
    double theta_einstein;  ///< ring angle, radians
    double theta_source;    ///< source-side angle, radians
    double b_solved;        ///< impact parameter satisfying the system
    double deflection;      ///< exact deflection at b_solved
    /// Closed-form small-angle value, reported for comparison with the
    /// solved theta_einstein.
    double theta_einstein_closed_form;
    /// The two image positions, +theta_E and -theta_E.
    std::pair<double, double> image_angles;
};

/// Solves b = d_L theta_E, theta_s = b / (d_s - d_L),
/// deflection_exact(b) = theta_s + theta_E for b by bracketed root
/// finding on the exact deflection. Requires 0 < d_L < d_s; throws
/// NoLensingSolution when no bracket exists (e.g. c0 = 0).
LensGeometry lens_solve(double c0, double d_lens, double d_source,
                        double quad_tol = 1e-12);

/// One row of a deflection sweep.
struct SweepPoint {
    double b;
    double deflection_exact;
    double deflection_series;
    double abs_error;  ///< |exact - series|
    double focal_length;
};

/// Evaluates the sweep rows for the given impact parameters, in order.
/// Points are independent and are evaluated concurrently; the result
/// order always follows the input order. Every |b| must exceed 2 c0.
std::vector<SweepPoint> deflection_sweep(double c0,
                                         const std::vector<double>& grid,
                                         double quad_tol = 1e-12);

}  // namespace alens
