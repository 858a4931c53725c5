#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acoustic_lens/metric.hpp"

namespace alens {

/// Orbit classes relative to the centrifugal barrier: phonons with
/// |b| > 2 c0 are deflected back out, |b| < 2 c0 fall into the sink,
/// and |b| = 2 c0 asymptotes to the unstable circular orbit.
enum class OrbitClass { Deflected, Captured, Critical };

const char* to_string(OrbitClass c);

/// Conserved charges of a phonon null geodesic: energy E and angular
/// momentum L. The impact parameter b = L/E fixes the geometry; E only
/// scales the affine parameter.
struct ConservedCharges {
    double energy = 1.0;
    double angular_momentum = 0.0;

    double impact_parameter() const { return angular_momentum / energy; }

    /// Charges with the given impact parameter, b = L/E held exactly.
    /// Throws std::domain_error unless energy > 0.
    static ConservedCharges from_impact_parameter(double b, double energy = 1.0);
};

/// One integration sample along a null geodesic.
struct PhononState {
    double lambda;  ///< affine parameter
    double r;       ///< radius, healing-length units
    double phi;     ///< angle, radians
    double r_rate;  ///< dr/dlambda
};

/// Tolerances and termination radii for trace(). Radii left unset take
/// defaults derived from c0 and b:
///   r_start   = max(100 c0, 20 |b|)
///   r_escape  = r_start
///   r_capture = 0.1 c0
struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t max_steps = 10'000'000;
    std::optional<double> r_start;
    std::optional<double> r_escape;
    std::optional<double> r_capture;
    /// Also integrate the acoustic time coordinate t(lambda) with
    /// dt/dlambda = E r^2 / (r^2 - c0^2). Diverges at the horizon, so it
    /// is only permitted for Deflected charges.
    bool with_acoustic_time = false;
};

/// Integrated null geodesic. Samples are strictly ordered in lambda.
struct Trajectory {
    std::vector<PhononState> samples;
    /// Acoustic time t at each sample; empty unless requested.
    std::vector<double> acoustic_time;
    ConservedCharges charges;
    double c0 = 0.0;
    OrbitClass classification = OrbitClass::Deflected;
    /// True if the run ended by crossing r_escape outward (as opposed to
    /// falling below r_capture).
    bool escaped = false;

    /// Total swept angle |phi_end - phi_start| plus the analytic
    /// continuation of each end of the path along its straight-line
    /// asymptote out to infinity (arcsin(|b|/r) per end, applied when
    /// r >= |b| at that end). For a deflected orbit this converges to
    /// pi + |deflection| as tolerances tighten, independent of r_start.
    double swept_angle = 0.0;
    /// Raw |phi_end - phi_start| over the recorded samples only.
    double sweep_accumulated = 0.0;
    bool entry_completed = false;
    bool exit_completed = false;

    /// Smallest radius reached. For Deflected orbits this is the located
    /// turning point, refined from the integrator's dense output.
    double min_radius = 0.0;

    /// Max over samples of |r_rate^2 + 2 V(r) - E^2| / E^2.
    double conservation_residual_max = 0.0;
    /// Max over samples of the cumulative drift between the integrated
    /// phi and L * integral(dlambda / r^2) reconstructed from the dense
    /// output, normalized by the total sweep.
    double angular_momentum_drift_max = 0.0;

    double impact_parameter() const { return charges.impact_parameter(); }
};

/// Thrown when trace() exhausts max_steps. Carries what was integrated
/// so far.
class TraceNonConvergence : public std::runtime_error {
public:
    TraceNonConvergence(const std::string& what, Trajectory partial);
    const Trajectory& partial() const { return partial_; }

private:
    Trajectory partial_;
};

/// Centrifugal barrier V(r) = L^2/(2 r^2) - c0^2 L^2/(2 r^4).
/// Throws std::domain_error for r <= 0.
double effective_potential(double c0, double L, double r);

struct PotentialPeak {
    double radius;  ///< r_m = sqrt(2) c0
    double value;   ///< V_m = L^2 / (8 c0^2)
};

/// Location and height of the barrier maximum. Throws std::domain_error
/// for c0 <= 0 or L = 0 (a radial phonon sees no barrier).
PotentialPeak potential_peak(double c0, double L);

/// b_m = 2 c0, the impact parameter whose energy exactly matches the
/// barrier top. Throws std::domain_error for c0 <= 0.
double critical_impact_parameter(double c0);

/// Outer root of E^2 - 2 V(r) = 0 in closed form:
/// |b| sqrt(1/2 + sqrt(b^2 - 4 c0^2) / (2 |b|)).
/// Requires |b| >= 2 c0 and b != 0; |b| = 2 c0 returns the barrier
/// radius sqrt(2) c0. Throws std::domain_error in the captured regime.
double turning_point(double c0, double b);

/// Orbit class from comparing |b| against 2 c0 exactly.
/// Throws std::domain_error for c0 <= 0.
OrbitClass classify(double c0, double b);

/// Integrates the null geodesic d^2r/dlambda^2 = L^2/r^3 - 2 c0^2 L^2/r^5,
/// dphi/dlambda = L/r^2, launched inbound (dr/dlambda < 0) from
/// (r_start, phi = 0), until the phonon either escapes outward through
/// r_escape or falls below r_capture. Uses an adaptive embedded
/// Runge-Kutta pair with dense output; event radii are located by
/// bisection on the dense interpolant. Deterministic: identical inputs
/// produce bit-identical samples.
///
/// Throws std::domain_error for invalid charges or radii (including
/// r_start <= horizon) and TraceNonConvergence if max_steps is exhausted.
Trajectory trace(const AcousticMetric& m, const ConservedCharges& charges,
                 const IntegratorConfig& cfg = {});

/// |swept_angle - (pi + |deflection_exact(c0, b)|)| for a Deflected
/// trajectory; the integrator-vs-quadrature cross-check.
/// Throws std::domain_error for other classifications.
double swept_angle_residual(const Trajectory& t);

}  // namespace alens
