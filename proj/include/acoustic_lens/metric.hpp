#pragma once

namespace alens {

/// Draining-flow acoustic geometry around a particle sink in a 2D photon
/// condensate. The background flow v = c0/r (inward) produces a
/// Schwarzschild-like line element with warp factor f(r) = 1 - c0^2/r^2
/// and a sonic horizon at r_h = c0. All lengths are in healing-length
/// units, speeds in units of the sound speed.
class AcousticMetric {
public:
    /// c0 is the dimensionless sink strength; must be positive.
    explicit AcousticMetric(double c0);

    double c0() const { return c0_; }

    /// Sonic horizon radius, exactly c0.
    double horizon_radius() const { return c0_; }

    /// f(r) = 1 - c0^2/r^2. Negative inside the horizon, 0 at r = c0,
    /// approaches 1 far away. Valid for any r > 0, including inside.
    double warp_factor(double r) const;

    /// Magnitude of the inward background flow, c0/r. Equals 1 (the sound
    /// speed) at the horizon.
    double flow_velocity(double r) const;

    /// Kretschmann scalar, 44 c0^2 / r^8. Finite at the horizon, diverges
    /// only at the sink itself.
    double kretschmann(double r) const;

    /// Ricci scalar, 2 c0^2 / r^4.
    double ricci_scalar(double r) const;

    /// Closed-form integral of c0 / (r f(r)) dr from r1 to r2:
    /// (c0/2) ln((r2^2 - c0^2)/(r1^2 - c0^2)). Converts intervals of the
    /// acoustic time coordinate to lab-time intervals along radial
    /// displacements. Both radii must lie outside the horizon; the
    /// transform is singular at r = c0.
    double lab_time_correction(double r1, double r2) const;

private:
    double c0_;
};

}  // namespace alens
