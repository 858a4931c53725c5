#include "acoustic_lens/metric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace alens {

namespace {

void require_outside_origin(double r) {
    if (!(r > 0.0)) {
        throw std::domain_error("radius must be positive, got " + std::to_string(r));
    }
}

}  // namespace

AcousticMetric::AcousticMetric(double c0) : c0_(c0) {
    if (!(c0 > 0.0) || !std::isfinite(c0)) {
        throw std::domain_error("sink strength c0 must be positive and finite, got " +
                                std::to_string(c0));
    }
}

double AcousticMetric::warp_factor(double r) const {
    require_outside_origin(r);
    return 1.0 - (c0_ * c0_) / (r * r);
}

double AcousticMetric::flow_velocity(double r) const {
    require_outside_origin(r);
    return c0_ / r;
}

double AcousticMetric::kretschmann(double r) const {
    require_outside_origin(r);
    const double r2 = r * r;
    const double r8 = r2 * r2 * r2 * r2;
    return 44.0 * c0_ * c0_ / r8;
}

double AcousticMetric::ricci_scalar(double r) const {
    require_outside_origin(r);
    const double r2 = r * r;
    return 2.0 * c0_ * c0_ / (r2 * r2);
}

double AcousticMetric::lab_time_correction(double r1, double r2) const {
    if (!(r1 > c0_) || !(r2 > c0_)) {
        throw std::domain_error(
            "lab-time transform is singular at the horizon; both radii must exceed c0 = " +
            std::to_string(c0_));
    }
    // integral of c0 / (r f(r)) dr = (c0/2) ln(r^2 - c0^2) + const
    return 0.5 * c0_ * std::log((r2 * r2 - c0_ * c0_) / (r1 * r1 - c0_ * c0_));
}

}  // namespace alens
