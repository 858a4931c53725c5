#pragma once

#include <iosfwd>
#include <vector>

#include "acoustic_lens/geodesic.hpp"
#include "acoustic_lens/lensing.hpp"

namespace alens {

/// Cartesian projection of a trajectory with the horizon circle (solid)
/// and the unstable circular orbit radius sqrt(2) c0 (dashed).
void write_trajectory_svg(std::ostream& os, const Trajectory& t);

/// Deflection versus impact parameter: exact curve solid, series overlay
/// dashed. Axes are linear; points are plotted in input order.
void write_deflection_svg(std::ostream& os, const std::vector<SweepPoint>& points);

}  // namespace alens
