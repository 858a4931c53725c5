#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "acoustic_lens/geodesic.hpp"
#include "acoustic_lens/lensing.hpp"
#include "acoustic_lens/units.hpp"

namespace alens {

/// Shortest round-trip decimal form of a double (17 significant digits).
/// All file output goes through this so identical runs produce
/// byte-identical artifacts.
std::string format_double(double x);

/// Options shared by the writers. The timestamp is off by default so
/// that repeated runs are byte-identical; when enabled it goes into JSON
/// metadata only, never into tabular data.
struct OutputOptions {
    bool with_timestamp = false;
};

/// Generic numeric table -> CSV: header row, comma separation, LF line
/// endings, UTF-8 (all content is ASCII).
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_trajectory_csv(std::ostream& os, const Trajectory& t);
std::string trajectory_to_json(const Trajectory& t, const OutputOptions& opt = {});

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);
std::string sweep_to_json(double c0, const std::vector<SweepPoint>& points,
                          const OutputOptions& opt = {});

std::string lens_to_json(double c0, const LensGeometry& g,
                         const OutputOptions& opt = {});

std::string scales_to_json(const PhysicalParams& p, const DerivedScales& s,
                           const OutputOptions& opt = {});

}  // namespace alens
