#pragma once

#include <string>

namespace alens {

// Reduced Planck constant, J s (CODATA 2018). Fixed, not a user input.
inline constexpr double kHBar = 1.054571817e-34;

/// Microscopic parameters of the two-dimensional photon condensate.
/// Defaults are the reference cavity values.
struct PhysicalParams {
    double photon_mass = 6.7e-36;             ///< effective photon mass, kg
    double interaction_dimensionless = 7e-4;  ///< g~ = m g / hbar^2, pure number
    double density = 1e13;                    ///< areal condensate density, 1/m^2
    double hbar = kHBar;                      ///< J s, fixed constant
};

/// SI scales derived from the condensate parameters. The healing length is
/// the unit of length for every dimensionless quantity in this library.
struct DerivedScales {
    double sound_speed;     ///< c = sqrt(g n / m), m/s
    double healing_length;  ///< xi = hbar / (m c), m
    double interaction_si;  ///< g = g~ hbar^2 / m, J m^2
};

/// Computes sound speed, healing length, and the SI coupling from the
/// condensate parameters. Throws std::domain_error naming the offending
/// field if any parameter is not positive.
DerivedScales derive_scales(const PhysicalParams& p);

/// SI length -> healing-length units.
double to_dimensionless(double length_si, const DerivedScales& s);

/// Healing-length units -> SI length.
double to_physical(double length, const DerivedScales& s);

/// Parses a JSON parameter document. Recognized keys: photon_mass_kg,
/// g_tilde, density_per_m2; missing keys keep their defaults, unrelated
/// keys are ignored so the document may double as a run configuration.
/// Throws std::domain_error on non-numeric or non-positive values and
/// std::runtime_error on malformed JSON.
PhysicalParams params_from_json(const std::string& json_text);

/// Convenience wrapper: reads the file at `path` and parses it.
PhysicalParams params_from_json_file(const std::string& path);

}  // namespace alens
