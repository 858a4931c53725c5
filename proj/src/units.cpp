#include "acoustic_lens/units.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace alens {

namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::domain_error(std::string(field) + " must be positive and finite, got " +
                                std::to_string(value));
    }
}

double numeric_field(const nlohmann::json& doc, const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc.at(key);
    if (!v.is_number()) {
        throw std::domain_error(std::string(key) + " must be a number");
    }
    return v.get<double>();
}

}  // namespace

DerivedScales derive_scales(const PhysicalParams& p) {
    require_positive(p.photon_mass, "photon_mass");
    require_positive(p.interaction_dimensionless, "interaction_dimensionless");
    require_positive(p.density, "density");
    require_positive(p.hbar, "hbar");

    DerivedScales s;
    s.interaction_si = p.interaction_dimensionless * p.hbar * p.hbar / p.photon_mass;
    s.sound_speed = std::sqrt(s.interaction_si * p.density / p.photon_mass);
    s.healing_length = p.hbar / (p.photon_mass * s.sound_speed);
    return s;
}

double to_dimensionless(double length_si, const DerivedScales& s) {
    require_positive(s.healing_length, "healing_length");
    return length_si / s.healing_length;
}

double to_physical(double length, const DerivedScales& s) {
    require_positive(s.healing_length, "healing_length");
    return length * s.healing_length;
}

PhysicalParams params_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("invalid JSON parameter document: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::runtime_error("JSON parameter document must be an object");
    }

    PhysicalParams p;
    p.photon_mass = numeric_field(doc, "photon_mass_kg", p.photon_mass);
    p.interaction_dimensionless = numeric_field(doc, "g_tilde", p.interaction_dimensionless);
    p.density = numeric_field(doc, "density_per_m2", p.density);
    require_positive(p.photon_mass, "photon_mass_kg");
    require_positive(p.interaction_dimensionless, "g_tilde");
    require_positive(p.density, "density_per_m2");
    return p;
}

PhysicalParams params_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open parameter file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return params_from_json(ss.str());
}

}  // namespace alens
