#include "acoustic_lens/output.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

#include <json.hpp>

namespace alens {

namespace {

using Json = nlohmann::ordered_json;

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void maybe_stamp(Json& metadata, const OutputOptions& opt) {
    if (opt.with_timestamp) metadata["generated_at"] = utc_timestamp();
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        os << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_double(row[i]);
        }
        os << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
    os << "lambda,r,phi,x,y,dr_dlambda\n";
    for (const PhononState& s : t.samples) {
        os << format_double(s.lambda) << ',' << format_double(s.r) << ','
           << format_double(s.phi) << ',' << format_double(s.r * std::cos(s.phi)) << ','
           << format_double(s.r * std::sin(s.phi)) << ',' << format_double(s.r_rate) << '\n';
    }
}

std::string trajectory_to_json(const Trajectory& t, const OutputOptions& opt) {
    Json metadata;
    metadata["c0"] = t.c0;
    metadata["energy"] = t.charges.energy;
    metadata["angular_momentum"] = t.charges.angular_momentum;
    metadata["impact_parameter"] = t.impact_parameter();
    metadata["classification"] = to_string(t.classification);
    metadata["escaped"] = t.escaped;
    metadata["swept_angle"] = t.swept_angle;
    metadata["sweep_accumulated"] = t.sweep_accumulated;
    metadata["entry_completed"] = t.entry_completed;
    metadata["exit_completed"] = t.exit_completed;
    metadata["min_radius"] = t.min_radius;
    metadata["residuals"] = {
        {"null_condition_max", t.conservation_residual_max},
        {"angular_momentum_drift_max", t.angular_momentum_drift_max},
    };
    maybe_stamp(metadata, opt);

    Json samples = Json::array();
    for (const PhononState& s : t.samples) {
        samples.push_back({s.lambda, s.r, s.phi, s.r * std::cos(s.phi),
                           s.r * std::sin(s.phi), s.r_rate});
    }

    Json doc;
    doc["metadata"] = std::move(metadata);
    doc["columns"] = {"lambda", "r", "phi", "x", "y", "dr_dlambda"};
    doc["samples"] = std::move(samples);
    if (!t.acoustic_time.empty()) doc["acoustic_time"] = t.acoustic_time;
    return doc.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
    os << "b,deflection_exact,deflection_series,abs_error,focal_length\n";
    for (const SweepPoint& p : points) {
        os << format_double(p.b) << ',' << format_double(p.deflection_exact) << ','
           << format_double(p.deflection_series) << ',' << format_double(p.abs_error) << ','
           << format_double(p.focal_length) << '\n';
    }
}

std::string sweep_to_json(double c0, const std::vector<SweepPoint>& points,
                          const OutputOptions& opt) {
    Json metadata;
    metadata["c0"] = c0;
    metadata["count"] = points.size();
    maybe_stamp(metadata, opt);

    Json rows = Json::array();
    for (const SweepPoint& p : points) {
        rows.push_back({p.b, p.deflection_exact, p.deflection_series, p.abs_error,
                        p.focal_length});
    }

    Json doc;
    doc["metadata"] = std::move(metadata);
    doc["columns"] = {"b", "deflection_exact", "deflection_series", "abs_error",
                      "focal_length"};
    doc["points"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string lens_to_json(double c0, const LensGeometry& g, const OutputOptions& opt) {
    Json doc;
    doc["c0"] = c0;
    doc["d_lens"] = g.d_lens;
    doc["d_source"] = g.d_source;
    doc["b_solved"] = g.b_solved;
    doc["theta_einstein"] = g.theta_einstein;
    doc["theta_source"] = g.theta_source;
    doc["deflection"] = g.deflection;
    doc["theta_einstein_closed_form"] = g.theta_einstein_closed_form;
    doc["image_angles"] = {g.image_angles.first, g.image_angles.second};
    maybe_stamp(doc, opt);
    return doc.dump(2) + "\n";
}

std::string scales_to_json(const PhysicalParams& p, const DerivedScales& s,
                           const OutputOptions& opt) {
    Json doc;
    doc["inputs"] = {
        {"photon_mass_kg", p.photon_mass},
        {"g_tilde", p.interaction_dimensionless},
        {"density_per_m2", p.density},
        {"hbar_j_s", p.hbar},
    };
    doc["derived"] = {
        {"sound_speed_m_per_s", s.sound_speed},
        {"healing_length_m", s.healing_length},
        {"interaction_j_m2", s.interaction_si},
    };
    maybe_stamp(doc, opt);
    return doc.dump(2) + "\n";
}

}  // namespace alens
