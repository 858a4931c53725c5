#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acoustic_lens/geodesic.hpp"
#include "acoustic_lens/lensing.hpp"
#include "acoustic_lens/metric.hpp"
#include "acoustic_lens/output.hpp"
#include "acoustic_lens/svg.hpp"
#include "acoustic_lens/units.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Raised for configuration problems (exit 2, message names the field).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<double> c0;
    alens::PhysicalParams physical;
    alens::IntegratorConfig integrator;
    std::string output_dir = ".";
    std::string format = "csv";
    bool emit_plots = false;
    bool output_dir_from_config = false;
};

double numeric(const Json& v, const std::string& name) {
    if (!v.is_number()) throw ConfigError("config field " + name + " must be a number");
    return v.get<double>();
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;

    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

    try {
        cfg.physical = alens::params_from_json(text);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }

    if (doc.contains("c0")) cfg.c0 = numeric(doc["c0"], "c0");
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string()) throw ConfigError("config field output_dir must be a string");
        cfg.output_dir = doc["output_dir"].get<std::string>();
        cfg.output_dir_from_config = true;
    }
    if (doc.contains("format")) {
        if (!doc["format"].is_string()) throw ConfigError("config field format must be a string");
        cfg.format = doc["format"].get<std::string>();
    }
    if (doc.contains("emit_plots")) {
        if (!doc["emit_plots"].is_boolean()) throw ConfigError("config field emit_plots must be a boolean");
        cfg.emit_plots = doc["emit_plots"].get<bool>();
    }
    if (doc.contains("integrator")) {
        const Json& integ = doc["integrator"];
        if (!integ.is_object()) throw ConfigError("config field integrator must be an object");
        if (integ.contains("rel_tol")) cfg.integrator.rel_tol = numeric(integ["rel_tol"], "integrator.rel_tol");
        if (integ.contains("abs_tol")) cfg.integrator.abs_tol = numeric(integ["abs_tol"], "integrator.abs_tol");
        if (integ.contains("max_steps")) {
            const double steps = numeric(integ["max_steps"], "integrator.max_steps");
            if (steps < 1) throw ConfigError("config field integrator.max_steps must be at least 1");
            cfg.integrator.max_steps = static_cast<std::size_t>(steps);
        }
        if (integ.contains("r_start")) cfg.integrator.r_start = numeric(integ["r_start"], "integrator.r_start");
        if (integ.contains("r_escape")) cfg.integrator.r_escape = numeric(integ["r_escape"], "integrator.r_escape");
        if (integ.contains("r_capture")) cfg.integrator.r_capture = numeric(integ["r_capture"], "integrator.r_capture");
    }
    return cfg;
}

std::string angle_display(double radians, bool degrees) {
    if (degrees) return alens::format_double(radians * 180.0 / std::numbers::pi) + " deg";
    return alens::format_double(radians) + " rad";
}

fs::path prepare_output_dir(const RunConfig& cfg) {
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    return dir;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

template <typename Writer>
void write_with(const fs::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    writer(out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

double require_c0(const RunConfig& cfg) {
    if (!cfg.c0) throw ConfigError("missing required value: c0 (flag --c0 or config key c0)");
    if (!(*cfg.c0 > 0.0)) throw ConfigError("field c0 must be positive");
    return *cfg.c0;
}

std::vector<double> make_grid(double min, double max, int count, bool log_spacing,
                              const char* what) {
    if (count < 1) throw ConfigError(std::string(what) + " count must be at least 1");
    if (!(min <= max)) throw ConfigError(std::string(what) + " range must have min <= max");
    if (log_spacing && !(min > 0.0))
        throw ConfigError(std::string(what) + " log spacing needs a positive minimum");
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = min;
        return grid;
    }
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        grid[i] = log_spacing ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                              : min + f * (max - min);
    }
    return grid;
}

int run_scales(const RunConfig& cfg, const alens::OutputOptions& opt) {
    const alens::DerivedScales s = alens::derive_scales(cfg.physical);
    std::cout << "sound speed c        = " << alens::format_double(s.sound_speed) << " m/s\n"
              << "healing length xi    = " << alens::format_double(s.healing_length) << " m\n"
              << "interaction g        = " << alens::format_double(s.interaction_si)
              << " J m^2\n";

    const fs::path dir = prepare_output_dir(cfg);
    if (cfg.format == "json") {
        write_text_file(dir / "scales.json", alens::scales_to_json(cfg.physical, s, opt));
        std::cout << "wrote " << (dir / "scales.json").string() << '\n';
    } else {
        write_with(dir / "scales.csv", [&](std::ostream& os) {
            os << "quantity,value\n";
            os << "photon_mass_kg," << alens::format_double(cfg.physical.photon_mass) << '\n';
            os << "g_tilde," << alens::format_double(cfg.physical.interaction_dimensionless)
               << '\n';
            os << "density_per_m2," << alens::format_double(cfg.physical.density) << '\n';
            os << "sound_speed_m_per_s," << alens::format_double(s.sound_speed) << '\n';
            os << "healing_length_m," << alens::format_double(s.healing_length) << '\n';
            os << "interaction_j_m2," << alens::format_double(s.interaction_si) << '\n';
        });
        std::cout << "wrote " << (dir / "scales.csv").string() << '\n';
    }
    return kExitOk;
}

int run_curvature(const RunConfig& cfg, double r_min, double r_max, int count) {
    const alens::AcousticMetric metric(require_c0(cfg));
    if (!(r_min > 0.0)) throw std::domain_error("curvature needs r_min > 0");
    const std::vector<double> grid = make_grid(r_min, r_max, count, false, "curvature");

    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (double r : grid) {
        rows.push_back({r, metric.warp_factor(r), metric.flow_velocity(r),
                        metric.kretschmann(r), metric.ricci_scalar(r)});
    }
    const std::vector<std::string> header = {"r", "warp_factor", "flow_velocity",
                                             "kretschmann", "ricci_scalar"};

    const fs::path dir = prepare_output_dir(cfg);
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        doc["metadata"] = {{"c0", metric.c0()}, {"horizon_radius", metric.horizon_radius()}};
        doc["columns"] = header;
        doc["rows"] = rows;
        write_text_file(dir / "curvature.json", doc.dump(2) + "\n");
        std::cout << "wrote " << (dir / "curvature.json").string() << '\n';
    } else {
        write_with(dir / "curvature.csv",
                   [&](std::ostream& os) { alens::write_csv(os, header, rows); });
        std::cout << "wrote " << (dir / "curvature.csv").string() << '\n';
    }
    std::cout << "horizon radius r_h   = " << alens::format_double(metric.horizon_radius())
              << '\n';
    return kExitOk;
}

int run_potential(const RunConfig& cfg, double L, double r_min, double r_max, int count) {
    const double c0 = require_c0(cfg);
    alens::AcousticMetric metric(c0);  // validates c0
    if (!(r_min > 0.0)) throw std::domain_error("potential needs r_min > 0");
    const std::vector<double> grid = make_grid(r_min, r_max, count, false, "potential");

    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (double r : grid) {
        rows.push_back({r, alens::effective_potential(c0, L, r)});
    }
    const std::vector<std::string> header = {"r", "effective_potential"};

    const fs::path dir = prepare_output_dir(cfg);
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        doc["metadata"] = {{"c0", c0}, {"angular_momentum", L}};
        doc["columns"] = header;
        doc["rows"] = rows;
        write_text_file(dir / "potential.json", doc.dump(2) + "\n");
        std::cout << "wrote " << (dir / "potential.json").string() << '\n';
    } else {
        write_with(dir / "potential.csv",
                   [&](std::ostream& os) { alens::write_csv(os, header, rows); });
        std::cout << "wrote " << (dir / "potential.csv").string() << '\n';
    }
    if (L != 0.0) {
        const alens::PotentialPeak peak = alens::potential_peak(c0, L);
        std::cout << "barrier peak         = " << alens::format_double(peak.value) << " at r = "
                  << alens::format_double(peak.radius) << '\n';
    }
    return kExitOk;
}

int run_trace(const RunConfig& cfg, double b, bool degrees, const alens::OutputOptions& opt) {
    const double c0 = require_c0(cfg);
    const alens::AcousticMetric metric(c0);
    const auto charges = alens::ConservedCharges::from_impact_parameter(b);
    const alens::Trajectory t = alens::trace(metric, charges, cfg.integrator);

    const double r_start = t.samples.front().r;
    std::cout << "classification       = " << alens::to_string(t.classification) << '\n'
              << "samples              = " << t.samples.size() << '\n'
              << "min radius           = " << alens::format_double(t.min_radius) << '\n'
              << "swept angle          = " << angle_display(t.swept_angle, degrees) << '\n';
    if (t.escaped) {
        std::cout << "swept angle - pi     = "
                  << angle_display(t.swept_angle - std::numbers::pi, degrees) << '\n';
    }
    std::cout << "null residual max    = " << alens::format_double(t.conservation_residual_max)
              << '\n'
              << "L drift max          = " << alens::format_double(t.angular_momentum_drift_max)
              << '\n'
              << "far-field truncation ~ b/r_start = "
              << alens::format_double(std::fabs(b) / r_start)
              << " (before asymptotic completion)\n";

    const fs::path dir = prepare_output_dir(cfg);
    if (cfg.format == "json") {
        write_text_file(dir / "trajectory.json", alens::trajectory_to_json(t, opt));
        std::cout << "wrote " << (dir / "trajectory.json").string() << '\n';
    } else {
        write_with(dir / "trajectory.csv",
                   [&](std::ostream& os) { alens::write_trajectory_csv(os, t); });
        std::cout << "wrote " << (dir / "trajectory.csv").string() << '\n';
    }
    if (cfg.emit_plots) {
        write_with(dir / "trajectory.svg",
                   [&](std::ostream& os) { alens::write_trajectory_svg(os, t); });
        std::cout << "wrote " << (dir / "trajectory.svg").string() << '\n';
    }
    return kExitOk;
}

int run_deflect(const RunConfig& cfg, double b, double quad_tol, bool degrees,
                const alens::OutputOptions& opt) {
    const double c0 = require_c0(cfg);
    if (std::fabs(b) < 10.0 * c0) {
        std::cerr << "note: |b| < 10 c0, the quadratic series is a rough guide here\n";
    }
    const double exact = alens::deflection_exact(c0, b, quad_tol);
    const double series = alens::deflection_series(c0, b);
    const alens::SweepPoint row{b, exact, series, std::fabs(exact - series),
                                alens::focal_length(c0, b)};

    std::cout << "deflection exact     = " << angle_display(exact, degrees) << '\n'
              << "deflection series    = " << angle_display(series, degrees) << '\n'
              << "abs error            = " << alens::format_double(row.abs_error) << '\n'
              << "focal length         = " << alens::format_double(row.focal_length) << '\n';

    const fs::path dir = prepare_output_dir(cfg);
    if (cfg.format == "json") {
        write_text_file(dir / "deflection.json", alens::sweep_to_json(c0, {row}, opt));
        std::cout << "wrote " << (dir / "deflection.json").string() << '\n';
    } else {
        write_with(dir / "deflection.csv",
                   [&](std::ostream& os) { alens::write_sweep_csv(os, {row}); });
        std::cout << "wrote " << (dir / "deflection.csv").string() << '\n';
    }
    return kExitOk;
}

int run_lens(const RunConfig& cfg, double d_lens, double d_source, bool degrees,
             const alens::OutputOptions& opt) {
    const double c0 = require_c0(cfg);
    const alens::LensGeometry geo = alens::lens_solve(c0, d_lens, d_source);

    std::cout << "impact parameter b   = " << alens::format_double(geo.b_solved) << '\n'
              << "theta_E (solved)     = " << angle_display(geo.theta_einstein, degrees) << '\n'
              << "theta_E (closed)     = "
              << angle_display(geo.theta_einstein_closed_form, degrees) << '\n'
              << "theta_source         = " << angle_display(geo.theta_source, degrees) << '\n'
              << "deflection           = " << angle_display(geo.deflection, degrees) << '\n'
              << "images at            = " << angle_display(geo.image_angles.first, degrees)
              << ", " << angle_display(geo.image_angles.second, degrees) << '\n';
    if (geo.theta_einstein > 0.1) {
        std::cerr << "note: theta_E > 0.1 rad, outside the small-angle regime\n";
    }

    const fs::path dir = prepare_output_dir(cfg);
    write_text_file(dir / "lens.json", alens::lens_to_json(c0, geo, opt));
    std::cout << "wrote " << (dir / "lens.json").string() << '\n';
    return kExitOk;
}

int run_sweep(const RunConfig& cfg, double b_min, double b_max, int count, bool log_spacing,
              double quad_tol, const alens::OutputOptions& opt) {
    const double c0 = require_c0(cfg);
    if (!(b_min > 2.0 * c0)) {
        throw std::domain_error("sweep needs b_min > 2 c0 so every point is deflected");
    }
    const std::vector<double> grid = make_grid(b_min, b_max, count, log_spacing, "sweep");
    const std::vector<alens::SweepPoint> points = alens::deflection_sweep(c0, grid, quad_tol);

    const fs::path dir = prepare_output_dir(cfg);
    if (cfg.format == "json") {
        write_text_file(dir / "sweep.json", alens::sweep_to_json(c0, points, opt));
        std::cout << "wrote " << (dir / "sweep.json").string() << '\n';
    } else {
        write_with(dir / "sweep.csv",
                   [&](std::ostream& os) { alens::write_sweep_csv(os, points); });
        std::cout << "wrote " << (dir / "sweep.csv").string() << '\n';
    }
    if (cfg.emit_plots) {
        write_with(dir / "deflection_curve.svg",
                   [&](std::ostream& os) { alens::write_deflection_svg(os, points); });
        std::cout << "wrote " << (dir / "deflection_curve.svg").string() << '\n';
    }
    std::cout << "swept " << points.size() << " impact parameters\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phonon lensing in a draining acoustic geometry"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir_flag;
    std::string format_flag;
    bool plots = false;
    bool degrees = false;
    bool timestamp = false;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--output-dir", output_dir_flag, "directory for artifacts");
    app.add_option("--format", format_flag, "artifact format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--plots", plots, "also write SVG plots");
    app.add_flag("--degrees", degrees, "display angles in degrees (files stay in radians)");
    app.add_flag("--timestamp", timestamp, "stamp JSON metadata with the generation time");

    // Shared numeric flags; presence is checked per subcommand.
    double c0_flag = 0.0;
    bool has_c0 = false;

    auto* scales = app.add_subcommand("scales", "derive SI sound speed and healing length");
    double mass_kg = 0.0, g_tilde = 0.0, density = 0.0;
    auto* mass_opt = scales->add_option("--mass-kg", mass_kg, "photon mass in kg");
    auto* g_opt = scales->add_option("--g-tilde", g_tilde, "dimensionless coupling");
    auto* n_opt = scales->add_option("--density", density, "areal density per m^2");

    auto add_c0 = [&](CLI::App* cmd) {
        cmd->add_option_function<double>(
               "--c0",
               [&](const double& v) {
                   c0_flag = v;
                   has_c0 = true;
               },
               "sink strength (healing-length units)");
    };

    auto* curvature = app.add_subcommand("curvature", "tabulate warp factor and curvature");
    add_c0(curvature);
    double r_min = 0.0, r_max = 0.0;
    int count = 100;
    curvature->add_option("--r-min", r_min, "grid start")->required();
    curvature->add_option("--r-max", r_max, "grid end")->required();
    curvature->add_option("--count", count, "grid points");

    auto* potential = app.add_subcommand("potential", "tabulate the centrifugal barrier");
    add_c0(potential);
    double L_flag = 0.0;
    potential->add_option("--L", L_flag, "angular momentum")->required();
    potential->add_option("--r-min", r_min, "grid start")->required();
    potential->add_option("--r-max", r_max, "grid end")->required();
    potential->add_option("--count", count, "grid points");

    auto* trace_cmd = app.add_subcommand("trace", "integrate a phonon null geodesic");
    add_c0(trace_cmd);
    double b_flag = 0.0;
    trace_cmd->add_option("--b", b_flag, "impact parameter")->required();
    double r_start_flag = 0.0, rel_tol_flag = 0.0;
    auto* r_start_opt = trace_cmd->add_option("--r-start", r_start_flag, "launch radius");
    auto* rel_tol_opt = trace_cmd->add_option("--rel-tol", rel_tol_flag, "integrator tolerance");

    auto* deflect = app.add_subcommand("deflect", "exact and series deflection at one b");
    add_c0(deflect);
    deflect->add_option("--b", b_flag, "impact parameter")->required();
    double quad_tol = 1e-12;
    deflect->add_option("--quad-tol", quad_tol, "quadrature absolute tolerance");

    auto* lens = app.add_subcommand("lens", "solve the thin-lens image geometry");
    add_c0(lens);
    double dl = 0.0, ds = 0.0;
    lens->add_option("--dl", dl, "observer-lens distance")->required();
    lens->add_option("--ds", ds, "observer-source distance")->required();

    auto* sweep = app.add_subcommand("sweep", "deflection curve over an impact-parameter grid");
    add_c0(sweep);
    double b_min = 0.0, b_max = 0.0;
    bool log_spacing = false;
    sweep->add_option("--b-min", b_min, "grid start")->required();
    sweep->add_option("--b-max", b_max, "grid end")->required();
    sweep->add_option("--count", count, "grid points")->required();
    sweep->add_flag("--log", log_spacing, "geometric instead of linear spacing");
    sweep->add_option("--quad-tol", quad_tol, "quadrature absolute tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (has_c0) cfg.c0 = c0_flag;
        if (!format_flag.empty()) cfg.format = format_flag;
        if (cfg.format != "csv" && cfg.format != "json") {
            throw ConfigError("config field format must be csv or json");
        }
        if (plots) cfg.emit_plots = true;
        if (!output_dir_flag.empty()) cfg.output_dir = output_dir_flag;
        if (const char* env_dir = std::getenv("ACOUSTIC_LENS_OUTPUT_DIR")) {
            if (*env_dir) cfg.output_dir = env_dir;
        }

        alens::OutputOptions opt;
        opt.with_timestamp = timestamp;

        if (*scales) {
            if (*mass_opt) cfg.physical.photon_mass = mass_kg;
            if (*g_opt) cfg.physical.interaction_dimensionless = g_tilde;
            if (*n_opt) cfg.physical.density = density;
            return run_scales(cfg, opt);
        }
        if (*curvature) return run_curvature(cfg, r_min, r_max, count);
        if (*potential) return run_potential(cfg, L_flag, r_min, r_max, count);
        if (*trace_cmd) {
            if (*r_start_opt) cfg.integrator.r_start = r_start_flag;
            if (*rel_tol_opt) cfg.integrator.rel_tol = rel_tol_flag;
            return run_trace(cfg, b_flag, degrees, opt);
        }
        if (*deflect) return run_deflect(cfg, b_flag, quad_tol, degrees, opt);
        if (*lens) return run_lens(cfg, dl, ds, degrees, opt);
        if (*sweep) return run_sweep(cfg, b_min, b_max, count, log_spacing, quad_tol, opt);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const alens::TraceNonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const alens::QuadratureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const alens::NoLensingSolution& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}
