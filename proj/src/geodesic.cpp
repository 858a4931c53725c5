#include "acoustic_lens/geodesic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/numeric/odeint.hpp>

#include "acoustic_lens/lensing.hpp"

namespace alens {

namespace {

using State = std::array<double, 4>;  // r, dr/dlambda, phi, acoustic time

// 5-point Gauss-Legendre rule on [-1, 1], used to reconstruct the
// angular-momentum integral from the dense output.
constexpr std::array<double, 5> kGaussNodes = {
    -0.90617984593866399, -0.53846931010568309, 0.0,
    0.53846931010568309, 0.90617984593866399};
constexpr std::array<double, 5> kGaussWeights = {
    0.23692688505618909, 0.47862867049936647, 0.56888888888888889,
    0.47862867049936647, 0.23692688505618909};

struct ResolvedConfig {
    double rel_tol;
    double abs_tol;
    std::size_t max_steps;
    double r_start;
    double r_escape;
    double r_capture;
    bool with_time;
};

ResolvedConfig resolve_config(const AcousticMetric& m, const ConservedCharges& charges,
                              const IntegratorConfig& cfg) {
    if (!(charges.energy > 0.0) || !std::isfinite(charges.energy)) {
        throw std::domain_error("phonon energy must be positive and finite");
    }
    if (!std::isfinite(charges.angular_momentum)) {
        throw std::domain_error("angular momentum must be finite");
    }
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
        throw std::domain_error("integrator tolerances must be positive");
    }
    if (cfg.max_steps == 0) {
        throw std::domain_error("max_steps must be at least 1");
    }

    const double b = charges.impact_parameter();
    ResolvedConfig rc;
    rc.rel_tol = cfg.rel_tol;
    rc.abs_tol = cfg.abs_tol;
    rc.max_steps = cfg.max_steps;
    rc.r_start = cfg.r_start.value_or(std::max(100.0 * m.c0(), 20.0 * std::fabs(b)));
    rc.r_escape = cfg.r_escape.value_or(rc.r_start);
    rc.r_capture = cfg.r_capture.value_or(0.1 * m.c0());
    rc.with_time = cfg.with_acoustic_time;

    if (!(rc.r_start > m.horizon_radius())) {
        throw std::domain_error("launch radius must lie outside the horizon r_h = c0");
    }
    if (!(rc.r_capture > 0.0) || !(rc.r_capture < rc.r_escape)) {
        throw std::domain_error("termination radii must satisfy 0 < r_capture < r_escape");
    }
    if (!(rc.r_start > rc.r_capture)) {
        throw std::domain_error("launch radius must exceed r_capture");
    }
    if (rc.with_time && classify(m.c0(), b) != OrbitClass::Deflected) {
        throw std::domain_error(
            "acoustic time diverges at the horizon; only Deflected orbits may request it");
    }
    return rc;
}

// Bisection for a sign change of `f` on [lo, hi] with f(lo), f(hi) of
// opposite sign; returns the bracket midpoint at floating-point
// resolution. Deterministic.
template <typename F>
double locate_crossing(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fmid = f(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::Deflected: return "Deflected";
        case OrbitClass::Captured: return "Captured";
        case OrbitClass::Critical: return "Critical";
    }
    return "Unknown";
}

ConservedCharges ConservedCharges::from_impact_parameter(double b, double energy) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw std::domain_error("phonon energy must be positive and finite");
    }
    if (!std::isfinite(b)) {
        throw std::domain_error("impact parameter must be finite");
    }
    ConservedCharges c;
    c.energy = energy;
    c.angular_momentum = b * energy;
    return c;
}

TraceNonConvergence::TraceNonConvergence(const std::string& what, Trajectory partial)
    : std::runtime_error(what), partial_(std::move(partial)) {}

double effective_potential(double c0, double L, double r) {
    if (!(r > 0.0)) {
        throw std::domain_error("radius must be positive, got " + std::to_string(r));
    }
    const double r2 = r * r;
    return (L * L) / (2.0 * r2) - (c0 * c0) * (L * L) / (2.0 * r2 * r2);
}

PotentialPeak potential_peak(double c0, double L) {
    if (!(c0 > 0.0)) {
        throw std::domain_error("potential peak needs c0 > 0");
    }
    if (L == 0.0) {
        throw std::domain_error("a radial phonon (L = 0) sees no potential barrier");
    }
    return {std::numbers::sqrt2 * c0, (L * L) / (8.0 * c0 * c0)};
}

double critical_impact_parameter(double c0) {
    if (!(c0 > 0.0)) {
        throw std::domain_error("critical impact parameter needs c0 > 0");
    }
    return 2.0 * c0;
}

double turning_point(double c0, double b) {
    if (!(c0 >= 0.0) || !std::isfinite(c0)) {
        throw std::domain_error("sink strength c0 must be nonnegative and finite");
    }
    const double ab = std::fabs(b);
    if (!(ab >= 2.0 * c0) || !std::isfinite(b)) {
        throw std::domain_error("captured orbit: no turning point outside the barrier");
    }
    if (ab == 0.0) {
        throw std::domain_error("a radial phonon has no turning point");
    }
    // outer root of E^2 - 2 V(r) = 0; meets the barrier radius sqrt(2) c0
    // exactly when |b| = 2 c0
    const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * c0 * c0));
    return ab * std::sqrt(0.5 + disc / (2.0 * ab));
}

OrbitClass classify(double c0, double b) {
    if (!(c0 > 0.0)) {
        throw std::domain_error("classification needs c0 > 0");
    }
    if (!std::isfinite(b)) {
        throw std::domain_error("impact parameter must be finite");
    }
    const double critical = 2.0 * c0;
    const double ab = std::fabs(b);
    if (ab > critical) return OrbitClass::Deflected;
    if (ab < critical) return OrbitClass::Captured;
    return OrbitClass::Critical;
}

Trajectory trace(const AcousticMetric& m, const ConservedCharges& charges,
                 const IntegratorConfig& cfg) {
    const ResolvedConfig rc = resolve_config(m, charges, cfg);
    const double c0 = m.c0();
    const double E = charges.energy;
    const double L = charges.angular_momentum;
    const double b = charges.impact_parameter();
    const double ab = std::fabs(b);

    Trajectory t;
    t.charges = charges;
    t.c0 = c0;
    t.classification = classify(c0, b);

    const double p0_sq = E * E - 2.0 * effective_potential(c0, L, rc.r_start);
    if (!(p0_sq > 0.0)) {
        throw std::domain_error(
            "cannot launch inbound: E^2 <= 2 V(r_start); the launch radius sits inside the "
            "classically forbidden region");
    }

    auto rhs = [c0, E, L, with_time = rc.with_time](const State& y, State& dydl, double) {
        const double r = y[0];
        if (!(r > 0.0)) {
            // poisoned trial state; force the error estimate up so the
            // controlled stepper rejects and shrinks the step. Large but
            // finite: infinities across several stages cancel to NaN in
            // the embedded error formula, and the stepper accepts
            // NaN-error steps.
            constexpr double huge = 1e300;
            dydl = {huge, huge, huge, huge};
            return;
        }
        const double r2 = r * r;
        const double r3 = r2 * r;
        dydl[0] = y[1];
        dydl[1] = (L * L) / r3 - 2.0 * (c0 * c0) * (L * L) / (r3 * r2);
        dydl[2] = L / r2;
        dydl[3] = with_time ? E * r2 / (r2 - c0 * c0) : 0.0;
    };

    namespace ode = boost::numeric::odeint;
    auto stepper =
        ode::make_dense_output(rc.abs_tol, rc.rel_tol, ode::runge_kutta_dopri5<State>());

    State y0{rc.r_start, -std::sqrt(p0_sq), 0.0, 0.0};
    stepper.initialize(y0, 0.0, 0.01 * rc.r_start / std::max(1.0, std::fabs(y0[1])));

    auto interpolate = [&stepper](double lambda) {
        State s;
        stepper.calc_state(lambda, s);
        return s;
    };

    std::vector<PhononState> samples;
    std::vector<double> times;
    samples.push_back({0.0, y0[0], y0[2], y0[1]});
    if (rc.with_time) times.push_back(y0[3]);

    const double e2 = E * E;
    double null_residual_max = 0.0;
    auto null_residual = [&](double r, double p) {
        return std::fabs(p * p + 2.0 * effective_potential(c0, L, r) - e2) / e2;
    };
    null_residual_max = null_residual(y0[0], y0[1]);

    // Running angular-momentum drift: J accumulates the dense-output
    // reconstruction of integral(dlambda / r^2); the drift compares the
    // integrated phi against L * J.
    double j_cumulative = 0.0;
    double drift_abs_max = 0.0;
    auto append_sample = [&](double lambda, const State& s) {
        const PhononState& prev = samples.back();
        const double h = lambda - prev.lambda;
        if (h > 0.0) {
            double quad = 0.0;
            for (int k = 0; k < 5; ++k) {
                const double node = lambda - 0.5 * h * (1.0 - kGaussNodes[k]);
                const State sn = interpolate(node);
                quad += kGaussWeights[k] / (sn[0] * sn[0]);
            }
            j_cumulative += 0.5 * h * quad;
        }
        drift_abs_max = std::max(drift_abs_max, std::fabs(s[2] - L * j_cumulative));
        null_residual_max = std::max(null_residual_max, null_residual(s[0], s[1]));
        samples.push_back({lambda, s[0], s[2], s[1]});
        if (rc.with_time) times.push_back(s[3]);
    };

    auto finish = [&](bool escaped) {
        t.samples = std::move(samples);
        t.acoustic_time = std::move(times);
        t.escaped = escaped;
        t.conservation_residual_max = null_residual_max;

        double min_r = std::numeric_limits<double>::infinity();
        for (const PhononState& s : t.samples) min_r = std::min(min_r, s.r);
        t.min_radius = min_r;

        const double phi_total = std::fabs(t.samples.back().phi - t.samples.front().phi);
        t.sweep_accumulated = phi_total;
        t.angular_momentum_drift_max = phi_total > 0.0 ? drift_abs_max / phi_total : 0.0;

        double swept = phi_total;
        const double r_entry = t.samples.front().r;
        if (ab > 0.0 && ab <= r_entry) {
            swept += std::asin(ab / r_entry);
            t.entry_completed = true;
        }
        if (escaped) {
            const double r_exit = t.samples.back().r;
            if (ab > 0.0 && ab <= r_exit) {
                swept += std::asin(ab / r_exit);
                t.exit_completed = true;
            }
        }
        t.swept_angle = swept;
    };

    std::size_t steps = 0;
    while (true) {
        if (steps >= rc.max_steps) {
            finish(false);
            throw TraceNonConvergence(
                "integration exceeded max_steps = " + std::to_string(rc.max_steps) +
                    " before reaching a termination radius",
                std::move(t));
        }
        ++steps;

        const auto interval = stepper.do_step(rhs);
        const double l0 = interval.first;
        const double l1 = interval.second;
        const State y1 = stepper.current_state();

        double l_end = l1;
        State y_end = y1;
        bool escaped = false;
        bool captured = false;

        if (y1[0] <= rc.r_capture && samples.back().r > rc.r_capture) {
            l_end = locate_crossing(
                [&](double lam) { return interpolate(lam)[0] - rc.r_capture; }, l0, l1);
            y_end = interpolate(l_end);
            captured = true;
        } else if (y1[0] >= rc.r_escape && y1[1] > 0.0 && samples.back().r < rc.r_escape) {
            l_end = locate_crossing(
                [&](double lam) { return interpolate(lam)[0] - rc.r_escape; }, l0, l1);
            y_end = interpolate(l_end);
            escaped = true;
        }

        // Radial minimum inside this step: record a sample at the located
        // turning point so min_radius reflects the true path minimum.
        if (samples.back().r_rate < 0.0 && y_end[1] > 0.0) {
            const double l_turn = locate_crossing(
                [&](double lam) { return interpolate(lam)[1]; }, samples.back().lambda, l_end);
            if (l_turn > samples.back().lambda && l_turn < l_end) {
                append_sample(l_turn, interpolate(l_turn));
            }
        }

        append_sample(l_end, y_end);

        if (escaped || captured) {
            finish(escaped);
            return t;
        }
    }
}

double swept_angle_residual(const Trajectory& t) {
    if (t.classification != OrbitClass::Deflected) {
        throw std::domain_error(
            "swept-angle residual is defined for Deflected trajectories only");
    }
    const double deflection = deflection_exact(t.c0, t.impact_parameter());
    return std::fabs(t.swept_angle - (std::numbers::pi + std::fabs(deflection)));
}

}  // namespace alens
