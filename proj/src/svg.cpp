#include "acoustic_lens/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

namespace alens {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

void write_trajectory_svg(std::ostream& os, const Trajectory& t) {
    const double orbit_radius = std::numbers::sqrt2 * t.c0;
    double extent = orbit_radius;
    for (const PhononState& s : t.samples) {
        extent = std::max({extent, std::fabs(s.r * std::cos(s.phi)),
                           std::fabs(s.r * std::sin(s.phi))});
    }
    extent *= 1.05;
    const double stroke = extent / 320.0;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
          "viewBox=\"" << num(-extent) << ' ' << num(-extent) << ' ' << num(2 * extent)
       << ' ' << num(2 * extent) << "\">\n";
    os << "<rect x=\"" << num(-extent) << "\" y=\"" << num(-extent) << "\" width=\""
       << num(2 * extent) << "\" height=\"" << num(2 * extent) << "\" fill=\"white\"/>\n";
    os << "<g transform=\"scale(1,-1)\">\n";
    os << "<circle cx=\"0\" cy=\"0\" r=\"" << num(t.c0)
       << "\" fill=\"#d9d9d9\" stroke=\"#333333\" stroke-width=\"" << num(stroke) << "\"/>\n";
    os << "<circle cx=\"0\" cy=\"0\" r=\"" << num(orbit_radius)
       << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"" << num(stroke)
       << "\" stroke-dasharray=\"" << num(4 * stroke) << ' ' << num(3 * stroke) << "\"/>\n";
    os << "<circle cx=\"0\" cy=\"0\" r=\"" << num(2 * stroke) << "\" fill=\"#333333\"/>\n";

    if (t.samples.size() >= 2) {
        os << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"" << num(1.5 * stroke)
           << "\" points=\"";
        for (std::size_t i = 0; i < t.samples.size(); ++i) {
            const PhononState& s = t.samples[i];
            if (i) os << ' ';
            os << num(s.r * std::cos(s.phi)) << ',' << num(s.r * std::sin(s.phi));
        }
        os << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

void write_deflection_svg(std::ostream& os, const std::vector<SweepPoint>& points) {
    const double width = 640.0, height = 400.0;
    const double ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;

    double bmin = points.empty() ? 0.0 : points.front().b;
    double bmax = bmin;
    double dmin = points.empty() ? 0.0 : points.front().deflection_exact;
    double dmax = dmin;
    for (const SweepPoint& p : points) {
        bmin = std::min(bmin, p.b);
        bmax = std::max(bmax, p.b);
        dmin = std::min({dmin, p.deflection_exact, p.deflection_series});
        dmax = std::max({dmax, p.deflection_exact, p.deflection_series});
    }
    if (bmax == bmin) bmax = bmin + 1.0;
    if (dmax == dmin) dmax = dmin + 1.0;

    auto px = [&](double b) { return ml + (b - bmin) / (bmax - bmin) * (width - ml - mr); };
    auto py = [&](double d) {
        return height - mb - (d - dmin) / (dmax - dmin) * (height - mt - mb);
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
       << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
       << num(height) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
       << "\" fill=\"white\"/>\n";
    os << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\""
       << num(width - ml - mr) << "\" height=\"" << num(height - mt - mb)
       << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    auto polyline = [&](const char* color, const char* dash, bool exact) {
        if (points.size() < 2) return;
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (dash) os << " stroke-dasharray=\"" << dash << "\"";
        os << " points=\"";
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = exact ? points[i].deflection_exact : points[i].deflection_series;
            if (i) os << ' ';
            os << num(px(points[i].b)) << ',' << num(py(d));
        }
        os << "\"/>\n";
    };
    polyline("#1f6fb2", nullptr, true);
    polyline("#c0392b", "6 4", false);

    const char* font = " font-family=\"monospace\" font-size=\"12\" fill=\"#333333\"";
    os << "<text x=\"" << num(ml) << "\" y=\"" << num(height - mb + 16) << "\"" << font
       << ">" << num(bmin) << "</text>\n";
    os << "<text x=\"" << num(width - mr - 40) << "\" y=\"" << num(height - mb + 16) << "\""
       << font << ">" << num(bmax) << "</text>\n";
    os << "<text x=\"" << num(width / 2 - 60) << "\" y=\"" << num(height - 12) << "\"" << font
       << ">impact parameter b</text>\n";
    os << "<text x=\"4\" y=\"" << num(py(dmax) + 4) << "\"" << font << ">" << num(dmax)
       << "</text>\n";
    os << "<text x=\"4\" y=\"" << num(py(dmin) + 4) << "\"" << font << ">" << num(dmin)
       << "</text>\n";
    os << "<text x=\"" << num(ml + 10) << "\" y=\"" << num(mt + 16) << "\"" << font
       << ">deflection angle: exact (solid), series (dashed)</text>\n";
    os << "</svg>\n";
}

}  // namespace alens
