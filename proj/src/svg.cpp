#include "planefn/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace planefn {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// SVG's y axis points down; flip it.
std::string xy(Point p) { return num(p.real()) + "," + num(-p.imag()); }

void ring_path(const Ring& r, std::ostringstream& d) {
    for (std::size_t i = 0; i < r.size(); ++i) d << (i == 0 ? "M" : "L") << xy(r[i]) << ' ';
    d << "Z ";
}

}  // namespace

std::string to_svg(const PlaneSet& set, const SvgStyle& style) {
    auto [lo, hi] = set.bounds();
    double w = hi.real() - lo.real(), h = hi.imag() - lo.imag();
    const double m = 0.05 * std::max({w, h, 1e-12});
    w += 2 * m;
    h += 2 * m;
    const int height = std::max(1, static_cast<int>(style.width * h / w));
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\"" << height
       << "\" viewBox=\"" << num(lo.real() - m) << ' ' << num(-hi.imag() - m) << ' ' << num(w) << ' ' << num(h)
       << "\">\n";
    const std::string sw = "stroke-width=\"" + num(style.stroke_width) + "\" vector-effect=\"non-scaling-stroke\"";
    if (set.is_region()) {
        std::ostringstream d;
        ring_path(set.as_region().outer, d);
        for (const auto& hole : set.as_region().holes) ring_path(hole, d);
        os << "  <path d=\"" << d.str() << "\" fill=\"" << style.fill << "\" fill-rule=\"evenodd\" stroke=\""
           << style.stroke << "\" " << sw << "/>\n";
    } else {
        for (const auto& arc : set.as_skeleton().arcs) {
            os << "  <polyline points=\"";
            for (auto p : arc.vertices()) os << xy(p) << ' ';
            os << "\" fill=\"none\" stroke=\"" << style.stroke << "\" " << sw << "/>\n";
        }
    }
    const double r = 0.004 * std::max(w, h);
    for (auto p : set.isolated_points())
        os << "  <circle cx=\"" << num(p.real()) << "\" cy=\"" << num(-p.imag()) << "\" r=\"" << num(r)
           << "\" fill=\"" << style.stroke << "\"/>\n";
    for (const auto& line : style.overlay) {
        os << "  <polyline class=\"overlay\" points=\"";
        for (auto p : line) os << xy(p) << ' ';
        os << "\" fill=\"none\" stroke=\"" << style.overlay_stroke << "\" " << sw << "/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace planefn
