#pragma once

#include <string>
#include <vector>

#include "planefn/planeset.hpp"

namespace planefn {

struct SvgStyle {
    int width = 800;
    std::string fill = "#9ecae1";
    std::string stroke = "#08306b";
    double stroke_width = 1.0;
    std::string overlay_stroke = "#d7301f";
    /// Extra polylines (e.g. dent witnesses) drawn over the set.
    std::vector<std::vector<Point>> overlay;
};

/// Regions render as one even-odd filled path (outer ring plus holes),
/// skeleton arcs as stroked polylines, isolated points as small discs.
std::string to_svg(const PlaneSet& set, const SvgStyle& style = {});

}  // namespace planefn
