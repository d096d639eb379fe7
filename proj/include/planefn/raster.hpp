#pragma once

#include "planefn/planeset.hpp"

namespace planefn {

/// Shortest-path length inside a Region approximated on a pixel grid.
///
/// Pixels whose centre lies in the set are free.  Moves use every primitive
/// offset (dx, dy) with |dx|, |dy| <= 5 and require every pixel touched by the
/// segment between the two centres to be free, so the direction error is
/// below half a percent.  Paths start at free pixels within three pixels of z
/// (charged their Euclidean distance to z) and end near w the same way.
/// Independent of the visibility-graph engine; used as a cross-check.
double raster_geodesic(const PlaneSet& set, Point z, Point w, double pixel);

}  // namespace planefn
