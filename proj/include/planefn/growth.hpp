#pragma once

#include <span>
#include <vector>

namespace planefn {

/// Decision rule for "this finite sequence is growing without bound".
///
/// A sequence is diverging when it has at least `min_points` positive finite
/// terms, the least-squares slope of log(value) against log(index) over the
/// final half of those terms exceeds `slope_threshold`, and the largest term
/// exceeds `growth_factor` times the median term.
struct GrowthConfig {
    double slope_threshold = 0.1;
    double growth_factor = 1.5;
    int min_points = 4;
};

struct GrowthVerdict {
    bool diverging = false;
    double slope = 0.0;            ///< tail-half log-log slope
    double max_over_median = 0.0;
    int points = 0;                ///< positive terms used
};

GrowthVerdict assess_growth(std::span<const double> values, std::span<const double> index,
                            const GrowthConfig& config = {});

/// Convenience overload with index 1, 2, ..., n.
GrowthVerdict assess_growth(std::span<const double> values, const GrowthConfig& config = {});

/// Least-squares slope of log(y) against log(x); NaN with fewer than two points.
double loglog_slope(std::span<const double> x, std::span<const double> y);

std::vector<double> running_max(std::span<const double> values);

}  // namespace planefn
