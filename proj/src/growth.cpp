#include "planefn/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "planefn/errors.hpp"

namespace planefn {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ParameterError("loglog_slope: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx, dy = std::log(y[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / sxx;
}

std::vector<double> running_max(std::span<const double> values) {
    std::vector<double> out;
    out.reserve(values.size());
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (std::isfinite(v)) m = std::max(m, v);
        out.push_back(m);
    }
    return out;
}

GrowthVerdict assess_growth(std::span<const double> values, std::span<const double> index,
                            const GrowthConfig& config) {
    if (values.size() != index.size()) throw ParameterError("assess_growth: size mismatch");
    std::vector<double> v, x;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (std::isfinite(values[i]) && values[i] > 0.0 && index[i] > 0.0) {
            v.push_back(values[i]);
            x.push_back(index[i]);
        }
    GrowthVerdict out;
    out.points = static_cast<int>(v.size());
    if (out.points < std::max(2, config.min_points)) return out;
    const std::size_t half = v.size() / 2;
    out.slope = loglog_slope(std::span(x).subspan(half), std::span(v).subspan(half));
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    out.max_over_median = sorted.back() / median;
    out.diverging = std::isfinite(out.slope) && out.slope > config.slope_threshold &&
                    out.max_over_median > config.growth_factor;
    return out;
}

GrowthVerdict assess_growth(std::span<const double> values, const GrowthConfig& config) {
    std::vector<double> idx(values.size());
    std::iota(idx.begin(), idx.end(), 1.0);
    return assess_growth(values, idx, config);
}

}  // namespace planefn
