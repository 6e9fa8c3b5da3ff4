#pragma once

// Small polyline helpers shared by the manifold and verification code.

#include "lemon/types.hpp"

#include <algorithm>
#include <limits>

namespace lemon {

inline double point_segment_distance(const LineState& p, const LineState& a, const LineState& b) {
    double ux = b.d_left - a.d_left, uy = b.d_right - a.d_right;
    double wx = p.d_left - a.d_left, wy = p.d_right - a.d_right;
    double n2 = ux * ux + uy * uy;
    double s = (n2 > 0.0) ? std::clamp((wx * ux + wy * uy) / n2, 0.0, 1.0) : 0.0;
    return std::hypot(wx - s * ux, wy - s * uy);
}

// distance from a point to a polyline (segments, not just vertices)
inline double point_polyline_distance(const LineState& p, const std::vector<LineState>& poly) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return p.dist(poly[0]);
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < poly.size(); ++i)
        best = std::min(best, point_segment_distance(p, poly[i - 1], poly[i]));
    return best;
}

// one-sided Hausdorff-type distance: max over sample points of the
// distance to the polyline
inline double max_deviation(const std::vector<LineState>& samples,
                            const std::vector<LineState>& poly) {
    double worst = 0.0;
    for (const auto& p : samples) worst = std::max(worst, point_polyline_distance(p, poly));
    return worst;
}

inline double min_polyline_distance(const std::vector<LineState>& a,
                                    const std::vector<LineState>& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a) best = std::min(best, point_polyline_distance(p, b));
    for (const auto& p : b) best = std::min(best, point_polyline_distance(p, a));
    return best;
}

} // namespace lemon
