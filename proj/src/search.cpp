#include "lemon/search.hpp"

#include "lemon/errors.hpp"
#include "lemon/periodic.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lemon {

namespace {

constexpr double dedup_radius = 1e-8;

std::optional<LineState> run_seed(const Table& t, const SearchRegion& region, double margin,
                                  double sx, double sy) {
    if (!in_domain(t, {sx, sy})) return std::nullopt;
    LineState root;
    try {
        root = newton_fixed_point(t, GenMapKind::Theta, {sx, sy}, 1e-12);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (root.d_left < region.x_lo - margin || root.d_left > region.x_hi + margin ||
        root.d_right < region.y_lo - margin || root.d_right > region.y_hi + margin)
        return std::nullopt;
    return root;
}

std::vector<LineState> merge(std::vector<std::optional<LineState>>& slots) {
    std::vector<LineState> roots;
    for (const auto& r : slots) {
        if (!r) continue;
        bool dup = false;
        for (const auto& q : roots)
            if (q.dist(*r) < dedup_radius) {
                dup = true;
                break;
            }
        if (!dup) roots.push_back(*r);
    }
    std::sort(roots.begin(), roots.end(), [](const LineState& a, const LineState& b) {
        return a.d_left != b.d_left ? a.d_left < b.d_left : a.d_right < b.d_right;
    });
    return roots;
}

} // namespace

std::vector<LineState> exhaustive_theta_fixed_points_serial(const Table& t,
                                                            const SearchRegion& region, int grid,
                                                            double margin) {
    if (grid < 1) return {};
    std::vector<std::optional<LineState>> slots(size_t(grid) * grid);
    for (int i = 0; i < grid; ++i) {
        double sx = region.x_lo + (region.x_hi - region.x_lo) * (grid == 1 ? 0.5 : i / double(grid - 1));
        for (int j = 0; j < grid; ++j) {
            double sy =
                region.y_lo + (region.y_hi - region.y_lo) * (grid == 1 ? 0.5 : j / double(grid - 1));
            slots[size_t(i) * grid + j] = run_seed(t, region, margin, sx, sy);
        }
    }
    return merge(slots);
}

std::vector<LineState> exhaustive_theta_fixed_points(const Table& t, const SearchRegion& region,
                                                     int grid, double margin) {
    if (grid < 1) return {};
    std::vector<std::optional<LineState>> slots(size_t(grid) * grid);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < grid; ++i) {
        double sx = region.x_lo + (region.x_hi - region.x_lo) * (grid == 1 ? 0.5 : i / double(grid - 1));
        for (int j = 0; j < grid; ++j) {
            double sy =
                region.y_lo + (region.y_hi - region.y_lo) * (grid == 1 ? 0.5 : j / double(grid - 1));
            slots[size_t(i) * grid + j] = run_seed(t, region, margin, sx, sy);
        }
    }
    return merge(slots);
}

} // namespace lemon
