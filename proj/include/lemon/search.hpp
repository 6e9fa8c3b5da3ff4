#pragma once

// Exhaustive Theta_b-fixed-point search over a rectangle of Newton seeds.
// The OpenMP kernel and the serial reference produce identical results:
// per-seed outcomes are written to disjoint slots and merged in seed
// order afterwards.

#include "lemon/genmap.hpp"
#include "lemon/types.hpp"

#include <optional>

namespace lemon {

struct SearchRegion {
    double x_lo, x_hi;
    double y_lo, y_hi;
};

// Seeds Newton for Theta_b - id from a grid x grid lattice over the
// region, skipping seeds outside the domain predicate; converged roots
// are deduplicated within 1e-8 and returned sorted lexicographically.
// Roots drifting outside the region by more than margin are discarded.
std::vector<LineState> exhaustive_theta_fixed_points(const Table& t, const SearchRegion& region,
                                                     int grid, double margin = 0.2);

// serial reference implementation, kept for testing the parallel kernel
std::vector<LineState> exhaustive_theta_fixed_points_serial(const Table& t,
                                                            const SearchRegion& region, int grid,
                                                            double margin = 0.2);

} // namespace lemon
