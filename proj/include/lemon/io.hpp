#pragma once

// Output plumbing: 17-significant-digit number formatting, CSV and SVG
// writers, a platform-independent seedable RNG, and phase-portrait
// generation.

#include "lemon/types.hpp"

#include <cstdint>
#include <ostream>
#include <random>

namespace lemon {

// round-trip exact decimal representation
std::string fmt17(double x);

// mt19937_64 with the raw 53-bit uniform construction; std::uniform_*
// distributions are not guaranteed to produce identical streams across
// standard libraries
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return (eng() >> 11) * 0x1.0p-53; } // in [0,1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

struct PhaseSample {
    int traj_id;
    int step;
    double phi;
    double theta;
};

struct PhasePortrait {
    std::vector<PhaseSample> samples; // right-arc visits only
    std::vector<char> corner_hit;     // per trajectory: ended early on a corner
};

// Random initial conditions on the right arc, `iterations` billiard steps
// each; only right-arc states are recorded.
PhasePortrait phase_portrait(const Table& t, std::uint64_t seed, int n_traj, int iterations);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// fixed-viewBox scatter plot, no text elements
void write_svg_scatter(std::ostream& os, const std::vector<Vec2>& pts, double x_lo, double x_hi,
                       double y_lo, double y_hi);

} // namespace lemon
