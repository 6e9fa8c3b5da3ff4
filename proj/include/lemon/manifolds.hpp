#pragma once

// Stable/unstable branches of the hyperbolic period-6 fixed points P0 and
// Q0 of Theta_b, diagonal-crossing detection, and the separatrix-splitting
// measurement.

#include "lemon/genmap.hpp"
#include "lemon/periodic.hpp"
#include "lemon/types.hpp"

#include <optional>

namespace lemon {

enum class BranchKind { Stable, Unstable };
enum class BranchSide { PlusQuadrant, Other };
enum class BranchBase { P0, Q0 };

struct ManifoldBranch {
    LineState base;
    BranchBase base_id;
    BranchKind kind;
    BranchSide side;
    CurveTrace polyline;
    // per-vertex bookkeeping for exact refinement: point i is
    // map^gen[i](base + seed_param[i] * dir)
    std::vector<double> seed_param;
    std::vector<int> gen;
    LineState dir;  // unit eigen-direction, side sign included
    double seed_offset;
    int growth_steps;
    bool truncated{false};
    double expansion; // measured linearized expansion per map application

    GenMapKind map_kind() const {
        return kind == BranchKind::Unstable ? GenMapKind::Theta : GenMapKind::ThetaInv;
    }
    // reconstruct a manifold point from its (seed parameter, generation) pair
    LineState eval(const Table& t, double s, int k) const;
};

struct GrowOptions {
    double seed_offset = 1e-7;
    double max_gap = 1e-3;
    double interp_tol = 1e-6;
    int max_generations = 4000;
};

// Seeds a fundamental segment [x, M(x)] on the linear eigen-direction at
// distance seed_offset from the base (M = Theta for unstable branches,
// the exact inverse (RL)^3 for stable ones) and iterates, inserting
// midpoints whenever image spacing exceeds max_gap, until the arclength
// budget is consumed or the iteration leaves the domain (the branch is
// then returned truncated).
ManifoldBranch grow_branch(const Table& t, BranchBase base, BranchKind kind, BranchSide side,
                           double arc_length_budget, const GrowOptions& opt = {});

struct DiagonalCrossing {
    LineState point;
    double angle; // incidence angle with the diagonal, in (0, pi/2]
};

// First transversal intersection of the branch with {d_left = d_right},
// refined by bisection in the seed parameter through the iterated map.
std::optional<DiagonalCrossing> diagonal_crossing(const Table& t, const ManifoldBranch& branch);

struct SplittingReport {
    double delta; // signed diagonal distance, positive when the P0-stable
                  // crossing has larger d_left
    LineState crossing_s;
    LineState crossing_u;
    double angle_s;
    double angle_u;
};

// Grows Gamma^s_{P0,+} and Gamma^u_{Q0,+} and measures the signed
// distance along the diagonal between their crossing points.  Throws
// MissingCrossing when either branch fails to reach the diagonal.
SplittingReport splitting(const Table& t, const GrowOptions& opt = {});

struct AvoidanceReport {
    double dist_C_prl;
    double dist_singular[6]; // indexed by SingularCurveId order
};

// Minimum distance from the branch polyline to C_prl and to each singular
// curve (numeric witness of the non-intersection lemmas).
AvoidanceReport branch_avoids_curves(const Table& t, const ManifoldBranch& branch);

} // namespace lemon
