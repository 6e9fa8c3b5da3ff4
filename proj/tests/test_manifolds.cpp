#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lemon/genmap.hpp"
#include "lemon/manifolds.hpp"
#include "lemon/periodic.hpp"
#include "lemon/polyline.hpp"

#include <cmath>

using namespace lemon;

TEST_CASE("branch growth: seed, gaps, self-consistency under the map") {
    Table t(1.54);
    GrowOptions opt;
    ManifoldBranch br = grow_branch(t, BranchBase::Q0, BranchKind::Unstable,
                                    BranchSide::PlusQuadrant, 1.2, opt);
    REQUIRE(br.polyline.points.size() > 100);
    // first vertex sits at the seed offset from the base point
    CHECK(br.polyline.points.front().dist(br.base) ==
          doctest::Approx(opt.seed_offset).epsilon(1e-6));
    // vertex spacing honors the gap bound
    const auto& pts = br.polyline.points;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        CHECK(pts[i].dist(pts[i + 1]) <= opt.max_gap * 1.0001);
    // measured expansion along the eigen-direction is lambda_u^2
    HyperbolicEigendata e = hyperbolic_eigendata(t);
    CHECK(br.expansion == doctest::Approx(e.lambda_u * e.lambda_u).epsilon(1e-2));
    // the polyline is invariant: map images of early vertices stay on it
    size_t n_chk = pts.size() * 3 / 5;
    for (size_t i = 0; i < n_chk; i += 7) {
        auto img = try_apply(t, br.map_kind(), pts[i]);
        REQUIRE(img.has_value());
        CHECK(point_polyline_distance(*img, pts) < opt.interp_tol);
    }
}

TEST_CASE("stable branch at P0 uses the inverse map and contracts forward") {
    Table t(1.54);
    ManifoldBranch br = grow_branch(t, BranchBase::P0, BranchKind::Stable,
                                    BranchSide::PlusQuadrant, 1.2, GrowOptions{});
    CHECK(br.map_kind() == GenMapKind::ThetaInv);
    // a point of the stable set approaches P0 under forward Theta: after
    // its generation count of steps it is back on the seed segment
    size_t i = br.polyline.points.size() / 5;
    LineState x = br.polyline.points[i];
    double prev = x.dist(br.base);
    for (int k = 0; k < br.gen[i]; ++k) {
        x = apply(t, GenMapKind::Theta, x);
        double d = x.dist(br.base);
        CHECK(d < prev * 1.001);
        prev = d;
    }
    CHECK(x.dist(br.base) < 1e-5);
}

TEST_CASE("swap symmetry between the stable and unstable branches") {
    Table t(1.54);
    ManifoldBranch gs = grow_branch(t, BranchBase::P0, BranchKind::Stable,
                                    BranchSide::PlusQuadrant, 1.0, GrowOptions{});
    ManifoldBranch gu = grow_branch(t, BranchBase::Q0, BranchKind::Unstable,
                                    BranchSide::PlusQuadrant, 1.0, GrowOptions{});
    // I conjugates Theta to ThetaInv, so the swapped stable branch is the
    // unstable branch at the swapped base
    for (size_t i = 0; i < gs.polyline.points.size(); i += 23) {
        LineState sw{gs.polyline.points[i].d_right, gs.polyline.points[i].d_left};
        CHECK(point_polyline_distance(sw, gu.polyline.points) < 1e-6);
    }
}

TEST_CASE("diagonal crossing and splitting report") {
    Table t(1.54);
    SplittingReport r = splitting(t, GrowOptions{});
    // both crossings sit on the diagonal
    CHECK(std::abs(r.crossing_s.d_left - r.crossing_s.d_right) < 1e-9);
    CHECK(std::abs(r.crossing_u.d_left - r.crossing_u.d_right) < 1e-9);
    CHECK(r.angle_s > 0.0);
    CHECK(r.angle_u > 0.0);
    CHECK(r.delta == doctest::Approx(std::sqrt(2.0) *
                                     (r.crossing_s.d_left - r.crossing_u.d_left))
                         .epsilon(1e-12));
    // by the swap symmetry the two crossings mirror each other
    CHECK(std::abs(r.angle_s - r.angle_u) < 1e-6);

    // determinism
    SplittingReport r2 = splitting(t, GrowOptions{});
    CHECK(r2.delta == r.delta);
}

TEST_CASE("short budget yields no diagonal crossing") {
    Table t(1.54);
    ManifoldBranch br = grow_branch(t, BranchBase::Q0, BranchKind::Unstable,
                                    BranchSide::PlusQuadrant, 0.05, GrowOptions{});
    CHECK_FALSE(diagonal_crossing(t, br).has_value());
}

TEST_CASE("branch keeps clear of the invariant and singular curves") {
    Table t(1.55);
    ManifoldBranch br = grow_branch(t, BranchBase::Q0, BranchKind::Unstable,
                                    BranchSide::PlusQuadrant, 1.0, GrowOptions{});
    AvoidanceReport rep = branch_avoids_curves(t, br);
    CHECK(rep.dist_C_prl > 0.0);
    for (double d : rep.dist_singular) CHECK(d > 1e-4);
}

TEST_CASE("the two sides of a branch point in opposite directions") {
    Table t(1.54);
    ManifoldBranch plus = grow_branch(t, BranchBase::P0, BranchKind::Unstable,
                                      BranchSide::PlusQuadrant, 0.2, GrowOptions{});
    ManifoldBranch other = grow_branch(t, BranchBase::P0, BranchKind::Unstable,
                                       BranchSide::Other, 0.2, GrowOptions{});
    CHECK(plus.dir.d_left > 0.0);
    CHECK(other.dir.d_left < 0.0);
    CHECK(plus.dir.d_left == doctest::Approx(-other.dir.d_left).epsilon(1e-12));
}
