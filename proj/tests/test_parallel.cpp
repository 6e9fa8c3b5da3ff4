#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lemon/genmap.hpp"
#include "lemon/io.hpp"
#include "lemon/parallel.hpp"
#include "lemon/periodic.hpp"
#include "lemon/polyline.hpp"

#include <cmath>

using namespace lemon;

TEST_CASE("construction invariants of the three-reflection orbit") {
    Rng rng(71);
    for (int i = 0; i < 200; ++i) {
        double a = rng.uniform(0.05, 0.7);
        double be = rng.uniform(0.05, std::min(0.7, pi() / 2 - a - 0.05));
        ParallelOrbit o = build_parallel_orbit({a, be});
        // P1, P3 on the unit circle by construction; P2 on the unit circle
        // around the induced right center
        CHECK((o.p2 - o.o_right).norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(o.o_right.norm() == doctest::Approx(o.b).epsilon(1e-12));
        CHECK(o.b * o.b == doctest::Approx(b_squared(o.params)).epsilon(1e-12));
        // incoming and outgoing segments are horizontal
        CHECK(o.d_l1 == doctest::Approx(std::sin(a)).epsilon(1e-14));
        CHECK(o.d_l3 == doctest::Approx(std::sin(be)).epsilon(1e-14));
        // the two parallel chords are at equal total offset from both centers
        CHECK(o.d_l1 + o.d_l3 == doctest::Approx(o.d_r1 + o.d_r3).epsilon(1e-10));
    }
    CHECK(b_squared({0.3, 0.5}) == doctest::Approx(b_squared({0.5, 0.3})).epsilon(1e-13));
    CHECK_THROWS_AS(build_parallel_orbit({0.9, 0.9}), std::domain_error);
}

TEST_CASE("teardrop curve: parallel beams leave parallel") {
    auto pts = sample_T_curve(60);
    CHECK(pts.size() >= 50);
    for (const auto& p : pts) {
        CHECK(std::abs(F_T(p)) < 1e-9);
        CHECK(std::abs(parallel_beam_final_curvature(p)) < 1e-7);
    }
}

TEST_CASE("special angles") {
    double a0 = solve_alpha0();
    CHECK(a0 == doctest::Approx(0.663742).epsilon(1e-5));
    CHECK(std::abs(F_J({a0, a0})) < 1e-10);
    CHECK(solve_dr13_diagonal_crossing() == doctest::Approx(0.6115).epsilon(1e-3));
}

TEST_CASE("level curve of the table-distance function") {
    for (double b : {1.55, 1.64}) {
        AngleCurve c = trace_level_curve_b(b, 401);
        REQUIRE(c.points.size() >= 3);
        for (const auto& p : c.points)
            CHECK(std::sqrt(b_squared(p)) == doctest::Approx(b).epsilon(1e-7));
        // first endpoint on {alpha = 0}, last on {beta = 0}
        CHECK(std::abs(c.points.front().alpha) < 1e-12);
        CHECK(std::abs(c.points.back().beta) < 1e-12);
        // the analytic diagonal crossing survives resampling exactly
        double ad = std::acos(1.0 / (2.0 * (b - 1.0)));
        bool found = false;
        for (const auto& p : c.points)
            if (p.alpha == p.beta && std::abs(p.alpha - ad) < 1e-14) found = true;
        CHECK(found);
    }
}

TEST_CASE("H maps: endpoint identities and diagonal image") {
    double b = 1.6;
    Table t(b);
    AngleCurve c = trace_level_curve_b(b, 201);
    // H_up of the alpha = 0 endpoint is P0, of the diagonal point is E0
    CHECK(H_up(c.points.front()).dist(point_P0(b)) < 1e-9);
    double ad = std::acos(1.0 / (2.0 * (b - 1.0)));
    CHECK(H_up({ad, ad}).dist(point_E0(b)) < 1e-12);
    // H_down = I o H_up o swap
    AngleParams p{0.35, 0.5};
    LineState hu = H_up({p.beta, p.alpha});
    CHECK(H_down(p).dist({hu.d_right, hu.d_left}) < 1e-13);
}

TEST_CASE("invariant curves C_Phi / C_Psi and the witness function") {
    double b = 1.6;
    Table t(b);
    CurveTrace cphi = curve_C(t, CurveCKind::Phi, 2001);
    for (size_t i = 10; i < cphi.points.size() - 10; i += 37) {
        CHECK(std::abs(monotonicity_witness(t, cphi.points[i])) < 1e-6);
        auto img = try_apply(t, GenMapKind::Phi, cphi.points[i]);
        REQUIRE(img.has_value());
        // tolerance dominated by the polyline sagitta at this sampling
        CHECK(point_polyline_distance(*img, cphi.points) < 1e-5);
    }
    // C_Psi is the diagonal mirror of C_Phi
    CurveTrace cpsi = curve_C(t, CurveCKind::Psi, 2001);
    for (size_t i = 10; i < cpsi.points.size() - 10; i += 53) {
        LineState sw{cpsi.points[i].d_right, cpsi.points[i].d_left};
        CHECK(point_polyline_distance(sw, cphi.points) < 1e-7);
    }
}

TEST_CASE("four-arc closed curve") {
    for (double b : {1.58, 1.66}) {
        Table t(b);
        auto segs = curve_C_prl_segments(t, 400);
        REQUIRE(segs.size() == 4);
        // gamma_1 starts at P0; gamma_3 is its diagonal mirror
        CHECK(segs[0].points.front().dist(point_P0(b)) < 1e-8);
        REQUIRE(segs[0].points.size() == segs[2].points.size());
        for (size_t i = 0; i < segs[0].points.size(); i += 19) {
            LineState sw{segs[0].points[i].d_right, segs[0].points[i].d_left};
            CHECK(sw.dist(segs[2].points[i]) < 1e-12);
        }
        if (b < find_b_crit()) {
            // below the critical parameter both upper arcs end at E0
            CHECK(segs[0].points.back().dist(point_E0(b)) < 1e-8);
            CHECK(segs[1].points.back().dist(point_E0(b)) < 1e-8);
        } else {
            // above it they end at the Phi-related pair E1, E2
            auto j = level_curve_J_intersection(b);
            REQUIRE(j.has_value());
            LineState e1 = segs[0].points.back();
            LineState e2 = segs[1].points.back();
            CHECK(apply(t, GenMapKind::Phi, e1).dist(e2) < 1e-7);
        }
    }
}

TEST_CASE("endpoint slopes order") {
    for (double b : {1.55, 1.6, 1.65}) {
        Table t(b);
        EndpointSlopes s = endpoint_slopes(t);
        HyperbolicEigendata e = hyperbolic_eigendata(t);
        CHECK(e.slope_u < s.m_down);
        CHECK(s.m_down < s.m_up);
        CHECK(s.m_up < e.slope_s);
        CHECK(e.slope_s < 0.0);
    }
}
