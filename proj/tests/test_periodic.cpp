#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lemon/billiard.hpp"
#include "lemon/errors.hpp"
#include "lemon/genmap.hpp"
#include "lemon/periodic.hpp"

#include <cmath>

using namespace lemon;

TEST_CASE("elliptic half trace: both closed forms, degenerate endpoint") {
    CHECK(elliptic_half_trace(1.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(elliptic_half_trace_rational(1.5) == doctest::Approx(1.0).epsilon(1e-12));
    for (double b : {1.52, 1.6, 1.63, 1.7}) {
        CHECK(elliptic_half_trace(b) ==
              doctest::Approx(elliptic_half_trace_rational(b)).epsilon(1e-12));
    }
}

TEST_CASE("classification against the critical parameter") {
    double bc = find_b_crit();
    CHECK(bc == doctest::Approx(1.634765).epsilon(1e-5));
    CHECK(elliptic_half_trace(bc) == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(classify_half_trace(elliptic_half_trace(bc - 0.01)) == Classification::Elliptic);
    CHECK(classify_half_trace(elliptic_half_trace(bc + 0.01)) == Classification::Hyperbolic);
    CHECK(classify_half_trace(1.0 + 1e-15) == Classification::Parabolic);
}

TEST_CASE("period-6 fixed points of Theta") {
    for (double b : {1.52, 1.58, 1.65}) {
        Table t(b);
        LineState e0 = point_E0(b);
        LineState p0 = point_P0(b);
        LineState q0 = point_Q0(b);
        CHECK(apply(t, GenMapKind::Theta, e0).dist(e0) < 1e-12);
        CHECK(apply(t, GenMapKind::Theta, p0).dist(p0) < 1e-12);
        CHECK(apply(t, GenMapKind::Theta, q0).dist(q0) < 1e-12);
        // I conjugates the two hyperbolic points
        CHECK(apply(t, GenMapKind::I, p0).dist(q0) == 0.0);
    }
}

TEST_CASE("hyperbolic orbit advances under alternating arc reflections") {
    Table t(1.6);
    PeriodicOrbit o = orbit_hyperbolic6(t);
    REQUIRE(o.points_line.size() == 6);
    double p = point_P0(t.b).d_right;
    // {(0,p), (-p,p), (-p,0), (p,0), (p,-p), (0,-p)}
    LineState expect[6] = {{0, p}, {-p, p}, {-p, 0}, {p, 0}, {p, -p}, {0, -p}};
    for (int i = 0; i < 6; ++i) CHECK(o.points_line[i].dist(expect[i]) < 1e-12);
    for (int i = 0; i < 6; ++i) {
        GenMapKind k = (i % 2 == 0) ? GenMapKind::L : GenMapKind::R;
        LineState nxt = apply(t, k, o.points_line[i]);
        CHECK(nxt.dist(o.points_line[(i + 1) % 6]) < 1e-12);
    }
    CHECK(o.classification == Classification::Hyperbolic);
}

TEST_CASE("hyperbolic half-trace closed form matches the 3-step tangent map") {
    for (double b : {1.52, 1.6, 1.7}) {
        Table t(b);
        PeriodicOrbit o = orbit_hyperbolic6(t);
        REQUIRE(o.points_angular.has_value());
        // retracing orbit: the closed form describes the half orbit
        Mat2 m = Mat2::identity();
        AngularState x = (*o.points_angular)[0];
        for (int i = 0; i < 3; ++i) {
            ReflectionStep s = billiard_step(t, x);
            m = tangent_map(s) * m;
            x = s.to;
        }
        CHECK(0.5 * m.trace() - 1.0 ==
              doctest::Approx(hyperbolic_half_trace_minus_1(b)).epsilon(1e-9));
    }
}

TEST_CASE("eigendata describes the square-root factor of D Theta") {
    Table t(1.6);
    HyperbolicEigendata e = hyperbolic_eigendata(t);
    CHECK(e.lambda_s * e.lambda_u == doctest::Approx(1.0).epsilon(1e-12));
    Mat2 j = jacobian(t, GenMapKind::Theta, point_P0(t.b));
    // eigenvalues of D Theta at P0 are the squares of lambda_s, lambda_u
    double tr = j.trace();
    CHECK(j.det() == doctest::Approx(1.0).epsilon(1e-9));
    double lu2 = 0.5 * (tr + std::sqrt(tr * tr - 4.0));
    CHECK(lu2 == doctest::Approx(e.lambda_u * e.lambda_u).epsilon(1e-9));
    // eigenvector slopes of D Theta match the eigendata slopes
    auto eig_slope = [&](double lam) { return (lam - j.a11) / j.a12; };
    CHECK(eig_slope(lu2) == doctest::Approx(e.slope_u).epsilon(1e-8));
    CHECK(eig_slope(1.0 / lu2) == doctest::Approx(e.slope_s).epsilon(1e-8));
    // spot values at b = 1.6
    CHECK(e.lambda_u == doctest::Approx(1.943170).epsilon(1e-5));
    CHECK(e.slope_s == doctest::Approx(-0.079961).epsilon(1e-4));
    CHECK(e.slope_u == doctest::Approx(-0.753008).epsilon(1e-4));
}

TEST_CASE("O2 orbit data") {
    Table t(1.6);
    PeriodicOrbit o = orbit_O2(t);
    CHECK(o.period == 2);
    CHECK(o.multiplier_half_trace ==
          doctest::Approx(2.0 * (t.b - 1.0) * (t.b - 1.0) - 1.0).epsilon(1e-10));
    CHECK(o.classification == Classification::Elliptic);
}

TEST_CASE("newton fixed-point finder") {
    Table t(1.56);
    LineState e0 = point_E0(t.b);
    LineState r = newton_fixed_point(t, GenMapKind::Theta, {e0.d_left + 0.01, e0.d_right - 0.008});
    CHECK(r.dist(e0) < 1e-10);
    LineState p0 = point_P0(t.b);
    LineState rp = newton_fixed_point(t, GenMapKind::Theta, {p0.d_left + 0.005, p0.d_right + 0.01});
    CHECK(rp.dist(p0) < 1e-10);
    LineState ro = newton_fixed_point(t, GenMapKind::Theta, {0.01, -0.01});
    CHECK(ro.dist({0.0, 0.0}) < 1e-10);
}

TEST_CASE("closed-form Psi jacobians against finite differences") {
    for (double b : {1.53, 1.61}) {
        Table t(b);
        struct Pair {
            LineState at;
            Mat2 closed;
        } cases[2] = {{point_E0(b), psi_jacobian_E0(b)}, {point_Q0(b), psi_jacobian_Q0(b)}};
        for (const auto& c : cases) {
            double h = 1e-6;
            LineState xp = apply(t, GenMapKind::Psi, {c.at.d_left + h, c.at.d_right});
            LineState xm = apply(t, GenMapKind::Psi, {c.at.d_left - h, c.at.d_right});
            LineState yp = apply(t, GenMapKind::Psi, {c.at.d_left, c.at.d_right + h});
            LineState ym = apply(t, GenMapKind::Psi, {c.at.d_left, c.at.d_right - h});
            Mat2 fd{(xp.d_left - xm.d_left) / (2 * h), (yp.d_left - ym.d_left) / (2 * h),
                    (xp.d_right - xm.d_right) / (2 * h), (yp.d_right - ym.d_right) / (2 * h)};
            Mat2 d = c.closed - fd;
            double err = std::max(std::max(std::abs(d.a11), std::abs(d.a12)),
                                  std::max(std::abs(d.a21), std::abs(d.a22)));
            CHECK(err < 1e-4);
        }
    }
}
