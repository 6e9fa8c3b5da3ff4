#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lemon/errors.hpp"
#include "lemon/genmap.hpp"
#include "lemon/io.hpp"
#include "lemon/periodic.hpp"

#include <cmath>

using namespace lemon;

namespace {

// keep samples away from the singular curves and the square boundary so
// that round trips are not limited by representation error
bool clear_of_singular(const Table& t, const LineState& l, double margin = 1e-3) {
    double x = l.d_left, y = l.d_right;
    if (std::abs(x) > 1.0 - margin || std::abs(y) > 1.0 - margin) return false;
    double e[4] = {x - y - t.b * (1.0 - 2.0 * y * y), x - y + t.b * (1.0 - 2.0 * y * y),
                   y - x - t.b * (1.0 - 2.0 * x * x), y - x + t.b * (1.0 - 2.0 * x * x)};
    for (double v : e)
        if (std::abs(v) < margin) return false;
    return true;
}

Mat2 fd_jac(const Table& t, GenMapKind k, const LineState& l, double h = 1e-6) {
    LineState xp = apply(t, k, {l.d_left + h, l.d_right});
    LineState xm = apply(t, k, {l.d_left - h, l.d_right});
    LineState yp = apply(t, k, {l.d_left, l.d_right + h});
    LineState ym = apply(t, k, {l.d_left, l.d_right - h});
    return {(xp.d_left - xm.d_left) / (2 * h), (yp.d_left - ym.d_left) / (2 * h),
            (xp.d_right - xm.d_right) / (2 * h), (yp.d_right - ym.d_right) / (2 * h)};
}

} // namespace

TEST_CASE("involutions and conjugation identities") {
    Table t(1.6);
    Rng rng(55);
    int tested = 0;
    while (tested < 2000) {
        LineState l{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        if (!clear_of_singular(t, l) || !in_domain(t, l)) continue;
        LineState ll = apply(t, GenMapKind::L, apply(t, GenMapKind::L, l));
        CHECK(ll.dist(l) < 1e-11);
        LineState rr = apply(t, GenMapKind::R, apply(t, GenMapKind::R, l));
        CHECK(rr.dist(l) < 1e-11);
        // I R I = L
        LineState iri = apply(t, GenMapKind::I,
                              apply(t, GenMapKind::R, apply(t, GenMapKind::I, l)));
        CHECK(iri.dist(apply(t, GenMapKind::L, l)) < 1e-11);
        // central symmetry: L(-l) = -L(l)
        LineState neg = apply(t, GenMapKind::L, -l);
        CHECK(neg.dist(-apply(t, GenMapKind::L, l)) < 1e-11);
        ++tested;
    }
}

TEST_CASE("jacobians match finite differences; involution jacobian product is I") {
    Table t(1.56);
    Rng rng(56);
    int tested = 0;
    while (tested < 200) {
        LineState l{rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)};
        if (!clear_of_singular(t, l, 5e-3) || !in_domain(t, l)) continue;
        for (GenMapKind k : {GenMapKind::L, GenMapKind::R, GenMapKind::Phi}) {
            Mat2 a = jacobian(t, k, l);
            Mat2 f = fd_jac(t, k, l);
            Mat2 d = a - f;
            double err = std::max(std::max(std::abs(d.a11), std::abs(d.a12)),
                                  std::max(std::abs(d.a21), std::abs(d.a22)));
            CHECK(err < 2e-5);
        }
        // chain rule: Jac L(L(l)) * Jac L(l) = identity
        Mat2 j1 = jacobian(t, GenMapKind::L, l);
        Mat2 j2 = jacobian(t, GenMapKind::L, apply(t, GenMapKind::L, l));
        Mat2 p = j2 * j1;
        CHECK(std::abs(p.a11 - 1.0) < 1e-9);
        CHECK(std::abs(p.a22 - 1.0) < 1e-9);
        CHECK(std::abs(p.a12) < 1e-9);
        CHECK(std::abs(p.a21) < 1e-9);
        ++tested;
    }
}

TEST_CASE("spot value at b_max") {
    Table t(1.0 + std::sqrt(0.5));
    LineState out = apply(t, GenMapKind::L, {0.6, 0.6});
    CHECK(out.d_left == doctest::Approx(-1.03882).epsilon(1e-4));
    CHECK(out.d_right == 0.6);
}

TEST_CASE("singular curves of the left map") {
    Table t(1.6);
    // S_{1,+} maps onto the branched locus d_r - d_l = b, and the partial
    // d(d_l')/d(d_l) vanishes there
    CurveTrace s1 = singular_curve(t, SingularCurveId::S1plus, 101);
    for (size_t i = 1; i + 1 < s1.points.size(); ++i) {
        const LineState& p = s1.points[i];
        LineState img = apply(t, GenMapKind::L, p);
        CHECK(std::abs((img.d_right - img.d_left) - t.b) < 1e-10);
        double h = 1e-5;
        double gp = apply(t, GenMapKind::L, {p.d_left + h, p.d_right}).d_left;
        double gm = apply(t, GenMapKind::L, {p.d_left - h, p.d_right}).d_left;
        CHECK(std::abs((gp - gm) / (2 * h)) < 1e-7);
        CHECK(std::abs(dL_ddl(t, p)) < 1e-12);
    }
    // the common corner of S_{1,+} and S_{2,+}
    LineState s0 = corner_S0();
    CHECK(s0.d_left == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(std::abs(s0.d_left - s0.d_right - t.b * (1 - 2 * s0.d_right * s0.d_right)) < 1e-14);
    CHECK(in_domain(t, {0.0, 0.0}));
    CHECK_FALSE(in_domain(t, s0));
}

TEST_CASE("fixed loci are pointwise fixed") {
    Table t(1.6);
    for (GenMapKind k : {GenMapKind::L, GenMapKind::R, GenMapKind::Phi, GenMapKind::Psi}) {
        CurveTrace fx = fixed_locus(t, k, 51);
        for (const LineState& p : fx.points) {
            if (std::abs(p.d_left) > 0.99 || std::abs(p.d_right) > 0.99) continue;
            auto img = try_apply(t, k, p);
            REQUIRE(img.has_value());
            CHECK(img->dist(p) < 1e-9);
        }
    }
}

TEST_CASE("domain errors: beyond the branched locus and outside the strip") {
    Table t(1.6);
    // |d_r - d_l| > b: chord direction does not exist
    CHECK_THROWS_AS(apply_L(t, {-0.9, 0.8}), Branched);
    // |d_r| > 1: the line misses the left arc's carrying circle
    CHECK_THROWS_AS(apply_L(t, {0.0, 1.1}), OutOfDomain);
    CHECK_FALSE(try_apply(t, GenMapKind::L, {-0.9, 0.8}).has_value());
}

TEST_CASE("Theta and ThetaInv invert each other") {
    Table t(1.58);
    LineState p = point_P0(t.b);
    LineState q{0.1, -0.05};
    LineState r = apply(t, GenMapKind::ThetaInv, apply(t, GenMapKind::Theta, q));
    CHECK(r.dist(q) < 1e-11);
    CHECK(apply(t, GenMapKind::Theta, p).dist(p) < 1e-12);
}

TEST_CASE("monotonicity witness vanishes on the diagonal fixed point of Theta") {
    Table t(1.6);
    LineState e0 = point_E0(t.b);
    // E0 is on the invariant curve of Phi, so the witness is zero there
    CHECK(std::abs(monotonicity_witness(t, e0)) < 1e-10);
}
