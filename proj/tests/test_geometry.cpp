#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lemon/errors.hpp"
#include "lemon/geometry.hpp"
#include "lemon/io.hpp"

#include <cmath>

using namespace lemon;

TEST_CASE("table construction") {
    Table t(1.6);
    CHECK(t.corner_angle == doctest::Approx(std::acos(0.8)).epsilon(1e-15));
    CHECK(t.o_right.x == 1.6);
    CHECK_THROWS_AS(Table(2.5), std::invalid_argument);
    CHECK_THROWS_AS(Table(-0.1), std::invalid_argument);
}

TEST_CASE("base points lie on the carrying circles") {
    Table t(1.55);
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        double phi = rng.uniform(-t.corner_angle, t.corner_angle);
        // right arc is carried by the circle centered at o_left
        Vec2 pr = base_point(t, {ArcId::Right, phi, 1.0});
        CHECK(pr.norm() == doctest::Approx(1.0).epsilon(1e-14));
        Vec2 pl = base_point(t, {ArcId::Left, phi, 1.0});
        CHECK((pl - t.o_right).norm() == doctest::Approx(1.0).epsilon(1e-14));
        // phi > 0 means positive y on both arcs
        if (phi > 0.0) {
            CHECK(pr.y > 0.0);
            CHECK(pl.y > 0.0);
        }
    }
}

TEST_CASE("line coordinates: heading relation and orientation reversal") {
    Table t(1.62);
    Rng rng(8);
    for (int i = 0; i < 500; ++i) {
        AngularState s{rng.uniform() < 0.5 ? ArcId::Left : ArcId::Right,
                       rng.uniform(-0.95 * t.corner_angle, 0.95 * t.corner_angle),
                       rng.uniform(0.05, pi() - 0.05)};
        LineState l = angular_to_line(t, s);
        double beta = heading_angle(s);
        CHECK(std::sin(beta) == doctest::Approx((l.d_right - l.d_left) / t.b).epsilon(1e-12));
        LineState lr = angular_to_line(t, s, false);
        CHECK(lr.d_left == doctest::Approx(-l.d_left).epsilon(1e-15));
        CHECK(lr.d_right == doctest::Approx(-l.d_right).epsilon(1e-15));
    }
}

TEST_CASE("angular -> line -> angular round trip") {
    Table t(1.58);
    Rng rng(9);
    int tested = 0;
    for (int i = 0; i < 500; ++i) {
        AngularState s{rng.uniform() < 0.5 ? ArcId::Left : ArcId::Right,
                       rng.uniform(-0.9 * t.corner_angle, 0.9 * t.corner_angle),
                       rng.uniform(0.1, pi() - 0.1)};
        LineState l = angular_to_line(t, s);
        bool leftward = std::cos(heading_angle(s)) <= 0.0;
        std::vector<IntersectionRecord> recs;
        try {
            recs = line_to_angular(t, l, s.arc, leftward);
        } catch (const CornerHit&) {
            continue;
        }
        // one of the two intersections reproduces the state
        bool found = false;
        for (const auto& r : recs)
            if (!r.reversed && std::abs(r.state.phi - s.phi) < 1e-10 &&
                std::abs(r.state.theta - s.theta) < 1e-10)
                found = true;
        CHECK(found);
        ++tested;
    }
    CHECK(tested > 400);
}

TEST_CASE("line_to_angular: outgoing and incoming intersections pair up") {
    Table t(1.6);
    LineState l{0.2, 0.3};
    auto recs = line_to_angular(t, l, ArcId::Right);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].reversed != recs[1].reversed);
    for (const auto& r : recs) {
        CHECK(r.point.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.state.theta > 0.0);
        CHECK(r.state.theta < pi());
    }
}

TEST_CASE("line_to_angular throws NoIntersection for far lines") {
    Table t(1.6);
    CHECK_THROWS_AS(line_to_angular(t, LineState{1.2, 1.2 + 0.1}, ArcId::Right),
                    NoIntersection);
}

TEST_CASE("wrap_angle") {
    CHECK(wrap_angle(3 * pi()) == doctest::Approx(pi()).epsilon(1e-12));
    CHECK(wrap_angle(-0.1) == doctest::Approx(-0.1));
    CHECK(wrap_angle(2 * pi() + 0.3) == doctest::Approx(0.3).epsilon(1e-12));
}
