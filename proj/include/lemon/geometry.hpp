#pragma once

// Coordinate charts between angular boundary states and oriented-line
// (d_left, d_right) coordinates on the lemon table.

#include "lemon/types.hpp"

namespace lemon {

// Base point of a boundary state in the plane.
Vec2 base_point(const Table& t, const AngularState& x);

// Angle of the positively oriented boundary tangent at the state's base
// point (boundary traversed counterclockwise, table on the left).
double tangent_angle(const AngularState& x);

// Heading angle of the outgoing direction of x.
double heading_angle(const AngularState& x);

// Unit direction of the outgoing trajectory of x.
Vec2 direction(const AngularState& x);

// Signed distances from both centers to the trajectory line of x.  With
// outgoing = false the orientation is reversed (both signs flip).
LineState angular_to_line(const Table& t, const AngularState& x, bool outgoing = true);

// Signed distances from both centers to the oriented line through point p
// with unit direction u.
LineState line_coords(const Table& t, const Vec2& p, const Vec2& u);

// One boundary intersection of an oriented line with the circle carrying
// the requested arc.  If reversed is true the line leaves the disk at this
// point and `state` describes the reversed orientation (so that theta stays
// in (0, pi)).
struct IntersectionRecord {
    AngularState state;
    Vec2 point;
    bool on_arc;    // |phi| < corner_angle
    bool reversed;
};

// Both intersections of the line with the circle carrying `arc`.  The
// two-fold direction ambiguity of (d_left, d_right) is resolved by the
// leftward flag: heading cos(beta) <= 0 when true.  Throws NoIntersection
// when |d| >= 1 for that side, CornerHit when an intersection falls within
// tol_corner of a corner.
std::vector<IntersectionRecord> line_to_angular(const Table& t, const LineState& l, ArcId arc,
                                                bool leftward = false);

// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

} // namespace lemon
