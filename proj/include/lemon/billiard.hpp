#pragma once

// The billiard map on the lemon table in angular coordinates, its tangent
// map, mirror-equation focusing, and rotation data of the axis period-2
// orbit.

#include "lemon/geometry.hpp"
#include "lemon/types.hpp"

namespace lemon {

// One application of the billiard map: outgoing state, landing state,
// chord length L, and the focusing half-chords d = sin(theta) at both ends.
struct ReflectionStep {
    AngularState from;
    AngularState to;
    double chord_length;
    double d_from;
    double d_to;
};

// Propagate the ray of x to its next reflection.  Candidate intersections
// from both circles are filtered to the lemon arcs; the smallest positive
// travel parameter wins.  Throws CornerHit when the landing point falls
// within tol_corner of a corner, or when two on-boundary candidates tie
// within 1e-14.
ReflectionStep billiard_step(const Table& t, const AngularState& x);

// Tangent map of one step (unit curvature arcs):
//   (1/d_to) [[L - d_from, L], [L - d_from - d_to, L - d_to]].
Mat2 tangent_map(const ReflectionStep& step);

// Mirror equation at the step's landing point, in curvature form:
// returns kappa_plus = 2/d_to - kappa_minus, where kappa = 1/f and the
// value 0 encodes f = infinity.
double propagate_focus(const ReflectionStep& step, double kappa_minus);

// Free travel of the focusing state over a chord of length L:
// f_minus_next = L - f_plus, i.e. kappa_next = kappa/(L*kappa - 1).
double transport_focus(double chord_length, double kappa_plus);

// Linearized rotation angle of F_b^2 at the axis period-2 orbit:
// arccos(2(1-b)^2 - 1).  Requires 1 < b < 2.
double rotation_angle_O2(const Table& t);

// Average angular advance (in full turns) of the (phi, theta) displacement
// from `center` per F_b^2 step, over n_iter double steps starting at
// `start`.  Throws OrbitEscaped when the orbit leaves `escape_radius`
// around the center in the (phi, theta) plane.
double estimate_rotation_number(const Table& t, const AngularState& center,
                                const AngularState& start, int n_iter,
                                double escape_radius = 0.5);

// The two angular states of the axis period-2 orbit.
AngularState o2_state_right();
AngularState o2_state_left();

// Angular state at boundary point `from` directed toward `to`.  Throws if
// `from` is not on either arc of the table.
AngularState state_through(const Table& t, const Vec2& from, const Vec2& to);

} // namespace lemon
