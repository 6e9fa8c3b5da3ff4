#pragma once

// Explicit period-2 and period-6 orbits with closed-form stability data,
// the critical parameter b_crit, hyperbolic eigendata at P0/Q0, and a
// Newton fixed-point finder for the generalized maps.

#include "lemon/genmap.hpp"
#include "lemon/types.hpp"

#include <optional>

namespace lemon {

enum class Classification { Elliptic, Hyperbolic, Parabolic };

struct PeriodicOrbit {
    int period;
    std::vector<LineState> points_line;
    std::optional<std::vector<AngularState>> points_angular;
    double multiplier_half_trace;
    Classification classification;
};

// Half trace of the tangent map over three reflections of the elliptic
// period-6 orbit:
//   f(b) = 16b^5 - 48b^4 + 40b^3 - 4b^2 - b + 1 + b/(2b^2 - 4b + 1).
double elliptic_half_trace(double b);

// The same function as a single rational expression,
//   (32b^7 - 160b^6 + 288b^5 - 216b^4 + 54b^3 + 2b^2 - 4b + 1)/(2b^2 - 4b + 1),
// evaluated independently as a cross-check.
double elliptic_half_trace_rational(double b);

// Closed form of (half trace - 1) for the hyperbolic period-6 orbit:
//   (2b-3)(2b+3) sqrt(b^2-2) (4b^2 - 7 - 4 sqrt(b^2-2)).
double hyperbolic_half_trace_minus_1(double b);

Classification classify_half_trace(double half_trace);

// Elliptic period-6 fixed point of Theta_b on the diagonal:
// E0 = (e, e), e = sqrt(1 - 1/(4(b-1)^2)).
LineState point_E0(double b);
// Hyperbolic period-6 points: P0 = (0, p), Q0 = (p, 0),
// p = sqrt(1 - 1/(4b^2 - 8)).
LineState point_P0(double b);
LineState point_Q0(double b);

// The axis bouncing orbit between (1,0) and (b-1,0).
PeriodicOrbit orbit_O2(const Table& t);

// The elliptic period-6 orbit (requires b > 1.5).  Angular points are
// present only while the physical orbit stays on the arcs
// (cos phi = 1/(2(b-1)) > b/2); the line-coordinate fixed-point data
// {E0, L(E0), R(E0)} continues to b_max.
PeriodicOrbit orbit_elliptic6(const Table& t);

// The retracing hyperbolic period-6 orbit (requires 1.5 < b < sqrt(3)).
// Line points follow the Theta_b orbit {P0, Q1, P1, Q0, P2, Q2}.
PeriodicOrbit orbit_hyperbolic6(const Table& t);

// Root of elliptic_half_trace(b) = -1 in (1.5, 1 + 2^{-1/2}), where the
// elliptic period-6 orbit turns parabolic.  Bisection plus Newton polish
// to 1e-12.
double find_b_crit();

// Eigenvalues and tangent-space slopes at P0 of the square-root factor of
// D Theta_b, in the variable eta = 1/(2 sqrt(b^2 - 2)).
struct HyperbolicEigendata {
    double eta;
    double lambda_s;
    double lambda_u;
    double slope_s;
    double slope_u;
};
HyperbolicEigendata hyperbolic_eigendata(const Table& t);
HyperbolicEigendata hyperbolic_eigendata_eta(double eta);

// Closed-form Jacobians of Psi_b at E0 and at Q0 (finite-difference
// oracle targets).
Mat2 psi_jacobian_E0(double b);
Mat2 psi_jacobian_Q0(double b);

// Damped Newton iteration on apply(t, k, x) - x = 0 with the analytic
// Jacobian.  Converges to residual < tol (max 50 iterations, step halving
// when the residual grows).  Throws NoConvergence or SingularJacobian.
LineState newton_fixed_point(const Table& t, GenMapKind k, const LineState& guess,
                             double tol = 1e-12);

} // namespace lemon
