#pragma once

// Trajectories with two parallel segments: the (alpha, beta)-parametrized
// three-reflection construction, the table-distance function b(alpha,beta),
// the curves J and T, level-curve tracing by continuation, the H-maps into
// line coordinates, and the curves C_Phi, C_Psi, C_prl.

#include "lemon/types.hpp"

#include <optional>

namespace lemon {

struct AngleParams {
    double alpha;
    double beta;
};

// Polyline in the (alpha, beta) parameter plane.
struct AngleCurve {
    std::vector<AngleParams> points;
    std::vector<double> params; // cumulative arclength
};

// The full construction for one (alpha, beta): reflection points
// P1 = (cos a, sin a), P2 (left-arc, circle centered at o_right), and
// P3 = (cos b, -sin b), travel parameters t and s, the right center, the
// induced table distance, and the four signed distances of the incoming
// and outgoing horizontal segments.
struct ParallelOrbit {
    AngleParams params;
    double t;
    double s;
    Vec2 p1;
    Vec2 p2;
    Vec2 p3;
    Vec2 o_right;
    double b;
    double d_l1, d_l3; // = sin(alpha), sin(beta)
    double d_r1, d_r3;
};

ParallelOrbit build_parallel_orbit(const AngleParams& p);

// b(alpha, beta)^2 of the construction (finite on alpha + beta < pi/2).
double b_squared(const AngleParams& p);

// F_J = (cos a + cos b) cos(a+b) - sin a sin b; its zero set J is where
// the right center lands on the horizontal axis (Y_lr = 0, off-diagonal).
double F_J(const AngleParams& p);

// F_T = cos^2(a+b)((cos a + cos b)cos(a+b) - sin a sin b)
//       + (1 + cos(a+b))(sin a - sin b)^2; its zero set T is the teardrop
// on which a parallel incoming beam leaves parallel after three
// reflections.
double F_T(const AngleParams& p);

// Root of 2 cos(a) cos(2a) - sin^2(a) = 0: the diagonal crossing of J.
double solve_alpha0();

// Final outgoing beam curvature 1/f_3^+ of a parallel incoming beam
// (curvature 0) reflected at P1, P2, P3 of the construction.
double parallel_beam_final_curvature(const AngleParams& p);

// n points on the teardrop T (upper and lower wedge, by bisection along
// lines alpha + beta = const).
std::vector<AngleParams> sample_T_curve(int n);

// Diagonal crossing of the nontrivial branch of the d_r1 = d_r3 locus.
double solve_dr13_diagonal_crossing();

// Level curve b(alpha, beta) = b traced by predictor-corrector
// continuation from its endpoint on {alpha = 0} through the analytic
// diagonal crossing (acos(1/(2(b-1))), same) to the endpoint on
// {beta = 0}; resampled to n points.  Requires 1.5 < b <= 1 + 2^{-1/2};
// near (pi/4, pi/4) tracing stops at distance 1e-4.
AngleCurve trace_level_curve_b(double b, int n);

// Intersection of the level curve with J in the upper wedge (alpha < beta),
// present for b > b_crit.
std::optional<AngleParams> level_curve_J_intersection(double b);

// The induced maps D -> M.  H_up parametrizes C_Phi, H_down = I o H_up o swap
// parametrizes C_Psi.
LineState H_up(const AngleParams& p);
LineState H_down(const AngleParams& p);

enum class CurveCKind { Phi, Psi, Prl, PhiSym, PsiSym };

// C_Phi/C_Psi as H-images of the traced level curve; C_PhiSym as the
// image under the left-arc reflection of the ray {(-x, (b-1)x)};
// C_PsiSym its diagonal mirror; C_prl as the four-arc truncation.
CurveTrace curve_C(const Table& t, CurveCKind which, int n);

// The four arcs gamma_1..gamma_4 of C_prl as separate polylines:
// gamma_1 from P0 to E1 and gamma_2 from Q0 to E2 on C_Phi (E1 = E2 = E0
// for b <= b_crit), gamma_3/gamma_4 their diagonal mirrors on C_Psi.
std::vector<CurveTrace> curve_C_prl_segments(const Table& t, int n);

// Closed-form slopes of C_Phi (m_up) and C_Psi (m_down) at P0, in
// eta = 1/(2 sqrt(b^2-2)).
struct EndpointSlopes {
    double m_up;
    double m_down;
};
EndpointSlopes endpoint_slopes(const Table& t);
double slope_m_up(double eta);
double slope_m_down(double eta);

} // namespace lemon
