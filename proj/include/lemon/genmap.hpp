#pragma once

// Generalized reflection maps on the oriented-line square M = [-1,1]^2:
// the left-arc and right-arc reflections L_b, R_b, their compositions
// Phi = L R L, Psi = R L R, Theta = (R L)^3, the diagonal swap I, the
// singular curves where the maps degenerate, and the fixed-point loci.

#include "lemon/types.hpp"

#include <optional>

namespace lemon {

enum class GenMapKind { L, R, Phi, Psi, Theta, ThetaInv, I };

enum class SingularCurveId { S1plus, S1minus, S2plus, S2minus, Lplus, Lminus };

// Reflection on the left arc: d_right unchanged,
// d_left' = (d_r - d_l)(1 - 2 d_r^2) - 2 d_r sqrt((b^2-(d_r-d_l)^2)(1-d_r^2)) + d_r.
// Radicand values in [-1e-14, 0) are clamped to 0 (grazing chords); below
// that throws OutOfDomain.  Points on the branched locus |d_r - d_l| = b
// throw Branched.
LineState apply_L(const Table& t, const LineState& l);

// Mirror of apply_L with the roles of d_left and d_right swapped.
LineState apply_R(const Table& t, const LineState& l);

// Composition named by k (rightmost factor applied first; Theta = (R L)^3,
// ThetaInv = (L R)^3 via the involution property).  OutOfDomain/Branched
// from an intermediate stage are rethrown with the stage index set.
LineState apply(const Table& t, GenMapKind k, const LineState& l);

// Exception-free variant; empty on any domain failure.
std::optional<LineState> try_apply(const Table& t, GenMapKind k, const LineState& l) noexcept;

// Exact analytic derivative of the map named by k at l (chain rule along
// the composition for Phi/Psi/Theta).
Mat2 jacobian(const Table& t, GenMapKind k, const LineState& l);

// d(d_left')/d(d_left) of apply_L; vanishes exactly on S_{1,+-}.
double dL_ddl(const Table& t, const LineState& l);

// n samples of the named singular curve inside M, parametrized by the free
// coordinate:
//   S_{1,+-}: +-d_r > 0,  d_l - d_r = +-b(1 - 2 d_r^2)
//   S_{2,+-}: +-d_l > 0,  d_r - d_l = +-b(1 - 2 d_l^2)
//   L_{+-b}:  d_r - d_l = +-b.
CurveTrace singular_curve(const Table& t, SingularCurveId id, int n);

// n samples of Fix(k) for k in {L, R, Phi, Psi}:
//   Fix(L): d_l = (1-b) d_r;  Fix(R): d_r = (1-b) d_l;
//   Fix(Phi): explicit graph over d_r in [1-b, b-1];  Fix(Psi) = I(Fix(Phi)).
CurveTrace fixed_locus(const Table& t, GenMapKind k, int n);

// (d_l' - d_r') - (d_r - d_l) for Phi_b at l (positive outside the
// invariant curve C_Phi, negative inside, zero on it); for Psi_b the
// reversed-sign companion (d_r' - d_l') - (d_l - d_r).
double monotonicity_witness(const Table& t, const LineState& l, GenMapKind k = GenMapKind::Phi);

// True when l lies in the connected component of the origin of M minus
// the six singular curves, decided by sign tests.
bool in_domain(const Table& t, const LineState& l);

// The parameter-independent crossing S_0 = (2^{-1/2}, 2^{-1/2}) of
// S_{1,+} and S_{2,+}.
LineState corner_S0();

} // namespace lemon
