#pragma once

// Solvers for the critical parameter values of the family, each returned
// with the residual of its defining equation.

#include "lemon/types.hpp"

namespace lemon {

struct SolvedConstant {
    double value;
    double residual;
};

// b_crit: elliptic_half_trace(b) = -1 (period-6 orbit turns parabolic)
SolvedConstant const_b_crit();
// alpha_0: 2 cos(a) cos(2a) - sin^2(a) = 0 (diagonal crossing of J)
SolvedConstant const_alpha0();
// b_2: b - (1 + sqrt(8 b^2 + 1))/(4b) = 2^{-1/2}
SolvedConstant const_b2();
// b_3: first coordinate of Phi_b(R L (S0)) = 0
SolvedConstant const_b3();
// b_sing: the diagonal point E1(b) reaches the corner value S0, i.e. the
// J-intersection of the level curve hits beta = pi/4
SolvedConstant const_b_sing();
// b_max = 1 + 2^{-1/2}, exact
SolvedConstant const_b_max();

} // namespace lemon
