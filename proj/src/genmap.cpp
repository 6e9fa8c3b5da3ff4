#include "lemon/genmap.hpp"

#include "lemon/errors.hpp"

#include <cmath>
#include <string>

namespace lemon {

namespace {

constexpr double radicand_tol = 1e-14;
constexpr double branch_tol = 1e-12;

// Application-order factor sequences (leftmost entry applied first).
const char* sequence(GenMapKind k) {
    switch (k) {
        case GenMapKind::L: return "L";
        case GenMapKind::R: return "R";
        case GenMapKind::Phi: return "LRL";
        case GenMapKind::Psi: return "RLR";
        case GenMapKind::Theta: return "LRLRLR";
        case GenMapKind::ThetaInv: return "RLRLRL";
        case GenMapKind::I: return "I";
    }
    return "";
}

// d_left' of the left-arc reflection; x = d_left, y = d_right.
double reflect_coord(double b, double x, double y, int stage) {
    double S = b * b - (y - x) * (y - x);
    double T = 1.0 - y * y;
    // on L_{+-b} itself S = 0 and the square root is unambiguous; only
    // points beyond the branched locus are rejected
    if (S < -branch_tol)
        throw Branched("generalized map: point beyond branched locus L_{+-b}", stage);
    if (T < -radicand_tol) throw OutOfDomain("generalized map: |d_r| > 1", stage);
    double rad = std::max(0.0, S) * std::max(0.0, T);
    return (y - x) * (1.0 - 2.0 * y * y) - 2.0 * y * std::sqrt(rad) + y;
}

// Partials of reflect_coord with respect to x and y.
void reflect_coord_partials(double b, double x, double y, double& gx, double& gy, int stage) {
    double S = b * b - (y - x) * (y - x);
    double T = 1.0 - y * y;
    double rad = S * T;
    if (rad < radicand_tol)
        throw OutOfDomain("generalized map jacobian: at or beyond the singular radicand", stage);
    double root = std::sqrt(rad);
    gx = -(1.0 - 2.0 * y * y) + 2.0 * y * T * (x - y) / root;
    gy = (1.0 - 2.0 * y * y) - 4.0 * y * (y - x) + 1.0 - 2.0 * root +
         2.0 * y * ((y - x) * T + y * S) / root;
}

LineState step(const Table& t, char which, const LineState& l, int stage) {
    switch (which) {
        case 'L': return {reflect_coord(t.b, l.d_left, l.d_right, stage), l.d_right};
        case 'R': return {l.d_left, reflect_coord(t.b, l.d_right, l.d_left, stage)};
        case 'I': return {l.d_right, l.d_left};
    }
    throw Error("generalized map: unknown factor");
}

Mat2 step_jacobian(const Table& t, char which, const LineState& l, int stage) {
    double gx, gy;
    switch (which) {
        case 'L':
            reflect_coord_partials(t.b, l.d_left, l.d_right, gx, gy, stage);
            return {gx, gy, 0.0, 1.0};
        case 'R':
            reflect_coord_partials(t.b, l.d_right, l.d_left, gx, gy, stage);
            return {1.0, 0.0, gy, gx};
        case 'I':
            return {0.0, 1.0, 1.0, 0.0};
    }
    throw Error("generalized map: unknown factor");
}

} // namespace

LineState apply_L(const Table& t, const LineState& l) { return step(t, 'L', l, -1); }

LineState apply_R(const Table& t, const LineState& l) { return step(t, 'R', l, -1); }

LineState apply(const Table& t, GenMapKind k, const LineState& l) {
    LineState x = l;
    int stage = 0;
    for (const char* f = sequence(k); *f; ++f, ++stage) x = step(t, *f, x, stage);
    return x;
}

std::optional<LineState> try_apply(const Table& t, GenMapKind k, const LineState& l) noexcept {
    try {
        return apply(t, k, l);
    } catch (...) {
        return std::nullopt;
    }
}

Mat2 jacobian(const Table& t, GenMapKind k, const LineState& l) {
    LineState x = l;
    Mat2 J = Mat2::identity();
    int stage = 0;
    for (const char* f = sequence(k); *f; ++f, ++stage) {
        J = step_jacobian(t, *f, x, stage) * J;
        x = step(t, *f, x, stage);
    }
    return J;
}

double dL_ddl(const Table& t, const LineState& l) {
    double gx, gy;
    reflect_coord_partials(t.b, l.d_left, l.d_right, gx, gy, -1);
    return gx;
}

CurveTrace singular_curve(const Table& t, SingularCurveId id, int n) {
    const double b = t.b;
    CurveTrace tr;
    auto sample = [&](double lo, double hi, auto&& point, const char* label) {
        tr.label = label;
        for (int i = 0; i < n; ++i) {
            double u = (n == 1) ? lo : lo + (hi - lo) * i / double(n - 1);
            tr.params.push_back(u);
            tr.points.push_back(point(u));
        }
    };
    // free-coordinate window where the companion coordinate stays in [-1,1]
    double lo = (1.0 + std::sqrt(8.0 * b * b - 8.0 * b + 1.0)) / (4.0 * b);
    double cap = (1.0 + std::sqrt(8.0 * b * b + 8.0 * b + 1.0)) / (4.0 * b);
    double hi = std::min(1.0, cap);
    switch (id) {
        case SingularCurveId::S1plus:
            sample(lo, hi, [&](double y) { return LineState{y + b * (1.0 - 2.0 * y * y), y}; }, "S1+");
            break;
        case SingularCurveId::S1minus:
            sample(-hi, -lo, [&](double y) { return LineState{y - b * (1.0 - 2.0 * y * y), y}; }, "S1-");
            break;
        case SingularCurveId::S2plus:
            sample(lo, hi, [&](double x) { return LineState{x, x + b * (1.0 - 2.0 * x * x)}; }, "S2+");
            break;
        case SingularCurveId::S2minus:
            sample(-hi, -lo, [&](double x) { return LineState{x, x - b * (1.0 - 2.0 * x * x)}; }, "S2-");
            break;
        case SingularCurveId::Lplus:
            sample(-1.0, 1.0 - b, [&](double x) { return LineState{x, x + b}; }, "L+b");
            break;
        case SingularCurveId::Lminus:
            sample(b - 1.0, 1.0, [&](double x) { return LineState{x, x - b}; }, "L-b");
            break;
    }
    return tr;
}

CurveTrace fixed_locus(const Table& t, GenMapKind k, int n) {
    const double b = t.b;
    CurveTrace tr;
    auto push = [&](double p, LineState s) {
        tr.params.push_back(p);
        tr.points.push_back(s);
    };
    auto phi_graph = [&](double y) {
        double rad = ((1.0 - b) * (1.0 - b) - y * y) * (1.0 - y * y);
        double x = (y / (b - 1.0)) *
                   (-1.0 + 2.0 * b * (1.0 - y * y) - 2.0 * b * std::sqrt(std::max(0.0, rad)));
        return LineState{x, y};
    };
    switch (k) {
        case GenMapKind::L:
            tr.label = "Fix(L)";
            for (int i = 0; i < n; ++i) {
                double y = -1.0 + 2.0 * i / double(n - 1);
                push(y, {(1.0 - b) * y, y});
            }
            break;
        case GenMapKind::R:
            tr.label = "Fix(R)";
            for (int i = 0; i < n; ++i) {
                double x = -1.0 + 2.0 * i / double(n - 1);
                push(x, {x, (1.0 - b) * x});
            }
            break;
        case GenMapKind::Phi:
            tr.label = "Fix(Phi)";
            for (int i = 0; i < n; ++i) {
                double y = (b - 1.0) * (-1.0 + 2.0 * i / double(n - 1));
                push(y, phi_graph(y));
            }
            break;
        case GenMapKind::Psi:
            tr.label = "Fix(Psi)";
            for (int i = 0; i < n; ++i) {
                double y = (b - 1.0) * (-1.0 + 2.0 * i / double(n - 1));
                LineState p = phi_graph(y);
                push(y, {p.d_right, p.d_left});
            }
            break;
        default:
            throw Error("fixed_locus: supported only for L, R, Phi, Psi");
    }
    return tr;
}

double monotonicity_witness(const Table& t, const LineState& l, GenMapKind k) {
    if (k == GenMapKind::Phi) {
        LineState y = apply(t, GenMapKind::Phi, l);
        return (y.d_left - y.d_right) - (l.d_right - l.d_left);
    }
    if (k == GenMapKind::Psi) {
        LineState y = apply(t, GenMapKind::Psi, l);
        return (y.d_right - y.d_left) - (l.d_left - l.d_right);
    }
    throw Error("monotonicity_witness: supported only for Phi, Psi");
}

bool in_domain(const Table& t, const LineState& l) {
    const double b = t.b;
    const double x = l.d_left;
    const double y = l.d_right;
    if (std::abs(x) > 1.0 || std::abs(y) > 1.0) return false;
    if (std::abs(y - x) >= b - branch_tol) return false;
    if (y > 0.0 && x - y - b * (1.0 - 2.0 * y * y) >= 0.0) return false;
    if (y < 0.0 && x - y + b * (1.0 - 2.0 * y * y) <= 0.0) return false;
    if (x > 0.0 && y - x - b * (1.0 - 2.0 * x * x) >= 0.0) return false;
    if (x < 0.0 && y - x + b * (1.0 - 2.0 * x * x) <= 0.0) return false;
    return true;
}

LineState corner_S0() {
    double c = std::sqrt(0.5);
    return {c, c};
}

} // namespace lemon
