#include "lemon/periodic.hpp"

#include "lemon/billiard.hpp"
#include "lemon/errors.hpp"

#include <cmath>

namespace lemon {

double elliptic_half_trace(double b) {
    double poly = ((((16.0 * b - 48.0) * b + 40.0) * b - 4.0) * b - 1.0) * b + 1.0;
    return poly + b / (2.0 * b * b - 4.0 * b + 1.0);
}

double elliptic_half_trace_rational(double b) {
    double num =
        ((((((32.0 * b - 160.0) * b + 288.0) * b - 216.0) * b + 54.0) * b + 2.0) * b - 4.0) * b +
        1.0;
    return num / (2.0 * b * b - 4.0 * b + 1.0);
}

double hyperbolic_half_trace_minus_1(double b) {
    double r = std::sqrt(b * b - 2.0);
    return (2.0 * b - 3.0) * (2.0 * b + 3.0) * r * (4.0 * b * b - 7.0 - 4.0 * r);
}

Classification classify_half_trace(double half_trace) {
    double a = std::abs(half_trace);
    if (std::abs(a - 1.0) <= 1e-8) return Classification::Parabolic;
    return a < 1.0 ? Classification::Elliptic : Classification::Hyperbolic;
}

LineState point_E0(double b) {
    double c = 1.0 / (2.0 * (b - 1.0));
    double e = std::sqrt(std::max(0.0, 1.0 - c * c));
    return {e, e};
}

LineState point_P0(double b) {
    double p = std::sqrt(1.0 - 1.0 / (4.0 * b * b - 8.0));
    return {0.0, p};
}

LineState point_Q0(double b) {
    double p = std::sqrt(1.0 - 1.0 / (4.0 * b * b - 8.0));
    return {p, 0.0};
}

PeriodicOrbit orbit_O2(const Table& t) {
    PeriodicOrbit o;
    o.period = 2;
    o.points_line = {LineState{0.0, 0.0}, LineState{0.0, 0.0}};
    o.points_angular = std::vector<AngularState>{o2_state_right(), o2_state_left()};
    o.multiplier_half_trace = 2.0 * (t.b - 1.0) * (t.b - 1.0) - 1.0;
    o.classification = classify_half_trace(o.multiplier_half_trace);
    return o;
}

PeriodicOrbit orbit_elliptic6(const Table& t) {
    const double b = t.b;
    if (!(b > 1.5)) throw std::domain_error("orbit_elliptic6: requires b > 1.5");
    const double cphi = 1.0 / (2.0 * (b - 1.0));
    const double sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));

    PeriodicOrbit o;
    o.period = 6;
    LineState e0 = point_E0(b);
    o.points_line = {e0, apply_L(t, e0), apply_R(t, e0)};
    o.multiplier_half_trace = elliptic_half_trace(b);
    o.classification = classify_half_trace(o.multiplier_half_trace);

    // physical while the table points stay on the open arcs
    if (cphi > b / 2.0) {
        Vec2 P[6] = {{1.0, 0.0},        {b - cphi, sphi},  {cphi, sphi},
                     {b - 1.0, 0.0},    {cphi, -sphi},     {b - cphi, -sphi}};
        std::vector<AngularState> ang;
        for (int j = 0; j < 6; ++j) ang.push_back(state_through(t, P[j], P[(j + 1) % 6]));
        o.points_angular = ang;
    }
    return o;
}

PeriodicOrbit orbit_hyperbolic6(const Table& t) {
    const double b = t.b;
    if (!(b > 1.5 && b < std::sqrt(3.0)))
        throw std::domain_error("orbit_hyperbolic6: requires 1.5 < b < sqrt(3)");
    const double r = std::sqrt(b * b - 2.0);
    const double cphi = (2.0 * b * b - 3.0) / (2.0 * b * r);
    const double sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));

    PeriodicOrbit o;
    o.period = 6;
    const double p = std::sqrt(1.0 - 1.0 / (4.0 * b * b - 8.0));
    o.points_line = {{0.0, p}, {-p, p}, {-p, 0.0}, {p, 0.0}, {p, -p}, {0.0, -p}};
    o.multiplier_half_trace = 1.0 + hyperbolic_half_trace_minus_1(b);
    o.classification = classify_half_trace(o.multiplier_half_trace);

    Vec2 T[4] = {{cphi, sphi}, {r * cphi, r * sphi}, {b - r * cphi, -r * sphi}, {b - cphi, -sphi}};
    std::vector<AngularState> ang;
    for (int j = 0; j < 3; ++j) ang.push_back(state_through(t, T[j], T[j + 1]));
    for (int j = 0; j < 3; ++j) ang.push_back(state_through(t, T[3 - j], T[2 - j]));
    o.points_angular = ang;
    return o;
}

double find_b_crit() {
    auto g = [](double b) { return elliptic_half_trace(b) + 1.0; };
    // bracket the sign change by scanning
    const double b_max = 1.0 + std::sqrt(0.5);
    double lo = 1.5 + 1e-6, hi = b_max - 1e-9;
    double glo = g(lo);
    const int n_scan = 256;
    double bracket_lo = lo, bracket_hi = hi;
    bool found = false;
    for (int i = 1; i <= n_scan; ++i) {
        double x = lo + (hi - lo) * i / n_scan;
        double gx = g(x);
        if (glo * gx <= 0.0) {
            bracket_lo = lo + (hi - lo) * (i - 1) / n_scan;
            bracket_hi = x;
            found = true;
            break;
        }
        glo = gx;
    }
    if (!found) throw NoConvergence("find_b_crit: no sign change of f(b)+1");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (bracket_lo + bracket_hi);
        if (g(bracket_lo) * g(mid) <= 0.0)
            bracket_hi = mid;
        else
            bracket_lo = mid;
        if (bracket_hi - bracket_lo < 1e-14) break;
    }
    // Newton polish with a finite-difference derivative
    double x = 0.5 * (bracket_lo + bracket_hi);
    for (int i = 0; i < 8; ++i) {
        double h = 1e-7;
        double d = (g(x + h) - g(x - h)) / (2.0 * h);
        double step = g(x) / d;
        x -= step;
        if (std::abs(step) < 1e-14) break;
    }
    return x;
}

HyperbolicEigendata hyperbolic_eigendata_eta(double eta) {
    const double e = eta;
    const double e2 = e * e, e3 = e2 * e, e4 = e3 * e, e5 = e4 * e, e6 = e5 * e, e7 = e6 * e;
    const double N = 4.0 * e7 - 2.0 * e6 + 6.0 * e5 - e4 - 2.0 * e3 + 2.0 * e2 - 2.0 * e + 1.0;
    const double denom = 2.0 * (2.0 * e7 + e5);
    const double delta = N * N - 4.0 * e4 * e4 * e2 * (4.0 * e4 + 4.0 * e2 + 1.0); // 4 eta^10 (2eta^2+1)^2
    const double sq = std::sqrt(std::max(0.0, delta));

    const double gamma =
        (1.0 - e) * (4.0 * e6 + 3.0 * e5 + e4 + 2.0 * e3 - 2.0 * e2 - e + 1.0);
    const double sg = std::sqrt(std::max(0.0, gamma));
    const double num_m = -2.0 * e2 * (1.0 - e - e2 + 2.0 * e3 - 4.0 * e4 + 4.0 * e5);
    const double base = (1.0 + e) * (1.0 + e2) * (1.0 - 2.0 * e + 2.0 * e2);

    HyperbolicEigendata d;
    d.eta = e;
    d.lambda_s = (N - sq) / denom;
    d.lambda_u = (N + sq) / denom;
    d.slope_s = num_m / (base + (2.0 * e2 + 1.0) * sg);
    d.slope_u = num_m / (base - (2.0 * e2 + 1.0) * sg);
    return d;
}

HyperbolicEigendata hyperbolic_eigendata(const Table& t) {
    const double b = t.b;
    if (!(b > 1.5 && b <= 1.0 + std::sqrt(0.5) + 1e-12))
        throw std::domain_error("hyperbolic_eigendata: requires 1.5 < b <= 1 + 2^{-1/2}");
    return hyperbolic_eigendata_eta(1.0 / (2.0 * std::sqrt(b * b - 2.0)));
}

Mat2 psi_jacobian_E0(double b) {
    const double bm1 = b - 1.0;
    const double q = 2.0 * b * b - 4.0 * b + 1.0;
    Mat2 A;
    A.a11 = b * (-8.0 * b * b * b + 24.0 * b * b - 20.0 * b + 3.0) / bm1;
    A.a12 = (-2.0 * b * b + 4.0 * b - 1.0) / bm1;
    double p1 = ((8.0 * b - 24.0) * b + 20.0) * b * b - 4.0 * b + 1.0; // 8b^4-24b^3+20b^2-4b+1
    double p2 = ((8.0 * b - 24.0) * b + 20.0) * b * b - 2.0 * b - 1.0; // 8b^4-24b^3+20b^2-2b-1
    A.a21 = p1 * p2 / (bm1 * q);
    A.a22 = b * (8.0 * b * b * b - 24.0 * b * b + 20.0 * b - 3.0) / bm1;
    return A;
}

Mat2 psi_jacobian_Q0(double b) {
    const double b2 = b * b;
    const double r = std::sqrt(b2 - 2.0);
    const double q = 2.0 * b2 - 3.0;
    const double p63 = (16.0 * b2 - 64.0) * b2 + 63.0; // 16b^4-64b^2+63
    Mat2 A;
    A.a11 = -2.0 * (b2 - 2.0) * p63 / q;
    A.a12 = -((8.0 * b2 - 36.0) * b2 + 39.0) / q;
    A.a21 = 2.0 * p63 * r - (8.0 * b2 - 15.0) * ((8.0 * b2 - 32.0) * b2 + 31.0) / q;
    A.a22 = ((8.0 * b2 - 36.0) * b2 + 39.0) / r - 2.0 * ((8.0 * b2 - 35.0) * b2 + 36.0) / q;
    return A;
}

LineState newton_fixed_point(const Table& t, GenMapKind k, const LineState& guess, double tol) {
    LineState x = guess;
    auto residual = [&](const LineState& p) -> Vec2 {
        LineState y = apply(t, k, p);
        return {y.d_left - p.d_left, y.d_right - p.d_right};
    };
    Vec2 r = residual(x);
    double rn = r.norm();
    for (int it = 0; it < 50; ++it) {
        if (rn < tol) return x;
        Mat2 J = jacobian(t, k, x) - Mat2::identity();
        if (std::abs(J.det()) < 1e-14)
            throw SingularJacobian("newton_fixed_point: singular Jacobian of map - id");
        Vec2 dx = J.inverse() * r;
        double scale = 1.0;
        for (int h = 0; h < 25; ++h) {
            LineState cand{x.d_left - scale * dx.x, x.d_right - scale * dx.y};
            try {
                Vec2 rc = residual(cand);
                double rcn = rc.norm();
                if (rcn < rn || rcn < tol) {
                    x = cand;
                    r = rc;
                    rn = rcn;
                    break;
                }
            } catch (const Error&) {
                // candidate left the map's domain; shorten the step
            }
            scale *= 0.5;
            if (h == 24) throw NoConvergence("newton_fixed_point: damping failed to reduce residual");
        }
    }
    if (rn < tol) return x;
    throw NoConvergence("newton_fixed_point: residual above tolerance after 50 iterations");
}

} // namespace lemon
