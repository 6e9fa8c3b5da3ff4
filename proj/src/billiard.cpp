#include "lemon/billiard.hpp"

#include "lemon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace lemon {

namespace {

struct Candidate {
    double s;
    ArcId arc;
    double phi;
    bool corner;
};

// Positive roots of |p + s u - c|^2 = 1 via the cancellation-stable
// quadratic formula.
void circle_hits(const Vec2& p, const Vec2& u, const Vec2& c, double roots[2], int& n_roots) {
    Vec2 w = p - c;
    double m = u.dot(w);            // half linear coefficient
    double q0 = w.dot(w) - 1.0;     // constant coefficient
    double disc = m * m - q0;
    n_roots = 0;
    if (disc < 0.0) return;
    double sq = std::sqrt(disc);
    double big = -(m + std::copysign(sq, m));
    double r1, r2;
    if (big == 0.0) {
        r1 = r2 = 0.0;
    } else {
        r1 = big;
        r2 = q0 / big;
    }
    roots[n_roots++] = r1;
    roots[n_roots++] = r2;
}

} // namespace

ReflectionStep billiard_step(const Table& t, const AngularState& x) {
    const Vec2 p = base_point(t, x);
    const Vec2 u = direction(x);

    std::vector<Candidate> cands;
    for (ArcId arc : {ArcId::Right, ArcId::Left}) {
        const Vec2 c = (arc == ArcId::Right) ? t.o_left : t.o_right;
        double roots[2];
        int n = 0;
        circle_hits(p, u, c, roots, n);
        for (int i = 0; i < n; ++i) {
            double s = roots[i];
            if (s <= 1e-12) continue;
            Vec2 q = p + s * u;
            double phi;
            if (arc == ArcId::Right) {
                phi = std::atan2(q.y, q.x);
            } else {
                phi = wrap_angle(pi() - std::atan2(q.y, q.x - t.b));
            }
            bool corner = std::abs(std::abs(phi) - t.corner_angle) < tol_corner;
            if (!corner && std::abs(phi) >= t.corner_angle) continue;
            cands.push_back({s, arc, phi, corner});
        }
    }
    if (cands.empty()) throw Error("billiard_step: ray misses the boundary (degenerate state)");

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.s < b.s; });
    if (cands.size() >= 2 && cands[1].s - cands[0].s < 1e-14)
        throw CornerHit("billiard_step: ambiguous landing near a corner");
    const Candidate& hit = cands.front();
    if (hit.corner) throw CornerHit("billiard_step: landed within tol_corner of a corner");

    Vec2 q = p + hit.s * u;
    Vec2 nu = (hit.arc == ArcId::Right) ? (q - t.o_left) : (q - t.o_right);
    Vec2 u_out = u - (2.0 * u.dot(nu)) * nu;

    AngularState y;
    y.arc = hit.arc;
    y.phi = hit.phi;
    double theta = wrap_angle(std::atan2(u_out.y, u_out.x) - tangent_angle(y));
    if (theta < 0.0) theta += 2.0 * pi();
    y.theta = theta;

    ReflectionStep step;
    step.from = x;
    step.to = y;
    step.chord_length = hit.s;
    step.d_from = std::sin(x.theta);
    step.d_to = std::sin(y.theta);
    return step;
}

Mat2 tangent_map(const ReflectionStep& step) {
    const double L = step.chord_length;
    const double d0 = step.d_from;
    const double d1 = step.d_to;
    return {(L - d0) / d1, L / d1, (L - d0 - d1) / d1, (L - d1) / d1};
}

double propagate_focus(const ReflectionStep& step, double kappa_minus) {
    return 2.0 / step.d_to - kappa_minus;
}

double transport_focus(double chord_length, double kappa_plus) {
    return kappa_plus / (chord_length * kappa_plus - 1.0);
}

double rotation_angle_O2(const Table& t) {
    if (!(t.b > 1.0 && t.b < 2.0))
        throw std::domain_error("rotation_angle_O2: requires 1 < b < 2");
    double c = 2.0 * (1.0 - t.b) * (1.0 - t.b) - 1.0;
    return std::acos(std::clamp(c, -1.0, 1.0));
}

AngularState o2_state_right() { return {ArcId::Right, 0.0, 0.5 * pi()}; }
AngularState o2_state_left() { return {ArcId::Left, 0.0, 0.5 * pi()}; }

AngularState state_through(const Table& t, const Vec2& from, const Vec2& to) {
    const double rl = (from - t.o_left).norm();
    const double rr = (from - t.o_right).norm();
    AngularState st;
    if (std::abs(rl - 1.0) < 1e-9 && std::abs(std::atan2(from.y, from.x)) < t.corner_angle) {
        st.arc = ArcId::Right;
        st.phi = std::atan2(from.y, from.x);
    } else if (std::abs(rr - 1.0) < 1e-9) {
        st.arc = ArcId::Left;
        st.phi = wrap_angle(pi() - std::atan2(from.y, from.x - t.b));
        if (std::abs(st.phi) >= t.corner_angle)
            throw Error("state_through: point not on the lemon boundary");
    } else {
        throw Error("state_through: point not on the lemon boundary");
    }
    Vec2 u = to - from;
    double theta = wrap_angle(std::atan2(u.y, u.x) - tangent_angle(st));
    if (theta <= 0.0 || theta >= pi())
        throw Error("state_through: direction does not point into the table");
    st.theta = theta;
    return st;
}

double estimate_rotation_number(const Table& t, const AngularState& center,
                                const AngularState& start, int n_iter, double escape_radius) {
    AngularState x = start;
    double prev = std::atan2(start.theta - center.theta, start.phi - center.phi);
    double total = 0.0;
    for (int k = 0; k < n_iter; ++k) {
        x = billiard_step(t, x).to;
        x = billiard_step(t, x).to;
        if (x.arc != center.arc)
            throw OrbitEscaped("estimate_rotation_number: orbit left the alternating regime");
        double dphi = x.phi - center.phi;
        double dtheta = x.theta - center.theta;
        if (std::hypot(dphi, dtheta) > escape_radius)
            throw OrbitEscaped("estimate_rotation_number: orbit left the configured radius");
        double ang = std::atan2(dtheta, dphi);
        total += wrap_angle(ang - prev);
        prev = ang;
    }
    return std::abs(total) / (2.0 * pi() * n_iter);
}

} // namespace lemon
