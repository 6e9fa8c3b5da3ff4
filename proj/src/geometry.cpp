#include "lemon/geometry.hpp"

#include "lemon/errors.hpp"

#include <cmath>

namespace lemon {

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * pi());
    if (a <= -pi()) a += 2.0 * pi();
    return a;
}

Vec2 base_point(const Table& t, const AngularState& x) {
    if (x.arc == ArcId::Right) return {std::cos(x.phi), std::sin(x.phi)};
    // left arc: raw angle around o_right is psi = pi - phi_hat
    return {t.b - std::cos(x.phi), std::sin(x.phi)};
}

double tangent_angle(const AngularState& x) {
    if (x.arc == ArcId::Right) return x.phi + 0.5 * pi();
    return 1.5 * pi() - x.phi;
}

double heading_angle(const AngularState& x) { return tangent_angle(x) + x.theta; }

Vec2 direction(const AngularState& x) {
    double beta = heading_angle(x);
    return {std::cos(beta), std::sin(beta)};
}

LineState line_coords(const Table& t, const Vec2& p, const Vec2& u) {
    Vec2 n = u.perp();
    return {(p - t.o_left).dot(n), (p - t.o_right).dot(n)};
}

LineState angular_to_line(const Table& t, const AngularState& x, bool outgoing) {
    Vec2 u = direction(x);
    if (!outgoing) u = -u;
    return line_coords(t, base_point(t, x), u);
}

std::vector<IntersectionRecord> line_to_angular(const Table& t, const LineState& l, ArcId arc,
                                                bool leftward) {
    const double d_c = (arc == ArcId::Right) ? l.d_left : l.d_right;
    if (std::abs(d_c) >= 1.0) throw NoIntersection("line_to_angular: |d| >= 1 for requested arc");

    double sb = (l.d_right - l.d_left) / t.b;
    if (std::abs(sb) > 1.0) throw NoIntersection("line_to_angular: |d_right - d_left| > b");
    double beta = std::asin(sb);
    if (leftward) beta = pi() - beta;
    Vec2 u{std::cos(beta), std::sin(beta)};
    Vec2 n = u.perp();

    const Vec2 center = (arc == ArcId::Right) ? t.o_left : t.o_right;
    Vec2 foot = center + d_c * n;
    double h = std::sqrt(std::max(0.0, 1.0 - d_c * d_c));

    std::vector<IntersectionRecord> out;
    for (double s : {-h, h}) {
        Vec2 q = foot + s * u;
        IntersectionRecord rec;
        rec.point = q;
        rec.reversed = (s == h); // line exits the disk at the +h point
        double phi;
        if (arc == ArcId::Right) {
            phi = std::atan2(q.y, q.x);
        } else {
            double psi = std::atan2(q.y, q.x - t.b);
            phi = wrap_angle(pi() - psi);
        }
        if (std::abs(std::abs(phi) - t.corner_angle) < tol_corner)
            throw CornerHit("line_to_angular: intersection at corner");
        AngularState st;
        st.arc = arc;
        st.phi = phi;
        double tang = tangent_angle(st);
        double dir_angle = rec.reversed ? beta + pi() : beta;
        double theta = wrap_angle(dir_angle - tang);
        if (theta < 0.0) theta += 2.0 * pi(); // numerical guard; theta should land in (0, pi)
        st.theta = theta;
        rec.state = st;
        rec.on_arc = std::abs(phi) < t.corner_angle;
        out.push_back(rec);
    }
    return out;
}

} // namespace lemon
