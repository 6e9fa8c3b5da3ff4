#pragma once

// Core value types shared by all modules: 2D vectors/matrices, the lemon
// table, boundary states in angular coordinates, oriented lines in
// (d_left, d_right) coordinates, and polyline curve traces.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace lemon {

struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double X, double Y) : x(X), y(Y) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    double norm() const { return std::hypot(x, y); }
    // counterclockwise quarter turn
    constexpr Vec2 perp() const { return {-y, x}; }
};

struct Mat2 {
    // row-major: [[a11, a12], [a21, a22]]
    double a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    constexpr Mat2 operator*(const Mat2& r) const {
        return {a11 * r.a11 + a12 * r.a21, a11 * r.a12 + a12 * r.a22,
                a21 * r.a11 + a22 * r.a21, a21 * r.a12 + a22 * r.a22};
    }
    constexpr Vec2 operator*(const Vec2& v) const {
        return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }
    constexpr Mat2 operator-(const Mat2& r) const {
        return {a11 - r.a11, a12 - r.a12, a21 - r.a21, a22 - r.a22};
    }
    constexpr double det() const { return a11 * a22 - a12 * a21; }
    constexpr double trace() const { return a11 + a22; }
    Mat2 inverse() const {
        double d = det();
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
};

// The lemon table Q(b): intersection of the unit disks centered at
// o_left = (0,0) and o_right = (b,0).  The right arc of the boundary lies
// on the circle centered at o_left and vice versa; the corners A (top) and
// B (bottom) satisfy cos(corner_angle) = b/2.
struct Table {
    double b;
    Vec2 o_left{0.0, 0.0};
    Vec2 o_right;
    double corner_angle;

    explicit Table(double b_) : b(b_), o_right(b_, 0.0), corner_angle(std::acos(b_ / 2.0)) {
        if (!(b_ > 0.0 && b_ < 2.0)) throw std::invalid_argument("Table: b must be in (0,2)");
    }
};

enum class ArcId { Left, Right };

// Boundary phase point of the billiard map.  phi is the position angle of
// the base point with respect to the center of the circle carrying the
// arc; on the left arc the stored value is phi_hat = pi - psi (psi the raw
// angle around o_right), so that on both arcs |phi| < corner_angle and
// phi > 0 means positive y.  theta in (0, pi) is measured from the
// positively oriented boundary tangent to the outgoing direction.
struct AngularState {
    ArcId arc;
    double phi;
    double theta;
};

// Oriented line in the signed-distance chart: d_left and d_right are the
// signed distances from o_left and o_right to the line, the sign taken
// along the left normal of the travel direction.  Reversing the line's
// orientation negates both components.  The heading angle beta satisfies
// sin(beta) = (d_right - d_left)/b.
struct LineState {
    double d_left{0.0};
    double d_right{0.0};

    constexpr LineState() = default;
    constexpr LineState(double dl, double dr) : d_left(dl), d_right(dr) {}
    constexpr LineState operator-() const { return {-d_left, -d_right}; }
    double dist(const LineState& o) const {
        return std::hypot(d_left - o.d_left, d_right - o.d_right);
    }
};

// Ordered polyline sampling of a curve, with one scalar parameter value
// per vertex (meaning depends on the producing operation).
struct CurveTrace {
    std::vector<LineState> points;
    std::vector<double> params;
    std::string label;
};

constexpr double tol_corner = 1e-10;

inline double pi() { return 3.14159265358979323846; }

} // namespace lemon
