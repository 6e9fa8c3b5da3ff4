#include "lemon/constants.hpp"

#include "lemon/errors.hpp"
#include "lemon/genmap.hpp"
#include "lemon/parallel.hpp"
#include "lemon/periodic.hpp"

#include <cmath>
#include <functional>
#include <optional>

namespace lemon {

namespace {

double bisect(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    if (glo * g(hi) > 0.0) throw NoConvergence("constants: no sign change in bracket");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (glo * g(mid) <= 0.0)
            hi = mid;
        else {
            lo = mid;
            glo = g(lo);
        }
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

SolvedConstant const_b_crit() {
    double b = find_b_crit();
    return {b, elliptic_half_trace(b) + 1.0};
}

SolvedConstant const_alpha0() {
    double a = solve_alpha0();
    return {a, 2.0 * std::cos(a) * std::cos(2.0 * a) - std::sin(a) * std::sin(a)};
}

SolvedConstant const_b2() {
    auto g = [](double b) {
        return b - (1.0 + std::sqrt(8.0 * b * b + 1.0)) / (4.0 * b) - std::sqrt(0.5);
    };
    double b = bisect(g, 1.5, 1.7);
    return {b, g(b)};
}

SolvedConstant const_b3() {
    // R L (S0) in composition order: L first, then R, then Phi = LRL.
    // The chain leaves the domain for some b, so bracket by scanning.
    auto g = [](double b) {
        Table t(b);
        LineState x = corner_S0();
        x = apply_L(t, x);
        x = apply_R(t, x);
        x = apply(t, GenMapKind::Phi, x);
        return x.d_left;
    };
    auto g_opt = [&](double b) -> std::optional<double> {
        try {
            return g(b);
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    const int n = 400;
    double prev_b = 0.0;
    std::optional<double> prev;
    for (int i = 0; i <= n; ++i) {
        double b = 1.52 + (1.69 - 1.52) * i / double(n);
        auto v = g_opt(b);
        if (prev && v && *prev * *v <= 0.0) {
            double root = bisect(g, prev_b, b);
            return {root, g(root)};
        }
        prev = v;
        prev_b = b;
    }
    throw NoConvergence("const_b3: no sign change found");
}

SolvedConstant const_b_sing() {
    // solve F_J(alpha, pi/4) = 0, then map through the distance function
    auto g = [](double a) { return F_J({a, 0.25 * pi()}); };
    double a = bisect(g, 0.3, 0.25 * pi() - 1e-9);
    double b = std::sqrt(b_squared({a, 0.25 * pi()}));
    return {b, g(a)};
}

SolvedConstant const_b_max() { return {1.0 + std::sqrt(0.5), 0.0}; }

} // namespace lemon
