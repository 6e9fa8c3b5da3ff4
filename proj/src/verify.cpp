#include "lemon/verify.hpp"

#include "lemon/billiard.hpp"
#include "lemon/constants.hpp"
#include "lemon/errors.hpp"
#include "lemon/genmap.hpp"
#include "lemon/io.hpp"
#include "lemon/manifolds.hpp"
#include "lemon/parallel.hpp"
#include "lemon/periodic.hpp"
#include "lemon/polyline.hpp"
#include "lemon/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

namespace lemon {

namespace {

// Frozen threshold for the singular-curve residual check: half of the
// brute-force grid minimum of ||L(I(x)) - R(L(x))|| over S_{1,+} across
// b in (1.5, 1 + 2^{-1/2}) (see tools/bench_search.cpp --fgf to recompute).
constexpr double threshold_FGF = 8.2e-4; // half of the measured 1.6408e-3

struct Failure {
    std::ostringstream msg;
    bool failed = false;
};

#define REQUIRE_NEAR(f, expr, ref, tol)                                                      \
    do {                                                                                     \
        double v_ = (expr), r_ = (ref);                                                      \
        if (!(std::abs(v_ - r_) < (tol))) {                                                  \
            f.failed = true;                                                                 \
            f.msg << #expr " = " << v_ << " vs " << r_ << " (tol " << (tol) << "); ";        \
        }                                                                                    \
    } while (0)

#define REQUIRE_TRUE(f, cond, what)                                                          \
    do {                                                                                     \
        if (!(cond)) {                                                                       \
            f.failed = true;                                                                 \
            f.msg << what << "; ";                                                           \
        }                                                                                    \
    } while (0)

double half_trace_product(const Table& t, const std::vector<AngularState>& pts, int n_steps) {
    Mat2 M = Mat2::identity();
    for (int j = 0; j < n_steps; ++j) {
        ReflectionStep st = billiard_step(t, pts[j]);
        M = tangent_map(st) * M;
    }
    return 0.5 * M.trace();
}

void check_trace_elliptic(Failure& f) {
    Rng rng(101);
    for (int i = 0; i < 50; ++i) {
        double b = rng.uniform(1.5 + 1e-4, 1.618 - 1e-4);
        Table t(b);
        PeriodicOrbit o = orbit_elliptic6(t);
        REQUIRE_TRUE(f, o.points_angular.has_value(), "elliptic orbit not physical at b=" << b);
        if (!o.points_angular) return;
        double htr = half_trace_product(t, *o.points_angular, 3);
        REQUIRE_NEAR(f, htr, elliptic_half_trace(b), 1e-9);
    }
}

void check_trace_hyperbolic(Failure& f) {
    Rng rng(102);
    for (int i = 0; i < 50; ++i) {
        double b = rng.uniform(1.5 + 1e-4, std::sqrt(3.0) - 1e-4);
        Table t(b);
        PeriodicOrbit o = orbit_hyperbolic6(t);
        // the closed form refers to the half-orbit (retracing symmetry)
        double htr = half_trace_product(t, *o.points_angular, 3);
        REQUIRE_NEAR(f, htr - 1.0, hyperbolic_half_trace_minus_1(b), 1e-9);
    }
}

void check_b_crit(Failure& f) {
    REQUIRE_NEAR(f, find_b_crit(), 1.63477, 5e-5);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        double b = 1.501 + (1.69 - 1.501) * i / 199.0;
        worst = std::max(worst, std::abs(elliptic_half_trace(b) - elliptic_half_trace_rational(b)));
    }
    REQUIRE_TRUE(f, worst < 1e-10, "f(b) vs rational form differ by " << worst);
}

void check_alpha0(Failure& f) {
    double a0 = solve_alpha0();
    REQUIRE_NEAR(f, a0, 0.663742, 1e-5);
    REQUIRE_NEAR(f, std::sqrt(b_squared({a0, a0})), find_b_crit(), 1e-6);
}

void check_genmap_algebra(Failure& f) {
    const double bs[5] = {1.51, 1.55, 1.6, 1.65, 1.7};
    Rng rng(105);
    for (double b : bs) {
        Table t(b);
        int done = 0, guard = 0;
        double worst = 0.0;
        // margin from the singular set: the involution identity is
        // representation-limited there (intermediate point rounds to
        // double where the return map has derivative ~ 1/distance)
        auto clear_of_singular = [&](const LineState& p) {
            double x = p.d_left, y = p.d_right;
            if (std::abs(x) > 1.0 - 1e-3 || std::abs(y) > 1.0 - 1e-3) return false;
            double m = 1e-3;
            return std::abs(x - y - b * (1.0 - 2.0 * y * y)) > m &&
                   std::abs(x - y + b * (1.0 - 2.0 * y * y)) > m &&
                   std::abs(y - x - b * (1.0 - 2.0 * x * x)) > m &&
                   std::abs(y - x + b * (1.0 - 2.0 * x * x)) > m;
        };
        while (done < 10000 && ++guard < 400000) {
            LineState x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            if (!in_domain(t, x) || !clear_of_singular(x)) continue;
            auto lx = try_apply(t, GenMapKind::L, x);
            auto rx = try_apply(t, GenMapKind::R, x);
            if (!lx || !rx) continue;
            auto llx = try_apply(t, GenMapKind::L, *lx);
            auto rrx = try_apply(t, GenMapKind::R, *rx);
            if (!llx || !rrx) continue;
            worst = std::max(worst, llx->dist(x));
            worst = std::max(worst, rrx->dist(x));
            // I R I = L
            LineState iri = apply(t, GenMapKind::I,
                                  apply(t, GenMapKind::R, apply(t, GenMapKind::I, x)));
            worst = std::max(worst, iri.dist(*lx));
            // center symmetry
            auto lmx = try_apply(t, GenMapKind::L, -x);
            if (lmx) worst = std::max(worst, lmx->dist(-*lx));
            ++done;
        }
        REQUIRE_TRUE(f, done == 10000, "only " << done << " valid samples at b=" << b);
        REQUIRE_TRUE(f, worst < 1e-12, "algebra residual " << worst << " at b=" << b);
    }
}

void check_point_values(Failure& f) {
    Table tm(1.0 + std::sqrt(0.5));
    LineState img = apply_L(tm, {0.6, 0.6});
    REQUIRE_NEAR(f, img.d_left, -1.03882, 1e-5);
    REQUIRE_NEAR(f, img.d_right, 0.6, 1e-12);

    Table t6(1.6);
    Vec2 v = jacobian(t6, GenMapKind::Phi, point_E0(1.6)) * Vec2{1.0, 1.0};
    REQUIRE_NEAR(f, v.x, 1.37815, 1e-5);
    REQUIRE_NEAR(f, v.y, -0.408, 1e-5);
}

Mat2 fd_jacobian(const Table& t, GenMapKind k, const LineState& x, double h) {
    LineState xp = apply(t, k, {x.d_left + h, x.d_right});
    LineState xm = apply(t, k, {x.d_left - h, x.d_right});
    LineState yp = apply(t, k, {x.d_left, x.d_right + h});
    LineState ym = apply(t, k, {x.d_left, x.d_right - h});
    return {(xp.d_left - xm.d_left) / (2 * h), (yp.d_left - ym.d_left) / (2 * h),
            (xp.d_right - xm.d_right) / (2 * h), (yp.d_right - ym.d_right) / (2 * h)};
}

void check_jacobian_oracles(Failure& f) {
    for (int i = 0; i < 20; ++i) {
        double b = 1.51 + (1.69 - 1.51) * i / 19.0;
        Table t(b);
        auto rel_close = [&](const Mat2& A, const Mat2& B) {
            double worst = 0.0;
            const double a[4] = {A.a11, A.a12, A.a21, A.a22};
            const double c[4] = {B.a11, B.a12, B.a21, B.a22};
            for (int j = 0; j < 4; ++j)
                worst = std::max(worst, std::abs(a[j] - c[j]) / std::max(1.0, std::abs(c[j])));
            return worst;
        };
        double wE = rel_close(fd_jacobian(t, GenMapKind::Psi, point_E0(b), 1e-6), psi_jacobian_E0(b));
        double wQ = rel_close(fd_jacobian(t, GenMapKind::Psi, point_Q0(b), 1e-6), psi_jacobian_Q0(b));
        REQUIRE_TRUE(f, wE < 1e-5, "Psi Jacobian at E0 off by rel " << wE << " at b=" << b);
        REQUIRE_TRUE(f, wQ < 1e-5, "Psi Jacobian at Q0 off by rel " << wQ << " at b=" << b);
    }
}

// slope of the traced curve at its P0 endpoint, by Richardson-extrapolated
// secants along the level curve
double traced_slope(double b, bool up) {
    auto slope_at = [&](double alpha) {
        // correct (alpha, beta_e) onto the level curve in beta
        double beta = std::acos(1.0 / (2.0 * std::sqrt(b * b - 2.0)));
        for (int i = 0; i < 30; ++i) {
            double g = b_squared({alpha, beta}) - b * b;
            double h = 1e-8;
            double dg = (b_squared({alpha, beta + h}) - b_squared({alpha, beta - h})) / (2 * h);
            beta -= g / dg;
            if (std::abs(g) < 1e-14) break;
        }
        LineState p = up ? H_up({alpha, beta}) : H_down({alpha, beta});
        LineState p0 = point_P0(b);
        return (p.d_right - p0.d_right) / (p.d_left - p0.d_left);
    };
    double s1 = slope_at(1e-4), s2 = slope_at(2e-4);
    return 2.0 * s1 - s2;
}

void check_slope_ordering(Failure& f) {
    for (int i = 0; i < 100; ++i) {
        double eta = 0.53 + (0.99 - 0.53) * i / 99.0;
        HyperbolicEigendata e = hyperbolic_eigendata_eta(eta);
        double mu = slope_m_up(eta), md = slope_m_down(eta);
        REQUIRE_TRUE(f, e.slope_u < md && md < mu && mu < e.slope_s && e.slope_s < 0.0,
                     "ordering fails at eta=" << eta << ": " << e.slope_u << " " << md << " "
                                              << mu << " " << e.slope_s);
    }
    for (double b : {1.55, 1.6}) {
        double eta = 1.0 / (2.0 * std::sqrt(b * b - 2.0));
        REQUIRE_NEAR(f, traced_slope(b, true), slope_m_up(eta), 1e-4);
        REQUIRE_NEAR(f, traced_slope(b, false), slope_m_down(eta), 1e-4);
    }
}

void check_parallel_beam(Failure& f) {
    auto pts = sample_T_curve(20);
    REQUIRE_TRUE(f, pts.size() == 20, "teardrop sampler returned " << pts.size() << " points");
    for (const auto& p : pts)
        REQUIRE_TRUE(f, std::abs(parallel_beam_final_curvature(p)) < 1e-8,
                     "final curvature " << parallel_beam_final_curvature(p) << " at alpha="
                                        << p.alpha << " beta=" << p.beta);
}

void check_curve_invariance(Failure& f) {
    for (double b : {1.55, 1.6, 1.66}) {
        Table t(b);
        for (bool up : {true, false}) {
            CurveTrace c = curve_C(t, up ? CurveCKind::Phi : CurveCKind::Psi, 20000);
            GenMapKind k = up ? GenMapKind::Phi : GenMapKind::Psi;
            double worst = 0.0;
            for (size_t i = 0; i < c.points.size(); i += 23) {
                auto y = try_apply(t, k, c.points[i]);
                if (!y) continue;
                worst = std::max(worst, point_polyline_distance(*y, c.points));
            }
            REQUIRE_TRUE(f, worst < 1e-7,
                         (up ? "Phi" : "Psi") << " invariance deviation " << worst << " at b=" << b);
            LineState p0 = point_P0(b), q0 = point_Q0(b), e0 = point_E0(b);
            double dp = std::min(c.points.front().dist(p0), c.points.front().dist(q0));
            double dq = std::min(c.points.back().dist(p0), c.points.back().dist(q0));
            REQUIRE_TRUE(f, dp < 1e-9 && dq < 1e-9,
                         "endpoints off by " << dp << ", " << dq << " at b=" << b);
            double de = 1e9;
            for (const auto& p : c.points) de = std::min(de, p.dist(e0));
            REQUIRE_TRUE(f, de < 1e-9, "diagonal point misses E0 by " << de << " at b=" << b);
        }
    }
}

void check_fixed_point_search(Failure& f) {
    {
        Table t(1.52);
        auto roots = exhaustive_theta_fixed_points(t, {0.0, 0.6, 0.0, 0.6}, 200);
        REQUIRE_TRUE(f, roots.size() == 4, "b=1.52: found " << roots.size() << " roots");
        LineState want[4] = {{0.0, 0.0}, point_E0(1.52), point_P0(1.52), point_Q0(1.52)};
        for (const auto& w : want) {
            double best = 1e9;
            for (const auto& r : roots) best = std::min(best, r.dist(w));
            REQUIRE_TRUE(f, best < 1e-6, "b=1.52: expected root missed by " << best);
        }
    }
    {
        Table t(1.66);
        auto roots = exhaustive_theta_fixed_points(t, {0.0, 0.6, 0.0, 0.6}, 200);
        auto jpt = level_curve_J_intersection(1.66);
        REQUIRE_TRUE(f, jpt.has_value(), "b=1.66: no J-intersection found");
        if (!jpt) return;
        LineState e1{std::sin(jpt->beta), std::sin(jpt->beta)};
        LineState e2{std::sin(jpt->alpha), std::sin(jpt->alpha)};
        double d1 = 1e9, d2 = 1e9;
        for (const auto& r : roots) {
            d1 = std::min(d1, r.dist(e1));
            d2 = std::min(d2, r.dist(e2));
        }
        REQUIRE_TRUE(f, d1 < 1e-6 && d2 < 1e-6,
                     "b=1.66: E1/E2 missed by " << d1 << ", " << d2);
        LineState phi_e1 = apply(t, GenMapKind::Phi, e1);
        REQUIRE_TRUE(f, phi_e1.dist(e2) < 1e-9, "Phi(E1) != E2: " << phi_e1.dist(e2));
    }
}

void check_manifolds(Failure& f) {
    for (double b : {1.51, 1.54}) {
        Table t(b);
        ManifoldBranch gs = grow_branch(t, BranchBase::P0, BranchKind::Stable,
                                        BranchSide::PlusQuadrant, 1.5);
        ManifoldBranch gu = grow_branch(t, BranchBase::Q0, BranchKind::Unstable,
                                        BranchSide::PlusQuadrant, 1.5);
        auto cs = diagonal_crossing(t, gs);
        auto cu = diagonal_crossing(t, gu);
        REQUIRE_TRUE(f, cs.has_value() && cu.has_value(), "branches miss the diagonal at b=" << b);
        if (!cs || !cu) continue;

        // I-symmetry: swapped stable branch lies on the unstable one
        std::vector<LineState> swapped;
        double lim = std::min(gs.polyline.params.back(), gu.polyline.params.back());
        for (size_t i = 0; i < gs.polyline.points.size(); ++i)
            if (gs.polyline.params[i] <= lim)
                swapped.push_back({gs.polyline.points[i].d_right, gs.polyline.points[i].d_left});
        double dev = max_deviation(swapped, gu.polyline.points);
        REQUIRE_TRUE(f, dev < 1e-6, "I-symmetry deviation " << dev << " at b=" << b);

        GrowOptions fine;
        fine.seed_offset = 0.5e-7;
        SplittingReport s1 = splitting(t);
        SplittingReport s2 = splitting(t, fine);
        REQUIRE_TRUE(f, std::abs(s1.delta - s2.delta) < 1e-7,
                     "delta moves by " << std::abs(s1.delta - s2.delta) << " under seed halving");
        if (std::abs(s1.delta) < 1e-8) {
            REQUIRE_TRUE(f, std::abs(s1.angle_s - 0.5 * pi()) < 1e-3,
                         "stable crossing angle " << s1.angle_s << " not perpendicular");
            REQUIRE_TRUE(f, std::abs(s1.angle_u - 0.5 * pi()) < 1e-3,
                         "unstable crossing angle " << s1.angle_u << " not perpendicular");
        }
    }
}

void check_fgf_residual(Failure& f) {
    double minimum = 1e300;
    for (int k = 0; k < 50; ++k) {
        double b = 1.5 + (1.0 + std::sqrt(0.5) - 1.5 - 2e-4) * (k + 0.5) / 50.0;
        Table t(b);
        CurveTrace s1p = singular_curve(t, SingularCurveId::S1plus, 200);
        for (const auto& x : s1p.points) {
            auto a = try_apply(t, GenMapKind::L, {x.d_right, x.d_left});
            auto c = try_apply(t, GenMapKind::L, x);
            if (!a || !c) continue;
            auto d = try_apply(t, GenMapKind::R, *c);
            if (!d) continue;
            minimum = std::min(minimum, a->dist(*d));
        }
    }
    REQUIRE_TRUE(f, minimum > threshold_FGF,
                 "grid minimum " << minimum << " not above threshold " << threshold_FGF);
}

void check_constants(Failure& f) {
    REQUIRE_NEAR(f, const_b2().value, 1.58885, 5e-5);
    REQUIRE_NEAR(f, const_b3().value, 1.62326, 5e-5);
    REQUIRE_NEAR(f, const_b_sing().value, 1.67892, 5e-5);
}

std::string portrait_bytes(const Table& t, std::uint64_t seed, int n, int iters) {
    PhasePortrait p = phase_portrait(t, seed, n, iters);
    std::ostringstream os;
    for (const auto& s : p.samples)
        os << s.traj_id << "," << s.step << "," << fmt17(s.phi) << "," << fmt17(s.theta) << "\n";
    return os.str();
}

void check_phase_portrait(Failure& f) {
    for (double b : {1.51, 1.54}) {
        Table t(b);
        std::string a = portrait_bytes(t, 42, 200, 2000);
        std::string c = portrait_bytes(t, 42, 200, 2000);
        REQUIRE_TRUE(f, a == c, "rerun differs at b=" << b);
        REQUIRE_TRUE(f, !a.empty(), "empty portrait at b=" << b);
    }
    // island confinement at b = 1.54: at least one trajectory stays near
    // the right-arc angular points of the elliptic period-6 orbit
    Table t(1.54);
    PeriodicOrbit o = orbit_elliptic6(t);
    REQUIRE_TRUE(f, o.points_angular.has_value(), "no angular period-6 data at b=1.54");
    if (!o.points_angular) return;
    std::vector<Vec2> centers;
    for (const auto& s : *o.points_angular)
        if (s.arc == ArcId::Right) centers.push_back({s.phi, s.theta});
    PhasePortrait p = phase_portrait(t, 42, 200, 2000);
    std::vector<int> count(200, 0), confined(200, 1);
    for (const auto& s : p.samples) {
        ++count[s.traj_id];
        double best = 1e9;
        for (const auto& c : centers) best = std::min(best, std::hypot(s.phi - c.x, s.theta - c.y));
        if (best > 0.35) confined[s.traj_id] = 0;
    }
    bool found = false;
    for (int i = 0; i < 200; ++i)
        if (confined[i] && count[i] >= 100) found = true;
    REQUIRE_TRUE(f, found, "no trajectory confined near the period-6 island chain");
}

struct Check {
    const char* name;
    std::function<void(Failure&)> fn;
};

const std::vector<Check>& checks() {
    static const std::vector<Check> list = {
        {"trace-elliptic", check_trace_elliptic},
        {"trace-hyperbolic", check_trace_hyperbolic},
        {"b-crit", check_b_crit},
        {"alpha0", check_alpha0},
        {"genmap-algebra", check_genmap_algebra},
        {"point-values", check_point_values},
        {"jacobian-oracles", check_jacobian_oracles},
        {"slope-ordering", check_slope_ordering},
        {"parallel-beam", check_parallel_beam},
        {"curve-invariance", check_curve_invariance},
        {"fixed-point-search", check_fixed_point_search},
        {"manifold-suite", check_manifolds},
        {"fgf-residual", check_fgf_residual},
        {"constants", check_constants},
        {"phase-portrait", check_phase_portrait},
    };
    return list;
}

} // namespace

std::vector<std::string> acceptance_check_names() {
    std::vector<std::string> names;
    for (const auto& c : checks()) names.push_back(c.name);
    return names;
}

std::vector<CheckResult> run_acceptance(const std::string& filter) {
    std::vector<CheckResult> out;
    for (const auto& c : checks()) {
        if (!filter.empty() && std::string(c.name).find(filter) == std::string::npos) continue;
        Failure f;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.fn(f);
        } catch (const std::exception& e) {
            f.failed = true;
            f.msg << "exception: " << e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        out.push_back({c.name, !f.failed, f.msg.str(),
                       std::chrono::duration<double>(t1 - t0).count()});
    }
    return out;
}

} // namespace lemon
