#include "lemon/parallel.hpp"

#include "lemon/errors.hpp"
#include "lemon/genmap.hpp"
#include "lemon/periodic.hpp"

#include <algorithm>
#include <cmath>

namespace lemon {

namespace {

void check_params(const AngleParams& p) {
    if (std::abs(p.alpha) < 1e-15 && std::abs(p.beta) < 1e-15)
        throw Degenerate("parallel construction: (alpha, beta) = (0,0) is excluded");
    // small negative slack: finite-difference gradients probe just past 0
    if (p.alpha < -1e-3 || p.beta < -1e-3 || p.alpha + p.beta >= 0.5 * pi() - 1e-12)
        throw std::domain_error("parallel construction: (alpha, beta) outside D");
}

double level_gap(double b, const AngleParams& p) { return b_squared(p) - b * b; }

Vec2 level_grad(double b, const AngleParams& p) {
    const double h = 1e-7;
    double ga = (level_gap(b, {p.alpha + h, p.beta}) - level_gap(b, {p.alpha - h, p.beta})) / (2.0 * h);
    double gb = (level_gap(b, {p.alpha, p.beta + h}) - level_gap(b, {p.alpha, p.beta - h})) / (2.0 * h);
    return {ga, gb};
}

// Newton correction transverse to the level curve.
AngleParams level_correct(double b, AngleParams p) {
    for (int i = 0; i < 12; ++i) {
        double g = level_gap(b, p);
        if (std::abs(g) < 1e-13 * std::max(1.0, b * b)) break;
        Vec2 gr = level_grad(b, p);
        double n2 = gr.dot(gr);
        p.alpha -= g * gr.x / n2;
        p.beta -= g * gr.y / n2;
    }
    return p;
}

double eta_of_b(double b) { return 1.0 / (2.0 * std::sqrt(b * b - 2.0)); }

// Dense predictor-corrector march of the upper-wedge half of the level
// curve, from (0, beta_end) to the diagonal.
std::vector<AngleParams> march_upper_half(double b) {
    const double b_max = 1.0 + std::sqrt(0.5);
    if (!(b > 1.5 && b <= b_max + 1e-12))
        throw std::domain_error("trace_level_curve_b: requires 1.5 < b <= 1 + 2^{-1/2}");
    const double beta_end = std::acos(std::min(1.0, eta_of_b(b)));
    // small step: downstream invariance checks rely on the polyline
    // sagitta staying below 1e-8
    const double step = 2.5e-4;
    const double quarter = 0.25 * pi();

    std::vector<AngleParams> pts;
    AngleParams x{0.0, beta_end};
    pts.push_back(x);
    Vec2 prev_tan{1.0, 0.0};
    for (int it = 0; it < 80000; ++it) {
        Vec2 gr = level_grad(b, x);
        Vec2 tan = gr.perp();
        double tn = tan.norm();
        tan = {tan.x / tn, tan.y / tn};
        if (tan.dot(prev_tan) < 0.0) tan = -tan;
        AngleParams nxt{x.alpha + step * tan.x, x.beta + step * tan.y};
        nxt = level_correct(b, nxt);
        prev_tan = tan;
        if (std::hypot(nxt.alpha - quarter, nxt.beta - quarter) < 1e-4) {
            // essential singularity of the construction; stop short
            pts.push_back(nxt);
            return pts;
        }
        if (nxt.beta - nxt.alpha <= 0.0) {
            // crossed the diagonal; finish with the analytic crossing
            double ad = std::acos(1.0 / (2.0 * (b - 1.0)));
            if (std::hypot(ad - quarter, ad - quarter) > 1e-4) pts.push_back({ad, ad});
            return pts;
        }
        pts.push_back(nxt);
        x = nxt;
    }
    throw NoConvergence("trace_level_curve_b: continuation did not reach the diagonal");
}

std::vector<AngleParams> resample(const std::vector<AngleParams>& pts, int n) {
    std::vector<double> cum(pts.size(), 0.0);
    for (size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] + std::hypot(pts[i].alpha - pts[i - 1].alpha, pts[i].beta - pts[i - 1].beta);
    double total = cum.back();
    std::vector<AngleParams> out;
    out.reserve(n);
    size_t j = 0;
    for (int i = 0; i < n; ++i) {
        double s = total * i / double(n - 1);
        while (j + 1 < cum.size() && cum[j + 1] < s) ++j;
        if (j + 1 >= pts.size()) {
            out.push_back(pts.back());
            continue;
        }
        double seg = cum[j + 1] - cum[j];
        double w = (seg > 0.0) ? (s - cum[j]) / seg : 0.0;
        out.push_back({pts[j].alpha + w * (pts[j + 1].alpha - pts[j].alpha),
                       pts[j].beta + w * (pts[j + 1].beta - pts[j].beta)});
    }
    out.front() = pts.front(); // keep the endpoints exact
    out.back() = pts.back();
    return out;
}

} // namespace

double b_squared(const AngleParams& p) {
    check_params(p);
    const double sa = std::sin(p.alpha), sb = std::sin(p.beta);
    const double sab = std::sin(p.alpha + p.beta);
    const double s2ab = std::sin(2.0 * (p.alpha + p.beta));
    return 1.0 + (sa + sb) / sab + sa * sb / (sab * sab) + (sa - sb) * (sa - sb) / (s2ab * s2ab);
}

ParallelOrbit build_parallel_orbit(const AngleParams& p) {
    check_params(p);
    const double a = p.alpha, be = p.beta;
    const double s2ab = std::sin(2.0 * (a + be));

    ParallelOrbit o;
    o.params = p;
    const double pref = 2.0 * std::sin(0.5 * (a + be)) / s2ab;
    o.t = pref * std::cos(0.5 * (a + 3.0 * be));
    o.s = pref * std::cos(0.5 * (3.0 * a + be));
    o.p1 = {std::cos(a), std::sin(a)};
    o.p3 = {std::cos(be), -std::sin(be)};
    o.p2 = {(std::sin(be) * std::cos(2.0 * a) + std::sin(a) * std::cos(2.0 * be)) / s2ab,
            (std::sin(2.0 * a) * std::sin(be) - std::sin(a) * std::sin(2.0 * be)) / s2ab};
    o.o_right = o.p2 + Vec2{std::cos(a - be), std::sin(a - be)};
    o.b = std::sqrt(b_squared(p));
    o.d_l1 = std::sin(a);
    o.d_l3 = std::sin(be);
    o.d_r1 = std::sin(a) - o.o_right.y;
    o.d_r3 = std::sin(be) + o.o_right.y;
    return o;
}

double F_J(const AngleParams& p) {
    const double a = p.alpha, b = p.beta;
    return (std::cos(a) + std::cos(b)) * std::cos(a + b) - std::sin(a) * std::sin(b);
}

double F_T(const AngleParams& p) {
    const double a = p.alpha, b = p.beta;
    const double c = std::cos(a + b);
    const double d = std::sin(a) - std::sin(b);
    return c * c * ((std::cos(a) + std::cos(b)) * c - std::sin(a) * std::sin(b)) +
           (1.0 + c) * d * d;
}

double solve_alpha0() {
    auto g = [](double a) { return 2.0 * std::cos(a) * std::cos(2.0 * a) - std::sin(a) * std::sin(a); };
    double lo = 0.5, hi = 0.75;
    for (int i = 0; i < 100; ++i) {
        double mid = 0.5 * (lo + hi);
        if (g(lo) * g(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double parallel_beam_final_curvature(const AngleParams& p) {
    ParallelOrbit o = build_parallel_orbit(p);
    auto reflect = [](const Vec2& u, const Vec2& nu) { return u - (2.0 * u.dot(nu)) * nu; };

    Vec2 u1{1.0, 0.0};
    Vec2 nu1 = o.p1;
    double d1 = std::abs(u1.dot(nu1));
    Vec2 u2 = reflect(u1, nu1);
    Vec2 nu2 = o.p2 - o.o_right;
    double d2 = std::abs(u2.dot(nu2));
    Vec2 u3 = reflect(u2, nu2);
    Vec2 nu3 = o.p3;
    double d3 = std::abs(u3.dot(nu3));
    double tau1 = (o.p2 - o.p1).norm();
    double tau2 = (o.p3 - o.p2).norm();

    double k1p = 2.0 / d1; // incoming beam parallel: curvature 0
    double k2m = k1p / (tau1 * k1p - 1.0);
    double k2p = 2.0 / d2 - k2m;
    double k3m = k2p / (tau2 * k2p - 1.0);
    return 2.0 / d3 - k3m;
}

std::vector<AngleParams> sample_T_curve(int n) {
    const double a0 = solve_alpha0();
    const double lo_sigma = 2.0 * a0 + 1e-4;
    const double hi_sigma = 0.5 * pi() - 1e-4;
    const int half = (n + 1) / 2;
    std::vector<AngleParams> out;
    for (int i = 0; i < half; ++i) {
        double sigma = lo_sigma + (hi_sigma - lo_sigma) * (i + 0.5) / half;
        auto h = [&](double d) { return F_T({0.5 * sigma - d, 0.5 * sigma + d}); };
        double dlo = 0.0, dhi = 0.5 * sigma - 1e-9;
        if (h(dlo) * h(dhi) > 0.0) continue;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (dlo + dhi);
            if (h(dlo) * h(mid) <= 0.0)
                dhi = mid;
            else
                dlo = mid;
        }
        double d = 0.5 * (dlo + dhi);
        out.push_back({0.5 * sigma - d, 0.5 * sigma + d});
        if ((int)out.size() < n) out.push_back({0.5 * sigma + d, 0.5 * sigma - d});
    }
    if ((int)out.size() > n) out.resize(n);
    return out;
}

double solve_dr13_diagonal_crossing() {
    const double u = 1e-5;
    auto h = [](const AngleParams& p) {
        ParallelOrbit o = build_parallel_orbit(p);
        return o.d_r1 - o.d_r3;
    };
    auto g = [&](double a) {
        return (h({a + u, a - u}) - h({a - u, a + u})) / (2.0 * u);
    };
    double lo = 0.3, hi = 0.78, glo = g(lo);
    double blo = lo, bhi = hi;
    bool found = false;
    for (int i = 1; i <= 64; ++i) {
        double x = lo + (hi - lo) * i / 64.0;
        double gx = g(x);
        if (glo * gx <= 0.0) {
            blo = lo + (hi - lo) * (i - 1) / 64.0;
            bhi = x;
            found = true;
            break;
        }
        glo = gx;
    }
    if (!found) throw NoConvergence("solve_dr13_diagonal_crossing: no sign change");
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (blo + bhi);
        if (g(blo) * g(mid) <= 0.0)
            bhi = mid;
        else
            blo = mid;
    }
    return 0.5 * (blo + bhi);
}

AngleCurve trace_level_curve_b(double b, int n) {
    // resample the halves separately so the analytic diagonal vertex
    // survives resampling exactly
    std::vector<AngleParams> upper = resample(march_upper_half(b), std::max(3, (n + 1) / 2));
    std::vector<AngleParams> pts = upper;
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
        if (it == upper.rbegin() && std::abs(it->alpha - it->beta) < 1e-15) continue;
        pts.push_back({it->beta, it->alpha});
    }
    AngleCurve c;
    c.points = pts;
    double cum = 0.0;
    c.params.push_back(0.0);
    for (size_t i = 1; i < pts.size(); ++i) {
        cum += std::hypot(pts[i].alpha - pts[i - 1].alpha, pts[i].beta - pts[i - 1].beta);
        c.params.push_back(cum);
    }
    return c;
}

std::optional<AngleParams> level_curve_J_intersection(double b) {
    std::vector<AngleParams> upper = march_upper_half(b);
    for (size_t i = 1; i < upper.size(); ++i) {
        double f0 = F_J(upper[i - 1]);
        double f1 = F_J(upper[i]);
        if (upper[i].beta - upper[i].alpha < 1e-9) break; // reached the diagonal
        if (f0 == 0.0) return upper[i - 1];
        if (f0 * f1 < 0.0) {
            AngleParams lo = upper[i - 1], hi = upper[i];
            for (int it = 0; it < 60; ++it) {
                AngleParams mid = level_correct(b, {0.5 * (lo.alpha + hi.alpha), 0.5 * (lo.beta + hi.beta)});
                if (F_J(lo) * F_J(mid) <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            return level_correct(b, {0.5 * (lo.alpha + hi.alpha), 0.5 * (lo.beta + hi.beta)});
        }
    }
    return std::nullopt;
}

LineState H_up(const AngleParams& p) {
    check_params(p);
    const double a = p.alpha, b = p.beta;
    const double s2ab = std::sin(2.0 * (a + b));
    double dl = std::sin(b) - std::sin(b - a) +
                (std::sin(2.0 * a) * std::sin(b) - std::sin(a) * std::sin(2.0 * b)) / s2ab;
    return {dl, std::sin(b)};
}

LineState H_down(const AngleParams& p) {
    check_params(p);
    const double a = p.alpha, b = p.beta;
    const double s2ab = std::sin(2.0 * (a + b));
    double dr = std::sin(a) + std::sin(b - a) -
                (std::sin(2.0 * a) * std::sin(b) - std::sin(a) * std::sin(2.0 * b)) / s2ab;
    return {std::sin(a), dr};
}

double slope_m_up(double eta) {
    return -eta * eta * (2.0 * eta * eta * eta - 2.0 * eta * eta + 1.0) /
           (eta * eta * eta + 1.0);
}

double slope_m_down(double eta) {
    const double e = eta;
    return (-2.0 * e * e * e * e * e + 2.0 * e * e * e * e - e * e * e + e - 1.0) /
           (e * (e + 1.0));
}

EndpointSlopes endpoint_slopes(const Table& t) {
    const double b_max = 1.0 + std::sqrt(0.5);
    if (!(t.b > 1.5 && t.b <= b_max + 1e-12))
        throw std::domain_error("endpoint_slopes: requires 1.5 < b <= 1 + 2^{-1/2}");
    double eta = eta_of_b(t.b);
    return {slope_m_up(eta), slope_m_down(eta)};
}

std::vector<CurveTrace> curve_C_prl_segments(const Table& t, int n) {
    const double b = t.b;
    std::vector<AngleParams> upper = march_upper_half(b);
    const double b_crit_approx = 1.634773; // used only to decide truncation; exact test below
    AngleParams cut = upper.back();        // diagonal crossing (E1 = E0 for b <= b_crit)
    if (b > b_crit_approx) {
        auto j = level_curve_J_intersection(b);
        if (j) cut = *j;
    }
    // portion of the upper half from (0, beta_end) to the cut point
    std::vector<AngleParams> part;
    for (const auto& p : upper) {
        if (p.alpha >= cut.alpha) break;
        part.push_back(p);
    }
    part.push_back(cut);
    part = resample(part, n);

    auto mk = [&](auto&& f, const char* label) {
        CurveTrace tr;
        tr.label = label;
        double cum = 0.0;
        LineState prev;
        for (size_t i = 0; i < part.size(); ++i) {
            LineState q = f(part[i]);
            if (i > 0) cum += q.dist(prev);
            tr.points.push_back(q);
            tr.params.push_back(cum);
            prev = q;
        }
        return tr;
    };
    std::vector<CurveTrace> out;
    out.push_back(mk([&](const AngleParams& p) { return H_up(p); }, "gamma1"));
    out.push_back(mk([&](const AngleParams& p) { return H_up(AngleParams{p.beta, p.alpha}); }, "gamma2"));
    out.push_back(mk([&](const AngleParams& p) { LineState q = H_up(p); return LineState{q.d_right, q.d_left}; }, "gamma3"));
    out.push_back(mk([&](const AngleParams& p) { LineState q = H_up(AngleParams{p.beta, p.alpha}); return LineState{q.d_right, q.d_left}; }, "gamma4"));
    return out;
}

CurveTrace curve_C(const Table& t, CurveCKind which, int n) {
    const double b = t.b;
    CurveTrace tr;
    auto fill_from_level = [&](auto&& f, const char* label) {
        AngleCurve lc = trace_level_curve_b(b, n);
        tr.label = label;
        for (size_t i = 0; i < lc.points.size(); ++i) {
            tr.points.push_back(f(lc.points[i]));
            tr.params.push_back(lc.params[i]);
        }
    };
    switch (which) {
        case CurveCKind::Phi:
            fill_from_level([&](const AngleParams& p) { return H_up(p); }, "C_Phi");
            break;
        case CurveCKind::Psi:
            fill_from_level([&](const AngleParams& p) { return H_down(p); }, "C_Psi");
            break;
        case CurveCKind::PhiSym:
        case CurveCKind::PsiSym: {
            tr.label = (which == CurveCKind::PhiSym) ? "C_Phi_sym" : "C_Psi_sym";
            for (int i = 0; i < n; ++i) {
                double x = (1.0 - 1e-6) * i / double(n - 1);
                LineState q = apply_L(t, {-x, (b - 1.0) * x});
                if (std::abs(q.d_left) > 1.0 || std::abs(q.d_right) > 1.0) break;
                if (which == CurveCKind::PsiSym) q = {q.d_right, q.d_left};
                tr.points.push_back(q);
                tr.params.push_back(x);
            }
            break;
        }
        case CurveCKind::Prl: {
            // closed traversal P0 -> E1 -> Q0 -> E2 -> P0
            auto segs = curve_C_prl_segments(t, n);
            tr.label = "C_prl";
            auto append = [&](const CurveTrace& s, bool rev) {
                int m = (int)s.points.size();
                for (int i = 0; i < m; ++i) {
                    const LineState& q = rev ? s.points[m - 1 - i] : s.points[i];
                    if (!tr.points.empty() && tr.points.back().dist(q) < 1e-15) continue;
                    tr.points.push_back(q);
                    tr.params.push_back((double)tr.points.size() - 1.0);
                }
            };
            append(segs[0], false); // P0 -> E1
            append(segs[2], true);  // E1 -> Q0
            append(segs[1], false); // Q0 -> E2
            append(segs[3], true);  // E2 -> P0
            break;
        }
    }
    return tr;
}

} // namespace lemon
