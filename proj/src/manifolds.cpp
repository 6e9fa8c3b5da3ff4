#include "lemon/manifolds.hpp"

#include "lemon/errors.hpp"
#include "lemon/parallel.hpp"
#include "lemon/polyline.hpp"

#include <algorithm>
#include <cmath>

namespace lemon {

namespace {

LineState seed_point(const LineState& base, const LineState& dir, double s) {
    return {base.d_left + s * dir.d_left, base.d_right + s * dir.d_right};
}

double diag_gap(const LineState& p) { return p.d_left - p.d_right; }

} // namespace

LineState ManifoldBranch::eval(const Table& t, double s, int k) const {
    LineState x = seed_point(base, dir, s);
    GenMapKind m = map_kind();
    for (int i = 0; i < k; ++i) x = apply(t, m, x);
    return x;
}

ManifoldBranch grow_branch(const Table& t, BranchBase base, BranchKind kind, BranchSide side,
                           double arc_length_budget, const GrowOptions& opt) {
    const double b_max = 1.0 + std::sqrt(0.5);
    if (!(t.b > 1.5 && t.b < b_max))
        throw std::domain_error("grow_branch: requires 1.5 < b < 1 + 2^{-1/2}");
    HyperbolicEigendata eig = hyperbolic_eigendata(t);

    ManifoldBranch br;
    br.base_id = base;
    br.kind = kind;
    br.side = side;
    br.seed_offset = opt.seed_offset;
    br.growth_steps = 0;

    // eigen-directions: (1, m) at P0; the I-conjugacy Theta o I = I o
    // Theta^{-1} sends the stable slope at P0 to the unstable direction at
    // Q0 with swapped components
    double m;
    if (base == BranchBase::P0) {
        br.base = point_P0(t.b);
        m = (kind == BranchKind::Stable) ? eig.slope_s : eig.slope_u;
        br.dir = {1.0, m};
    } else {
        br.base = point_Q0(t.b);
        m = (kind == BranchKind::Stable) ? eig.slope_u : eig.slope_s;
        br.dir = {m, 1.0};
    }
    double n = std::hypot(br.dir.d_left, br.dir.d_right);
    br.dir = {br.dir.d_left / n, br.dir.d_right / n};
    // the "+" branch points into the quadrant between P0 and Q0
    double sign = (base == BranchBase::P0) ? br.dir.d_left : br.dir.d_right;
    if ((side == BranchSide::PlusQuadrant) != (sign > 0.0)) br.dir = -br.dir;

    const double s0 = opt.seed_offset;
    const GenMapKind M = br.map_kind();
    LineState x1 = apply(t, M, seed_point(br.base, br.dir, s0));
    double lam = x1.dist(br.base) / s0;
    br.expansion = lam;
    if (!(lam > 1.0 + 1e-12))
        throw Degenerate("grow_branch: eigen-direction is not expanded by the map");

    // fundamental segment parameters in [s0, lam*s0]
    std::vector<double> params;
    const int n_init = 17;
    for (int i = 0; i < n_init; ++i) params.push_back(s0 * std::pow(lam, i / double(n_init - 1)));
    std::vector<LineState> cur;
    for (double s : params) cur.push_back(seed_point(br.base, br.dir, s));

    auto push = [&](const LineState& p, double s, int k) {
        br.polyline.points.push_back(p);
        br.seed_param.push_back(s);
        br.gen.push_back(k);
        size_t i = br.polyline.points.size();
        br.polyline.params.push_back(
            i == 1 ? 0.0 : br.polyline.params.back() + p.dist(br.polyline.points[i - 2]));
    };

    push(cur.front(), params.front(), 0);
    for (int k = 0; k <= opt.max_generations; ++k) {
        if (k > 0) {
            // advance every tracked seed by one map application
            for (size_t i = 0; i < cur.size(); ++i) {
                auto y = try_apply(t, M, cur[i]);
                if (!y) {
                    br.truncated = true;
                    cur.resize(i);
                    params.resize(i);
                    break;
                }
                cur[i] = *y;
            }
            if (cur.size() < 2) break;
            br.growth_steps = k;
        }
        // refine until spacing is below max_gap
        for (int pass = 0; pass < 40; ++pass) {
            bool split = false;
            for (size_t i = 0; i + 1 < cur.size(); ++i) {
                if (cur[i].dist(cur[i + 1]) > opt.max_gap) {
                    double sm = std::sqrt(params[i] * params[i + 1]);
                    LineState pm;
                    try {
                        pm = br.eval(t, sm, k);
                    } catch (const Error&) {
                        continue;
                    }
                    params.insert(params.begin() + i + 1, sm);
                    cur.insert(cur.begin() + i + 1, pm);
                    split = true;
                    ++i;
                }
            }
            if (!split) break;
        }
        for (size_t i = (k == 0 ? 1 : 0); i < cur.size(); ++i) push(cur[i], params[i], k);
        if (br.truncated) break;
        if (br.polyline.params.back() >= arc_length_budget) break;
    }
    return br;
}

std::optional<DiagonalCrossing> diagonal_crossing(const Table& t, const ManifoldBranch& br) {
    const auto& pts = br.polyline.points;
    if (pts.size() < 2) return std::nullopt;
    double g0 = diag_gap(pts[0]);
    size_t idx = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
        if (diag_gap(pts[i]) == 0.0 || diag_gap(pts[i]) * g0 < 0.0) {
            idx = i;
            break;
        }
    }
    if (idx == 0) return std::nullopt;

    // bisection in the seed parameter at the generation of the later point
    int k = br.gen[idx];
    double s_hi = br.seed_param[idx];
    double s_lo = (br.gen[idx - 1] == k) ? br.seed_param[idx - 1] : br.seed_offset;
    auto g = [&](double s) { return diag_gap(br.eval(t, s, k)); };
    double glo = g(s_lo);
    if (glo * g(s_hi) > 0.0) return std::nullopt; // numerically tangential
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (s_lo + s_hi);
        if (glo * g(mid) <= 0.0)
            s_hi = mid;
        else {
            s_lo = mid;
            glo = g(s_lo);
        }
        if (s_hi - s_lo < 1e-16 * s_hi) break;
    }
    double s = 0.5 * (s_lo + s_hi);
    LineState p = br.eval(t, s, k);

    double h = std::max(1e-9 * s, 1e-13);
    LineState pa = br.eval(t, s - h, k);
    LineState pb = br.eval(t, s + h, k);
    double tx = pb.d_left - pa.d_left, ty = pb.d_right - pa.d_right;
    double dotd = std::abs(tx + ty) / std::sqrt(2.0);
    double crs = std::abs(tx - ty) / std::sqrt(2.0);
    return DiagonalCrossing{p, std::atan2(crs, dotd)};
}

SplittingReport splitting(const Table& t, const GrowOptions& opt) {
    // the "+" branches meet the diagonal well within arclength 1.5 of the
    // base (the bases sit at distance < 1 from the diagonal)
    ManifoldBranch gs = grow_branch(t, BranchBase::P0, BranchKind::Stable,
                                    BranchSide::PlusQuadrant, 1.5, opt);
    ManifoldBranch gu = grow_branch(t, BranchBase::Q0, BranchKind::Unstable,
                                    BranchSide::PlusQuadrant, 1.5, opt);
    auto cs = diagonal_crossing(t, gs);
    auto cu = diagonal_crossing(t, gu);
    if (!cs || !cu) throw MissingCrossing("splitting: a branch did not reach the diagonal");
    SplittingReport r;
    r.crossing_s = cs->point;
    r.crossing_u = cu->point;
    r.angle_s = cs->angle;
    r.angle_u = cu->angle;
    r.delta = std::sqrt(2.0) * (cs->point.d_left - cu->point.d_left);
    return r;
}

AvoidanceReport branch_avoids_curves(const Table& t, const ManifoldBranch& br) {
    AvoidanceReport rep{};
    const std::vector<LineState>& pts =
        br.polyline.points.empty() ? std::vector<LineState>{br.base} : br.polyline.points;

    CurveTrace prl = curve_C(t, CurveCKind::Prl, 600);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, point_polyline_distance(p, prl.points));
    rep.dist_C_prl = best;

    const SingularCurveId ids[6] = {SingularCurveId::S1plus, SingularCurveId::S1minus,
                                    SingularCurveId::S2plus, SingularCurveId::S2minus,
                                    SingularCurveId::Lplus,  SingularCurveId::Lminus};
    for (int i = 0; i < 6; ++i) {
        CurveTrace c = singular_curve(t, ids[i], 600);
        double d = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) d = std::min(d, point_polyline_distance(p, c.points));
        rep.dist_singular[i] = d;
    }
    return rep;
}

} // namespace lemon
