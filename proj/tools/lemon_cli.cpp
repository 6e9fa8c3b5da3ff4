// lemon-billiards: command-line surface of the lemon-billiard library.
// Subcommands: phase, orbit, periodic, curves, manifold, splitting-sweep,
// constants, verify.  Exit codes: 0 success, 1 internal error, 2 usage
// error, 3 verification failure.

#include "CLI11.hpp"

#include "lemon/billiard.hpp"
#include "lemon/constants.hpp"
#include "lemon/errors.hpp"
#include "lemon/genmap.hpp"
#include "lemon/io.hpp"
#include "lemon/manifolds.hpp"
#include "lemon/parallel.hpp"
#include "lemon/periodic.hpp"
#include "lemon/search.hpp"
#include "lemon/verify.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace lemon;

namespace {

struct Cfg {
    double b = 1.54;
    bool b_set = false;
    std::vector<double> b_range; // start end steps
    std::uint64_t seed = 42;
    int iterations = 2000;
    int grid = 200;
    std::string format = "csv";
    std::string out;
    int threads = 0;
    std::string filter;
};

void add_common(CLI::App* cmd, Cfg& cfg) {
    cmd->add_option("--b", cfg.b, "table parameter")->check(CLI::Range(1.0 + 1e-9, 2.0 - 1e-9));
    cmd->add_option("--b-range", cfg.b_range, "sweep START END STEPS")->expected(3);
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--iterations", cfg.iterations, "iteration count")->check(CLI::NonNegativeNumber);
    cmd->add_option("--grid", cfg.grid, "grid/sample count")->check(CLI::PositiveNumber);
    cmd->add_option("--format", cfg.format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_option("--out", cfg.out, "output path (default stdout)");
    cmd->add_option("--threads", cfg.threads, "parallelism degree");
    cmd->add_option("--filter", cfg.filter, "name filter");
}

struct Out {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Out(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

std::string json_config(const Cfg& cfg) {
    std::ostringstream os;
    os << "{\"b\":" << fmt17(cfg.b) << ",\"seed\":" << cfg.seed
       << ",\"iterations\":" << cfg.iterations << ",\"grid\":" << cfg.grid << "}";
    return os.str();
}

void emit_json(std::ostream& os, const std::string& command, const Cfg& cfg,
               const std::string& results, const std::string& residuals) {
    os << "{\"command\":\"" << command << "\",\"config\":" << json_config(cfg)
       << ",\"results\":" << results << ",\"residuals\":" << residuals << "}\n";
}

int cmd_phase(const Cfg& cfg) {
    Table t(cfg.b);
    PhasePortrait p = phase_portrait(t, cfg.seed, cfg.grid, cfg.iterations);
    Out out(cfg.out);
    if (cfg.format == "svg") {
        std::vector<Vec2> pts;
        for (const auto& s : p.samples) pts.push_back({s.phi, s.theta});
        write_svg_scatter(out.stream(), pts, -t.corner_angle, t.corner_angle, 0.0, pi());
        return 0;
    }
    if (cfg.format == "json") {
        std::ostringstream res;
        res << "[";
        for (size_t i = 0; i < p.samples.size(); ++i) {
            const auto& s = p.samples[i];
            res << (i ? "," : "") << "[" << s.traj_id << "," << s.step << "," << fmt17(s.phi)
                << "," << fmt17(s.theta) << "]";
        }
        res << "]";
        emit_json(out.stream(), "phase", cfg, res.str(), "{}");
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : p.samples)
        rows.push_back({std::to_string(s.traj_id), std::to_string(s.step), fmt17(s.phi),
                        fmt17(s.theta)});
    write_csv(out.stream(), {"traj_id", "step", "phi", "theta"}, rows);
    return 0;
}

int cmd_orbit(const Cfg& cfg) {
    Table t(cfg.b);
    Rng rng(cfg.seed);
    AngularState s{ArcId::Right, rng.uniform(-0.9 * t.corner_angle, 0.9 * t.corner_angle),
                   rng.uniform(0.1, pi() - 0.1)};
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"0", s.arc == ArcId::Right ? "right" : "left", fmt17(s.phi), fmt17(s.theta)});
    for (int i = 1; i <= cfg.iterations; ++i) {
        try {
            s = billiard_step(t, s).to;
        } catch (const CornerHit&) {
            break;
        }
        rows.push_back(
            {std::to_string(i), s.arc == ArcId::Right ? "right" : "left", fmt17(s.phi), fmt17(s.theta)});
    }
    Out out(cfg.out);
    write_csv(out.stream(), {"step", "arc", "phi", "theta"}, rows);
    return 0;
}

std::string orbit_json(const PeriodicOrbit& o) {
    std::ostringstream os;
    os << "{\"period\":" << o.period << ",\"half_trace\":" << fmt17(o.multiplier_half_trace)
       << ",\"classification\":\""
       << (o.classification == Classification::Elliptic
               ? "elliptic"
               : o.classification == Classification::Hyperbolic ? "hyperbolic" : "parabolic")
       << "\",\"points_line\":[";
    for (size_t i = 0; i < o.points_line.size(); ++i)
        os << (i ? "," : "") << "[" << fmt17(o.points_line[i].d_left) << ","
           << fmt17(o.points_line[i].d_right) << "]";
    os << "]}";
    return os.str();
}

int cmd_periodic(const Cfg& cfg) {
    Table t(cfg.b);
    Out out(cfg.out);
    if (cfg.format == "json") {
        std::ostringstream res;
        res << "{\"O2\":" << orbit_json(orbit_O2(t))
            << ",\"elliptic6\":" << orbit_json(orbit_elliptic6(t));
        if (cfg.b < std::sqrt(3.0))
            res << ",\"hyperbolic6\":" << orbit_json(orbit_hyperbolic6(t));
        res << "}";
        emit_json(out.stream(), "periodic", cfg, res.str(), "{}");
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    auto add = [&](const char* name, const PeriodicOrbit& o) {
        for (size_t i = 0; i < o.points_line.size(); ++i)
            rows.push_back({name, std::to_string(i), fmt17(o.points_line[i].d_left),
                            fmt17(o.points_line[i].d_right), fmt17(o.multiplier_half_trace)});
    };
    add("O2", orbit_O2(t));
    add("elliptic6", orbit_elliptic6(t));
    if (cfg.b < std::sqrt(3.0)) add("hyperbolic6", orbit_hyperbolic6(t));
    write_csv(out.stream(), {"orbit", "index", "d_left", "d_right", "half_trace"}, rows);
    return 0;
}

int cmd_curves(const Cfg& cfg) {
    Table t(cfg.b);
    std::vector<CurveTrace> curves;
    auto want = [&](const std::string& name) {
        return cfg.filter.empty() || name.find(cfg.filter) != std::string::npos;
    };
    if (want("C_Phi")) curves.push_back(curve_C(t, CurveCKind::Phi, cfg.grid));
    if (want("C_Psi")) curves.push_back(curve_C(t, CurveCKind::Psi, cfg.grid));
    if (want("C_prl")) curves.push_back(curve_C(t, CurveCKind::Prl, cfg.grid));
    if (want("C_Phi_sym")) curves.push_back(curve_C(t, CurveCKind::PhiSym, cfg.grid));
    if (want("C_Psi_sym")) curves.push_back(curve_C(t, CurveCKind::PsiSym, cfg.grid));
    const SingularCurveId sing[6] = {SingularCurveId::S1plus, SingularCurveId::S1minus,
                                     SingularCurveId::S2plus, SingularCurveId::S2minus,
                                     SingularCurveId::Lplus,  SingularCurveId::Lminus};
    for (auto id : sing) {
        CurveTrace c = singular_curve(t, id, cfg.grid);
        if (want(c.label)) curves.push_back(std::move(c));
    }
    for (GenMapKind k : {GenMapKind::L, GenMapKind::R, GenMapKind::Phi, GenMapKind::Psi}) {
        CurveTrace c = fixed_locus(t, k, cfg.grid);
        if (want(c.label)) curves.push_back(std::move(c));
    }
    Out out(cfg.out);
    if (cfg.format == "svg") {
        std::vector<Vec2> pts;
        for (const auto& c : curves)
            for (const auto& p : c.points) pts.push_back({p.d_left, p.d_right});
        write_svg_scatter(out.stream(), pts, -1.0, 1.0, -1.0, 1.0);
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : curves)
        for (size_t i = 0; i < c.points.size(); ++i)
            rows.push_back({c.label, fmt17(c.params[i]), fmt17(c.points[i].d_left),
                            fmt17(c.points[i].d_right)});
    write_csv(out.stream(), {"curve", "param", "d_left", "d_right"}, rows);
    return 0;
}

int cmd_manifold(const Cfg& cfg) {
    Table t(cfg.b);
    struct Named {
        const char* name;
        ManifoldBranch br;
    };
    std::vector<Named> branches;
    branches.push_back({"stable_P0_plus", grow_branch(t, BranchBase::P0, BranchKind::Stable,
                                                      BranchSide::PlusQuadrant, 2.0)});
    branches.push_back({"unstable_P0_plus", grow_branch(t, BranchBase::P0, BranchKind::Unstable,
                                                        BranchSide::PlusQuadrant, 2.0)});
    branches.push_back({"stable_Q0_plus", grow_branch(t, BranchBase::Q0, BranchKind::Stable,
                                                      BranchSide::PlusQuadrant, 2.0)});
    branches.push_back({"unstable_Q0_plus", grow_branch(t, BranchBase::Q0, BranchKind::Unstable,
                                                        BranchSide::PlusQuadrant, 2.0)});
    Out out(cfg.out);
    if (cfg.format == "json") {
        std::ostringstream res;
        SplittingReport sp = splitting(t);
        res << "{\"delta\":" << fmt17(sp.delta) << ",\"crossing_s\":["
            << fmt17(sp.crossing_s.d_left) << "," << fmt17(sp.crossing_s.d_right)
            << "],\"crossing_u\":[" << fmt17(sp.crossing_u.d_left) << ","
            << fmt17(sp.crossing_u.d_right) << "],\"angle_s\":" << fmt17(sp.angle_s)
            << ",\"angle_u\":" << fmt17(sp.angle_u) << "}";
        emit_json(out.stream(), "manifold", cfg, res.str(), "{}");
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& n : branches)
        for (size_t i = 0; i < n.br.polyline.points.size(); ++i)
            rows.push_back({n.name, fmt17(n.br.polyline.params[i]),
                            fmt17(n.br.polyline.points[i].d_left),
                            fmt17(n.br.polyline.points[i].d_right)});
    write_csv(out.stream(), {"branch", "param", "d_left", "d_right"}, rows);
    return 0;
}

int cmd_sweep(const Cfg& cfg) {
    if (cfg.b_range.size() != 3) throw CLI::ValidationError("splitting-sweep requires --b-range");
    double lo = cfg.b_range[0], hi = cfg.b_range[1];
    int steps = int(cfg.b_range[2]);
    if (steps < 1 || !(lo > 1.5) || !(hi < 1.0 + std::sqrt(0.5)))
        throw CLI::ValidationError("--b-range must lie in (1.5, 1+2^-1/2) with steps >= 1");
    std::vector<std::vector<std::string>> rows(steps);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < steps; ++i) {
        double b = steps == 1 ? lo : lo + (hi - lo) * i / double(steps - 1);
        std::vector<std::string> row;
        try {
            Table t(b);
            SplittingReport sp = splitting(t);
            row = {fmt17(b), fmt17(sp.delta), fmt17(sp.angle_s), fmt17(sp.angle_u), "ok"};
        } catch (const std::exception&) {
            row = {fmt17(b), "", "", "", "failed"};
        }
        rows[i] = std::move(row);
    }
    Out out(cfg.out);
    write_csv(out.stream(), {"b", "delta", "angle_s", "angle_u", "status"}, rows);
    return 0;
}

int cmd_constants(const Cfg& cfg) {
    struct Item {
        const char* name;
        SolvedConstant v;
    };
    std::vector<Item> items = {{"b_crit", const_b_crit()}, {"alpha0", const_alpha0()},
                               {"b2", const_b2()},         {"b3", const_b3()},
                               {"b_sing", const_b_sing()}, {"b_max", const_b_max()}};
    Out out(cfg.out);
    if (cfg.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& it : items)
            rows.push_back({it.name, fmt17(it.v.value), fmt17(it.v.residual)});
        write_csv(out.stream(), {"name", "value", "residual"}, rows);
        return 0;
    }
    std::ostringstream res, rsd;
    res << "{";
    rsd << "{";
    for (size_t i = 0; i < items.size(); ++i) {
        res << (i ? "," : "") << "\"" << items[i].name << "\":" << fmt17(items[i].v.value);
        rsd << (i ? "," : "") << "\"" << items[i].name << "\":" << fmt17(items[i].v.residual);
    }
    res << "}";
    rsd << "}";
    emit_json(out.stream(), "constants", cfg, res.str(), rsd.str());
    return 0;
}

int cmd_verify(const Cfg& cfg) {
    auto results = run_acceptance(cfg.filter);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%-20s %s  (%.2fs)%s%s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.seconds, r.detail.empty() ? "" : "  ", r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lemon billiard dynamics"};
    app.require_subcommand(1);
    Cfg cfg;

    auto* phase = app.add_subcommand("phase", "phase portrait from random initial conditions");
    auto* orbit = app.add_subcommand("orbit", "single billiard trajectory export");
    auto* periodic = app.add_subcommand("periodic", "explicit periodic orbits with stability");
    auto* curves = app.add_subcommand("curves", "invariant/singular curve exports");
    auto* manifold = app.add_subcommand("manifold", "stable/unstable branches and splitting");
    auto* sweep = app.add_subcommand("splitting-sweep", "splitting delta over a b range");
    auto* constants = app.add_subcommand("constants", "critical parameter values");
    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    for (auto* c : {phase, orbit, periodic, curves, manifold, sweep, constants, verify})
        add_common(c, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
    if (constants->parsed() && cfg.format == "csv" &&
        constants->get_option("--format")->count() == 0)
        cfg.format = "json";

    try {
        if (phase->parsed()) return cmd_phase(cfg);
        if (orbit->parsed()) return cmd_orbit(cfg);
        if (periodic->parsed()) return cmd_periodic(cfg);
        if (curves->parsed()) return cmd_curves(cfg);
        if (manifold->parsed()) return cmd_manifold(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (constants->parsed()) return cmd_constants(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
