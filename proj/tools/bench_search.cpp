// Benchmark: OpenMP fixed-point search kernel vs the serial reference.
// Also recomputes the brute-force residual minimum behind the frozen
// fgf-residual threshold (--fgf).

#include "lemon/genmap.hpp"
#include "lemon/search.hpp"
#include "lemon/types.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>

using namespace lemon;

static double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

static void fgf_scan() {
    double minimum = 1e300;
    double arg_b = 0.0;
    for (int k = 0; k < 400; ++k) {
        double b = 1.5 + (1.0 + std::sqrt(0.5) - 1.5 - 1e-6) * (k + 0.5) / 400.0;
        Table t(b);
        CurveTrace s1p = singular_curve(t, SingularCurveId::S1plus, 2000);
        for (const auto& x : s1p.points) {
            auto a = try_apply(t, GenMapKind::L, {x.d_right, x.d_left});
            auto c = try_apply(t, GenMapKind::L, x);
            if (!a || !c) continue;
            auto d = try_apply(t, GenMapKind::R, *c);
            if (!d) continue;
            double r = a->dist(*d);
            if (r < minimum) {
                minimum = r;
                arg_b = b;
            }
        }
    }
    std::printf("fine-scan minimum %.17g at b = %.17g (suggested threshold %.17g)\n", minimum,
                arg_b, 0.5 * minimum);
}

int main(int argc, char** argv) {
    if (argc > 1 && std::strcmp(argv[1], "--fgf") == 0) {
        fgf_scan();
        return 0;
    }
    int grid = argc > 1 ? std::atoi(argv[1]) : 120;
    Table t(1.52);
    SearchRegion region{0.0, 0.6, 0.0, 0.6};

    double t0 = now();
    auto serial = exhaustive_theta_fixed_points_serial(t, region, grid);
    double t1 = now();
    auto parallel = exhaustive_theta_fixed_points(t, region, grid);
    double t2 = now();

    bool same = serial.size() == parallel.size();
    for (size_t i = 0; same && i < serial.size(); ++i)
        same = serial[i].dist(parallel[i]) == 0.0;

    std::printf("grid %d: serial %.3fs, openmp %.3fs, speedup %.2fx, roots %zu, identical %s\n",
                grid, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1), serial.size(),
                same ? "yes" : "NO");
    return same ? 0 : 1;
}
