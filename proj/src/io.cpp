#include "lemon/io.hpp"

#include "lemon/billiard.hpp"
#include "lemon/errors.hpp"

#include <cstdio>

namespace lemon {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

PhasePortrait phase_portrait(const Table& t, std::uint64_t seed, int n_traj, int iterations) {
    Rng rng(seed);
    PhasePortrait out;
    out.corner_hit.assign(n_traj, 0);
    for (int traj = 0; traj < n_traj; ++traj) {
        double phi = rng.uniform(-0.999 * t.corner_angle, 0.999 * t.corner_angle);
        double theta = rng.uniform(1e-3, pi() - 1e-3);
        AngularState s{ArcId::Right, phi, theta};
        out.samples.push_back({traj, 0, s.phi, s.theta});
        for (int step = 1; step <= iterations; ++step) {
            try {
                s = billiard_step(t, s).to;
            } catch (const CornerHit&) {
                out.corner_hit[traj] = 1;
                break;
            }
            if (s.arc == ArcId::Right) out.samples.push_back({traj, step, s.phi, s.theta});
        }
    }
    return out;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
}

void write_svg_scatter(std::ostream& os, const std::vector<Vec2>& pts, double x_lo, double x_hi,
                       double y_lo, double y_hi) {
    const double W = 1000.0, H = 1000.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
    double dx = x_hi - x_lo, dy = y_hi - y_lo;
    for (const auto& p : pts) {
        double cx = (p.x - x_lo) / dx * W;
        double cy = H - (p.y - y_lo) / dy * H;
        os << "<circle cx=\"" << fmt17(cx) << "\" cy=\"" << fmt17(cy) << "\" r=\"1\"/>\n";
    }
    os << "</svg>\n";
}

} // namespace lemon
