// Fits the three-segment Koch generator to the empirical window boundary.
//
// Stage 1 scans endpoint-compatible templates (middle angle and branch) against the
// boundary sector of a shallow patch, using that patch's own tip and 18 degree crossing
// as chord ends. Stage 2 fixes the template and fits the radius of the chord end on the
// 18 degree ray against a deeper patch, with the chord start pinned at (1, 0).
// The winners are frozen in window.hpp.

#include "rph/window.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <vector>

using namespace rph;

namespace {

std::vector<Vec2> boundary_sector_points(int depth, double grid_step, double closing) {
    const auto res = run_sequence(seed_rhombus(), {WheelDiagram::uniform(Chirality::L)}, depth, 0);
    const auto cloud = perp_cloud(res.tiling, CloudScope::Supported);
    return cell_centres(boundary_cells(cloud, grid_step, WindowOptions{closing, 6}), grid_step);
}

double sector_distance(const KochSector& k, const std::vector<Vec2>& sector) {
    return hausdorff(sample_polyline(k.polyline, 0.002), sector);
}

Vec2 outermost(const std::vector<Vec2>& pts, double deg0, double deg1) {
    Vec2 best{};
    double r = -1;
    for (const auto& p : polar_sector(pts, deg0, deg1, 0.0))
        if (std::hypot(p.x, p.y) > r) r = std::hypot(p.x, p.y), best = p;
    return best;
}

// Templates whose angles are multiples of 18 degrees, the directions available to
// perpendicular images of module edges.
std::vector<KochTemplate> lattice_family() {
    std::vector<KochTemplate> out;
    for (int a = -5; a <= 5; ++a)
        for (int b = -5; b <= 5; ++b)
            for (int c = -5; c <= 5; ++c) {
                auto t = KochTemplate::from_angles(a * M_PI / 10, b * M_PI / 10, c * M_PI / 10);
                try {
                    check_template(t);
                    out.push_back(t);
                } catch (const std::invalid_argument&) {
                }
            }
    return out;
}

std::vector<KochTemplate> template_family(double step_deg) {
    std::vector<KochTemplate> out;
    const double l = 1.0 / (kTau * kTau);
    for (double t2 = -90.0; t2 <= 90.0 + 1e-9; t2 += step_deg) {
        const double a2 = t2 * M_PI / 180.0;
        // The outer segments must supply w = (1, 0) - middle segment, split into two unit-l legs.
        const double wx = 1.0 - l * std::cos(a2), wy = -l * std::sin(a2);
        const double wn = std::hypot(wx, wy);
        if (wn > 2 * l) continue;
        const double base = std::atan2(wy, wx), half = std::acos(wn / (2 * l));
        for (int s : {1, -1}) out.push_back(KochTemplate::from_angles(base + s * half, a2, base - s * half));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Calibrate the Koch generator of the all-L window boundary"};
    int template_depth = 4, endpoint_depth = 6;
    double grid_step = 0.005, angle_step = 0.5, closing = WindowOptions{}.closing_factor;
    bool continuous = false;
    app.add_option("--template-depth", template_depth, "patch depth for the template scan");
    app.add_option("--endpoint-depth", endpoint_depth, "patch depth for the chord-end fit");
    app.add_option("--grid-step", grid_step, "boundary grid step");
    app.add_option("--angle-step", angle_step, "middle-angle scan step in degrees");
    app.add_option("--closing", closing, "closing radius in units of the max gap");
    app.add_flag("--continuous", continuous, "scan the continuous template family");
    CLI11_PARSE(app, argc, argv);

    const auto shallow = boundary_sector_points(template_depth, grid_step, closing);
    const Vec2 tip = outermost(shallow, -3.0, 3.0);
    const Vec2 end = outermost(shallow, 17.5, 18.5);
    const auto tip_deg = std::atan2(tip.y, tip.x) * 180.0 / M_PI;
    const auto sector = polar_sector(shallow, tip_deg, 18.0, 0.75);

    double best_h = 1e9;
    KochTemplate best{};
    for (const auto& tpl : continuous ? template_family(angle_step) : lattice_family()) {
        const double h = sector_distance(koch_sector(template_depth, tpl, tip, end), sector);
        if (h < best_h) best_h = h, best = tpl;
    }
    const auto ang = best.angles();
    std::printf("template (depth %d): angles %.2f %.2f %.2f deg, hausdorff %.4f\n", template_depth,
                ang[0] * 180 / M_PI, ang[1] * 180 / M_PI, ang[2] * 180 / M_PI, best_h);

    const auto deep = polar_sector(boundary_sector_points(endpoint_depth, grid_step, closing), 0.0, 18.0, 0.75);
    double best_rho = 0, best_rh = 1e9;
    for (double rho = 0.80; rho <= 0.95 + 1e-9; rho += 0.0025) {
        const Vec2 b{rho * std::cos(M_PI / 10), rho * std::sin(M_PI / 10)};
        const double h = sector_distance(koch_sector(endpoint_depth, best, koch_chord_start(), b), deep);
        if (h < best_rh) best_rh = h, best_rho = rho;
    }
    std::printf("chord end radius (depth %d): %.4f, hausdorff %.4f\n", endpoint_depth, best_rho, best_rh);
    return 0;
}
