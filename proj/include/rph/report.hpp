#pragma once
// The JSON analysis report of a single patch.

#include "rph/io.hpp"
#include "rph/stats.hpp"
#include "rph/symmetry.hpp"
#include "rph/window.hpp"

namespace rph {

struct AnalysisOptions {
    double grid_step = 0.02;       // window area
    double boundary_step = 0.005;  // boundary for box counting
    double clip = 0.8;
};

namespace detail {

template <class T, std::size_t N>
json rounded(const std::array<T, N>& a) {
    json out = json::array();
    for (const auto& x : a) out.push_back(round_sig(static_cast<double>(x)));
    return out;
}

}  // namespace detail

/// Densities, window area, boundary dimension and symmetry of a patch. Every float is
/// rounded to 12 significant digits; key order is fixed.
inline json analysis_report(const Tiling& t, const AnalysisOptions& opt = {}) {
    using detail::rounded;
    json rep;
    rep["schema_version"] = kSchemaVersion;
    rep["depth"] = t.depth;
    const auto counts = count_kinds(t.faces);
    rep["tiling"] = json{{"vertices", t.vertices.size()},
                         {"faces", t.faces.size()},
                         {"R", counts.R},
                         {"P", counts.P},
                         {"H", counts.H},
                         {"unknown", counts.unknown}};

    const auto f = tile_frequencies(t, opt.clip);
    rep["frequencies"] = json{{"clip", round_sig(opt.clip)},
                              {"counts", f.counts},
                              {"weights", rounded(f.weights)},
                              {"ratios", rounded(f.ratios)},
                              {"degenerate", f.degenerate}};

    const auto d = density_report(t, opt.clip);
    rep["densities"] = json{{"n_R", round_sig(d.n_R)},
                            {"n_P", round_sig(d.n_P)},
                            {"n_H", round_sig(d.n_H)},
                            {"v", round_sig(d.v)},
                            {"patch_area", round_sig(d.patch_area)},
                            {"a", round_sig(d.a)},
                            {"w", round_sig(d.w)},
                            {"Omega4", round_sig(d.Omega4)},
                            {"residuals", rounded(d.residuals)},
                            {"deviations", rounded(d.deviations)},
                            {"area_closure", round_sig(d.area_closure)},
                            {"degenerate", d.degenerate}};

    const auto cloud = perp_cloud(t, CloudScope::Supported);
    const bool sparse = cloud.points.size() < 2;
    rep["window"] = json{{"points", cloud.points.size()},
                         {"max_radius", round_sig(max_radius(cloud))},
                         {"within_sanity_bound", within_sanity_bound(cloud)},
                         {"grid_step", round_sig(opt.grid_step)},
                         {"area", round_sig(window_area(cloud, opt.grid_step))},
                         {"expected_area", round_sig(rph_window_area())},
                         {"degenerate", sparse}};

    FractalFit fit;
    fit.degenerate = true;
    if (!sparse) fit = box_dimension(boundary_cells(cloud, opt.boundary_step), opt.boundary_step);
    rep["fractal"] = json{{"grid_step", round_sig(opt.boundary_step)},
                          {"scales", fit.scales.size()},
                          {"slope", round_sig(fit.slope)},
                          {"r2", round_sig(fit.r2)},
                          {"expected_slope", round_sig(std::log(3.0) / std::log(kTau * kTau))},
                          {"degenerate", fit.degenerate}};

    const auto sym = empirical_symmetry_report(cloud);
    rep["symmetry"] = json{{"group", sym.group.name()},
                           {"order", sym.group.order()},
                           {"tolerance", round_sig(sym.tolerance)},
                           {"mismatch", rounded(sym.mismatch)},
                           {"degenerate", sparse || t.depth < 3}};
    return rep;
}

}  // namespace rph
