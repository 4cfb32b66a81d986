#pragma once
// Tile and vertex statistics over a clipped interior, the density equations of RPH
// tilings and an estimate of the tile substitution matrix.

#include "rph/tiling.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace rph {

/// Area of the R tile, sin 36 degrees.
inline double rph_a() { return std::sin(M_PI / 5.0); }
/// Four-dimensional volume of the primitive cell of the decagonal lattice.
inline double omega4() { return 5.0 * std::sqrt(5.0) / 4.0; }
/// Window area of the RPH family, 2 sqrt(5) a.
inline double rph_window_area() { return 2.0 * std::sqrt(5.0) * rph_a(); }
/// Vertex density 8a/5.
inline double rph_vertex_density() { return 1.6 * rph_a(); }
/// Tile densities of R, P and H.
inline std::array<double, 3> rph_tile_densities() {
    const double a = rph_a(), t2 = kTau * kTau;
    return {4.0 * a / (5.0 * t2), 8.0 * a / (5.0 * t2), 4.0 * a / (5.0 * t2 * kTau)};
}

// --- polygon clipping ----------------------------------------------------------------------

namespace detail {

inline double cross(Vec2 o, Vec2 a, Vec2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

}  // namespace detail

/// Intersection of a polygon with a convex counterclockwise clip polygon.
inline std::vector<Vec2> clip_polygon(const std::vector<Vec2>& subject, const std::vector<Vec2>& clip) {
    std::vector<Vec2> out = subject;
    for (std::size_t e = 0; e < clip.size() && !out.empty(); ++e) {
        const Vec2 a = clip[e], b = clip[(e + 1) % clip.size()];
        std::vector<Vec2> in;
        in.swap(out);
        for (std::size_t i = 0; i < in.size(); ++i) {
            const Vec2 p = in[i], q = in[(i + 1) % in.size()];
            const double dp = detail::cross(a, b, p), dq = detail::cross(a, b, q);
            if (dp >= 0) out.push_back(p);
            if ((dp >= 0) != (dq >= 0)) {
                const double t = dp / (dp - dq);
                out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
            }
        }
    }
    return out;
}

inline bool inside_convex(const std::vector<Vec2>& poly, Vec2 p) {
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (detail::cross(poly[i], poly[(i + 1) % poly.size()], p) <= 0) return false;
    return poly.size() >= 3;
}

inline std::vector<Vec2> to_plane(const std::vector<Index4>& cycle, double scale = 1.0) {
    std::vector<Vec2> out;
    out.reserve(cycle.size());
    for (const auto& p : cycle) {
        const auto v = par_point(p);
        out.push_back({v.x * scale, v.y * scale});
    }
    return out;
}

inline Vec2 centroid(const std::vector<Vec2>& poly) {
    double a = 0, cx = 0, cy = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
        const double c = p.x * q.y - q.x * p.y;
        a += c;
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    if (a == 0) return poly.empty() ? Vec2{} : poly.front();
    return {cx / (3 * a), cy / (3 * a)};
}

/// The patch region scaled by `factor` about its centroid.
inline std::vector<Vec2> clip_region(const Tiling& t, double factor = 0.8) {
    const auto region = t.region.size() >= 3 ? t.region : convex_hull(t.vertices);
    auto poly = to_plane(region);
    const Vec2 c = centroid(poly);
    for (auto& p : poly) p = {c.x + factor * (p.x - c.x), c.y + factor * (p.y - c.y)};
    return poly;
}

// --- frequencies and densities ------------------------------------------------------------

inline std::size_t kind_index(FaceKind k) {
    switch (k) {
        case FaceKind::R: return 0;
        case FaceKind::P: return 1;
        case FaceKind::H: return 2;
        default: return 3;
    }
}

struct TileFrequencies {
    std::array<std::size_t, 3> counts{};  // faces with centroid inside the clip
    std::array<double, 3> weights{};      // area fractions inside the clip
    double unknown_weight = 0.0;
    std::array<double, 3> ratios{};  // weights relative to R
    bool degenerate = true;
};

inline TileFrequencies tile_frequencies(const Tiling& t, double clip_factor = 0.8) {
    TileFrequencies f;
    const auto clip = clip_region(t, clip_factor);
    for (const auto& face : t.faces) {
        const auto poly = to_plane(face.cycle);
        const double area = polygon_area(poly);
        if (!(area > 0)) continue;
        const double w = polygon_area(clip_polygon(poly, clip)) / area;
        const auto k = kind_index(face.kind);
        if (k == 3) {
            f.unknown_weight += w;
            continue;
        }
        f.weights[k] += w;
        if (inside_convex(clip, centroid(poly))) ++f.counts[k];
    }
    f.degenerate = !(f.weights[0] > 0);
    if (!f.degenerate)
        for (std::size_t k = 0; k < 3; ++k) f.ratios[k] = f.weights[k] / f.weights[0];
    return f;
}

struct DensityReport {
    double n_R = 0, n_P = 0, n_H = 0;
    double v = 0;
    double patch_area = 0;
    double a = rph_a();
    double w = 0;  // implied window area v * Omega4
    double Omega4 = omega4();
    std::size_t vertices = 0;
    // Relative residuals (lhs / rhs - 1) of the three balance equations.
    std::array<double, 3> residuals{};
    // Relative deviations of n_R, n_P, n_H and v from their closed forms.
    std::array<double, 4> deviations{};
    double area_closure = 0;  // sum of n_X * A_X, 1 for a covering
    bool degenerate = true;
};

inline DensityReport density_report(const Tiling& t, double clip_factor = 0.8) {
    DensityReport r;
    const auto clip = clip_region(t, clip_factor);
    r.patch_area = polygon_area(clip);
    if (!(r.patch_area > 0)) return r;
    const auto f = tile_frequencies(t, clip_factor);
    for (const auto& v : t.vertices)
        if (inside_convex(clip, par_point(v))) ++r.vertices;
    r.n_R = f.weights[0] / r.patch_area;
    r.n_P = f.weights[1] / r.patch_area;
    r.n_H = f.weights[2] / r.patch_area;
    r.v = static_cast<double>(r.vertices) / r.patch_area;
    r.w = r.v * r.Omega4;
    const double a = r.a;
    r.residuals = {(r.n_R + 1.5 * r.n_P + 2 * r.n_H) / (1.6 * a) - 1,
                   (r.n_R + 0.5 * r.n_P + r.n_H) / (0.8 * a) - 1,
                   (1.5 * r.n_P + 2 * r.n_H) / (0.8 * kTau * a) - 1};
    const auto n = rph_tile_densities();
    r.deviations = {r.n_R / n[0] - 1, r.n_P / n[1] - 1, r.n_H / n[2] - 1, r.v / rph_vertex_density() - 1};
    r.area_closure = r.n_R * area_R() + r.n_P * area_P() + r.n_H * area_H();
    r.degenerate = f.degenerate || r.vertices == 0;
    return r;
}

// --- substitution matrix -----------------------------------------------------------------

struct SubstitutionMatrix {
    std::array<std::array<double, 3>, 3> m{};  // m[i][j]: type-i tiles per type-j tile
    std::array<std::size_t, 3> parents{};
    double perron_value = 0;
    std::array<double, 3> perron_vector{};  // normalized to first component 1
    bool ill_conditioned = true;
};

namespace detail {

inline void perron(SubstitutionMatrix& s) {
    std::array<double, 3> x{1, 1, 1};
    double lambda = 0;
    for (int it = 0; it < 500; ++it) {
        std::array<double, 3> y{};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) y[i] += s.m[i][j] * x[j];
        const double norm = y[0] + y[1] + y[2];
        if (!(norm > 0)) return;
        lambda = norm / (x[0] + x[1] + x[2]);
        for (std::size_t i = 0; i < 3; ++i) x[i] = y[i] / norm;
    }
    s.perron_value = lambda;
    if (x[0] > 0)
        for (std::size_t i = 0; i < 3; ++i) s.perron_vector[i] = x[i] / x[0];
}

}  // namespace detail

/// Children are shared among the tau^2-inflated parent tiles in proportion to overlap
/// area. Only parents inside the clip of the parent patch are counted.
inline SubstitutionMatrix substitution_matrix_estimate(const std::vector<Tiling>& patches, double clip_factor = 0.8) {
    if (patches.size() < 2) throw std::invalid_argument("need at least two consecutive patches");
    SubstitutionMatrix s;
    const double t2 = kTau * kTau;
    for (std::size_t n = 0; n + 1 < patches.size(); ++n) {
        const auto& parent = patches[n];
        const auto& child = patches[n + 1];
        const auto clip = clip_region(parent, clip_factor);

        struct Parent {
            std::vector<Vec2> poly;
            std::size_t kind;
        };
        std::vector<Parent> ps;
        for (const auto& f : parent.faces) {
            const auto k = kind_index(f.kind);
            if (k == 3) continue;
            const auto poly = to_plane(f.cycle);
            bool inside = true;
            for (const auto& p : poly) inside = inside && inside_convex(clip, p);
            if (!inside) continue;
            ps.push_back({to_plane(f.cycle, t2), k});
            ++s.parents[k];
        }

        // Bucket inflated parents by bounding box; parents span less than 4 tau^2.
        const double cell = 4.0 * t2;
        std::unordered_map<detail::CellKey, std::vector<std::size_t>, detail::CellKeyHash> grid;
        auto key = [&](Vec2 p) {
            return detail::CellKey{static_cast<std::int64_t>(std::floor(p.x / cell)),
                                   static_cast<std::int64_t>(std::floor(p.y / cell))};
        };
        for (std::size_t i = 0; i < ps.size(); ++i) grid[key(centroid(ps[i].poly))].push_back(i);

        for (const auto& f : child.faces) {
            const auto k = kind_index(f.kind);
            if (k == 3) continue;
            const auto poly = to_plane(f.cycle);
            const double area = polygon_area(poly);
            const auto c = key(centroid(poly));
            for (std::int64_t dj = -1; dj <= 1; ++dj)
                for (std::int64_t di = -1; di <= 1; ++di) {
                    auto it = grid.find({c.i + di, c.j + dj});
                    if (it == grid.end()) continue;
                    for (auto pi : it->second) {
                        const double w = polygon_area(clip_polygon(poly, ps[pi].poly)) / area;
                        if (w > 0) s.m[k][ps[pi].kind] += w;
                    }
                }
        }
    }
    s.ill_conditioned = false;
    for (std::size_t j = 0; j < 3; ++j) {
        if (s.parents[j] == 0) {
            s.ill_conditioned = true;
            continue;
        }
        for (std::size_t i = 0; i < 3; ++i) s.m[i][j] /= static_cast<double>(s.parents[j]);
    }
    detail::perron(s);
    return s;
}

}  // namespace rph
