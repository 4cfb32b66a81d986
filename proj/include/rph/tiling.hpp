#pragma once
// Unit-edge graphs over module points, face extraction and R/P/H classification,
// and structural validation of finite patches.

#include "rph/module.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rph {

/// A point set or tiling that violates an edge-to-edge RPH structure.
class StructuralFault : public std::runtime_error {
public:
    StructuralFault(const std::string& what, std::optional<Index4> where = std::nullopt)
        : std::runtime_error(what + (where ? " at " + to_string(*where) : "")), location(where) {}

    std::optional<Index4> location;

    static std::string to_string(const Index4& p) {
        std::ostringstream os;
        os << p;
        return os.str();
    }
};

enum class FaceKind { R, P, H, Unknown };

inline const char* face_kind_name(FaceKind k) {
    switch (k) {
        case FaceKind::R: return "R";
        case FaceKind::P: return "P";
        case FaceKind::H: return "H";
        default: return "unknown";
    }
}

struct Edge {
    Index4 a;
    Index4 b;  // a < b
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Face {
    FaceKind kind = FaceKind::Unknown;
    std::vector<Index4> cycle;  // counterclockwise
    int orientation = 0;
    bool boundary = false;  // not strictly inside the supported region
    friend bool operator==(const Face&, const Face&) = default;
};

/// A finite patch. `region` is the convex polygon (counterclockwise, module points) that the
/// patch is known to cover; outside it and on its edge, incomplete faces are expected.
/// An empty region means the convex hull of the vertices.
struct Tiling {
    std::vector<Index4> vertices;  // sorted
    std::vector<Edge> edges;       // sorted
    std::vector<Face> faces;
    std::vector<Index4> region;
    int depth = 0;

    friend bool operator==(const Tiling&, const Tiling&) = default;
};

// --- geometry helpers --------------------------------------------------------------

/// Exact twice-area of a module polygon, as a multiple of s/2 (see cross_scaled).
inline GoldenInt polygon_area_scaled(const std::vector<Index4>& cycle) {
    GoldenInt acc;
    const std::size_t n = cycle.size();
    for (std::size_t i = 0; i < n; ++i)
        acc += cross_scaled(embed_par(cycle[i]), embed_par(cycle[(i + 1) % n]));
    return acc;
}

/// Area in the plane (float), positive for counterclockwise cycles.
inline double polygon_area(const std::vector<Index4>& cycle) {
    return 0.25 * kSin72 * polygon_area_scaled(cycle).to_double();
}

inline double polygon_area(const std::vector<Vec2>& poly) {
    double a = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

/// Convex hull (counterclockwise, no collinear points) with exact predicates.
inline std::vector<Index4> convex_hull(std::vector<Index4> pts) {
    std::sort(pts.begin(), pts.end(), [](const Index4& p, const Index4& q) {
        const GoldenCoord a = embed_par(p), b = embed_par(q);
        const Sign sx = gold_sign(a.x2 - b.x2);
        if (sx != Sign::zero) return sx == Sign::negative;
        return gold_sign(a.ys - b.ys) == Sign::negative;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Index4> hull(2 * pts.size());
    std::size_t k = 0;
    auto turn = [](const Index4& o, const Index4& a, const Index4& b) {
        return orient(embed_par(o), embed_par(a), embed_par(b));
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) != Sign::positive) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i - 1]) != Sign::positive) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

/// True when p lies strictly inside the convex counterclockwise polygon.
inline bool strictly_inside(const std::vector<Index4>& polygon, const Index4& p) {
    if (polygon.size() < 3) return false;
    const GoldenCoord c = embed_par(p);
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        if (orient(embed_par(polygon[i]), embed_par(polygon[(i + 1) % polygon.size()]), c) != Sign::positive)
            return false;
    }
    return true;
}

// --- edges ---------------------------------------------------------------------------

namespace detail {

inline bool segments_cross(const Index4& a, const Index4& b, const Index4& c, const Index4& d) {
    if (a == c || a == d || b == c || b == d) return false;  // shared endpoint: edge-to-edge contact
    const GoldenCoord pa = embed_par(a), pb = embed_par(b), pc = embed_par(c), pd = embed_par(d);
    const Sign o1 = orient(pa, pb, pc), o2 = orient(pa, pb, pd);
    const Sign o3 = orient(pc, pd, pa), o4 = orient(pc, pd, pb);
    if (o1 == Sign::zero && o2 == Sign::zero) {
        // collinear: overlap test along the common line
        auto key = [&](const GoldenCoord& p) { return std::pair{p.x(), p.y()}; };
        auto lo1 = std::min(key(pa), key(pb)), hi1 = std::max(key(pa), key(pb));
        auto lo2 = std::min(key(pc), key(pd)), hi2 = std::max(key(pc), key(pd));
        return !(hi1 < lo2 || hi2 < lo1);
    }
    auto opposite = [](Sign s, Sign t) { return sign_int(s) * sign_int(t) <= 0; };
    return opposite(o1, o2) && opposite(o3, o4);
}

struct CellKey {
    std::int64_t i, j;
    friend bool operator==(const CellKey&, const CellKey&) = default;
};
struct CellKeyHash {
    std::size_t operator()(const CellKey& c) const noexcept {
        return std::hash<std::int64_t>{}(c.i * 73856093LL ^ c.j * 19349663LL);
    }
};

}  // namespace detail

/// First pair of crossing edges, if any.
inline std::optional<std::pair<Edge, Edge>> find_crossing(const std::vector<Edge>& edges) {
    // Two unit segments can only meet if their midpoints are within distance 1.
    std::unordered_map<detail::CellKey, std::vector<std::size_t>, detail::CellKeyHash> grid;
    std::vector<Vec2> mids(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Vec2 a = par_point(edges[i].a), b = par_point(edges[i].b);
        mids[i] = {(a.x + b.x) / 2, (a.y + b.y) / 2};
        grid[{static_cast<std::int64_t>(std::floor(mids[i].x)), static_cast<std::int64_t>(std::floor(mids[i].y))}]
            .push_back(i);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto ci = static_cast<std::int64_t>(std::floor(mids[i].x));
        const auto cj = static_cast<std::int64_t>(std::floor(mids[i].y));
        for (std::int64_t di = -1; di <= 1; ++di)
            for (std::int64_t dj = -1; dj <= 1; ++dj) {
                auto it = grid.find({ci + di, cj + dj});
                if (it == grid.end()) continue;
                for (std::size_t j : it->second) {
                    if (j <= i) continue;
                    const double dx = mids[i].x - mids[j].x, dy = mids[i].y - mids[j].y;
                    if (dx * dx + dy * dy > 1.0 + 1e-9) continue;
                    if (detail::segments_cross(edges[i].a, edges[i].b, edges[j].a, edges[j].b))
                        return std::pair{edges[i], edges[j]};
                }
            }
    }
    return std::nullopt;
}

/// All pairs of points differing by a unit step. Crossing edges are a structural fault.
inline std::vector<Edge> build_edges(const PointSet& points, bool check_crossings = true) {
    std::vector<Edge> edges;
    edges.reserve(points.size() * 2);
    for (const auto& p : points) {
        for (int k = 0; k < 5; ++k) {  // half the directions: each edge found once
            const Index4 q = p + unit_step(2 * k);
            if (points.count(q)) edges.push_back(p < q ? Edge{p, q} : Edge{q, p});
            const Index4 r = p + unit_step(2 * k + 1);
            if (points.count(r)) edges.push_back(p < r ? Edge{p, r} : Edge{r, p});
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (check_crossings) {
        if (auto c = find_crossing(edges)) throw StructuralFault("crossing unit edges", c->first.a);
    }
    return edges;
}

inline std::vector<Edge> build_edges(const std::vector<Index4>& points, bool check_crossings = true) {
    return build_edges(PointSet(points.begin(), points.end()), check_crossings);
}

// --- faces ---------------------------------------------------------------------------

/// Classify a counterclockwise cycle of unit edges from its turn sequence.
/// Turn t (in units of 36 deg) at a vertex gives interior angle 180 - 36 t.
inline FaceKind classify_cycle(const std::vector<Index4>& cycle, int* orientation = nullptr) {
    const std::size_t n = cycle.size();
    std::vector<int> dirs(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto d = unit_direction(cycle[(i + 1) % n] - cycle[i]);
        if (!d) return FaceKind::Unknown;
        dirs[i] = *d;
    }
    std::vector<int> turns(n);
    for (std::size_t i = 0; i < n; ++i) turns[i] = ((dirs[(i + 1) % n] - dirs[i]) % 10 + 10) % 10;
    auto cyclic_match = [&](const std::vector<int>& pattern) -> std::optional<std::size_t> {
        if (pattern.size() != n) return std::nullopt;
        for (std::size_t s = 0; s < n; ++s) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) ok = turns[(s + i) % n] == pattern[i];
            if (ok) return s;
        }
        return std::nullopt;
    };
    auto set_orient = [&](int v) {
        if (orientation) *orientation = v;
    };
    if (auto s = cyclic_match({4, 1, 4, 1})) {
        // acute apex at vertex s+1; its outgoing edge direction k labels the apex (bisector 18 + 36k)
        const int k = dirs[(*s + 1) % n];
        set_orient(k % 5);
        return FaceKind::R;
    }
    if (cyclic_match({2, 2, 2, 2, 2})) {
        set_orient(dirs[0] % 2);
        return FaceKind::P;
    }
    if (auto s = cyclic_match({2, 2, 1, 2, 2, 1})) {
        set_orient(dirs[(*s + 3) % n] % 5);
        return FaceKind::H;
    }
    return FaceKind::Unknown;
}

/// Acute apexes of a rhombus face: (apex vertex, apex direction k) with edges along k and k+1.
inline std::vector<std::pair<Index4, int>> acute_apexes(const Face& f) {
    std::vector<std::pair<Index4, int>> out;
    const std::size_t n = f.cycle.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Index4& v = f.cycle[i];
        auto dout = unit_direction(f.cycle[(i + 1) % n] - v);
        auto din = unit_direction(v - f.cycle[(i + n - 1) % n]);
        if (!dout || !din) continue;
        const int back = (*din + 5) % 10;
        if (((back - *dout) % 10 + 10) % 10 == 1) out.emplace_back(v, *dout);
    }
    return out;
}

/// Faces of a planar unit-edge graph, by counterclockwise smallest-turn traversal.
/// Outer (clockwise) boundary cycles and zero-area cycles are not faces.
inline std::vector<Face> extract_faces(const std::vector<Edge>& edges, const std::vector<Index4>& region) {
    std::unordered_map<Index4, std::uint16_t, Index4Hash> dirmask;
    for (const auto& e : edges) {
        const int k = *unit_direction(e.b - e.a);
        dirmask[e.a] |= static_cast<std::uint16_t>(1u << k);
        dirmask[e.b] |= static_cast<std::uint16_t>(1u << ((k + 5) % 10));
    }
    std::unordered_map<Index4, std::uint16_t, Index4Hash> used;
    std::vector<Index4> starts;
    starts.reserve(dirmask.size());
    for (const auto& [v, m] : dirmask) starts.push_back(v);
    std::sort(starts.begin(), starts.end());

    std::vector<Face> faces;
    for (const auto& start : starts) {
        for (int k0 = 0; k0 < 10; ++k0) {
            if (!(dirmask[start] >> k0 & 1u) || (used[start] >> k0 & 1u)) continue;
            std::vector<Index4> cycle;
            Index4 cur = start;
            int d = k0;
            while (!(used[cur] >> d & 1u)) {
                used[cur] |= static_cast<std::uint16_t>(1u << d);
                cycle.push_back(cur);
                const Index4 nxt = cur + unit_step(d);
                const int back = (d + 5) % 10;
                const std::uint16_t m = dirmask[nxt];
                int nd = back;
                for (int t = 1; t <= 10; ++t) {  // first direction clockwise from `back`
                    const int c = ((back - t) % 10 + 10) % 10;
                    if (m >> c & 1u) {
                        nd = c;
                        break;
                    }
                }
                cur = nxt;
                d = nd;
            }
            if (gold_sign(polygon_area_scaled(cycle)) != Sign::positive) continue;
            // rotate so the cycle starts at its smallest vertex
            auto it = std::min_element(cycle.begin(), cycle.end());
            std::rotate(cycle.begin(), it, cycle.end());
            Face f;
            f.kind = classify_cycle(cycle, &f.orientation);
            f.boundary = !std::all_of(cycle.begin(), cycle.end(),
                                      [&](const Index4& p) { return strictly_inside(region, p); });
            f.cycle = std::move(cycle);
            faces.push_back(std::move(f));
        }
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) { return a.cycle < b.cycle; });
    return faces;
}

/// Assemble a tiling from a point set. The region defaults to the convex hull.
inline Tiling make_tiling(const PointSet& points, std::vector<Index4> region = {}, int depth = 0) {
    Tiling t;
    t.vertices.assign(points.begin(), points.end());
    std::sort(t.vertices.begin(), t.vertices.end());
    t.region = region.empty() ? convex_hull(t.vertices) : std::move(region);
    t.edges = build_edges(points);
    t.faces = extract_faces(t.edges, t.region);
    t.depth = depth;
    return t;
}

inline Tiling make_tiling(const std::vector<Index4>& points, std::vector<Index4> region = {}, int depth = 0) {
    return make_tiling(PointSet(points.begin(), points.end()), std::move(region), depth);
}

// --- validation ----------------------------------------------------------------------

struct ValidationReport {
    bool ok = true;
    std::string message;
    std::optional<Index4> location;

    explicit operator bool() const { return ok; }
};

/// Checks edges (unit, present, uncrossed), faces (interior faces are R/P/H with the
/// recorded cycle shape), and the edge-to-edge condition.
inline ValidationReport validate(const Tiling& t) {
    auto fail = [](std::string msg, std::optional<Index4> where = std::nullopt) {
        return ValidationReport{false, std::move(msg), where};
    };
    const PointSet pts(t.vertices.begin(), t.vertices.end());
    if (pts.size() != t.vertices.size()) return fail("duplicate vertices");
    for (const auto& e : t.edges) {
        if (!pts.count(e.a) || !pts.count(e.b)) return fail("edge endpoint is not a vertex", e.a);
        if (!unit_direction(e.b - e.a)) return fail("edge is not a unit step", e.a);
    }
    const auto expected = build_edges(pts, false);
    if (expected != t.edges) {
        for (const auto& e : expected)
            if (!std::binary_search(t.edges.begin(), t.edges.end(), e)) return fail("missing unit edge", e.a);
        return fail("edge set differs from unit-distance graph");
    }
    if (auto c = find_crossing(t.edges)) return fail("crossing unit edges", c->first.a);

    std::unordered_map<Index4, std::uint16_t, Index4Hash> halfedge_use;
    for (const auto& f : t.faces) {
        int orientation = 0;
        const FaceKind k = classify_cycle(f.cycle, &orientation);
        if (k != f.kind) return fail("face kind does not match its cycle", f.cycle.front());
        if (gold_sign(polygon_area_scaled(f.cycle)) != Sign::positive)
            return fail("face cycle is not counterclockwise", f.cycle.front());
        const bool inside = std::all_of(f.cycle.begin(), f.cycle.end(),
                                        [&](const Index4& p) { return strictly_inside(t.region, p); });
        if (inside && f.kind == FaceKind::Unknown) return fail("interior face is not a prototile", f.cycle.front());
        for (std::size_t i = 0; i < f.cycle.size(); ++i) {
            const Index4& a = f.cycle[i];
            const Index4& b = f.cycle[(i + 1) % f.cycle.size()];
            auto d = unit_direction(b - a);
            if (!d) return fail("face side is not a unit edge", a);
            if (!std::binary_search(t.edges.begin(), t.edges.end(), a < b ? Edge{a, b} : Edge{b, a}))
                return fail("face side is not an edge", a);
            auto& m = halfedge_use[a];
            if (m >> *d & 1u) return fail("edge borders a face twice from one side", a);
            m |= static_cast<std::uint16_t>(1u << *d);
        }
    }
    // interior edges must border two faces
    for (const auto& e : t.edges) {
        if (!strictly_inside(t.region, e.a) || !strictly_inside(t.region, e.b)) continue;
        const int k = *unit_direction(e.b - e.a);
        const bool left = halfedge_use[e.a] >> k & 1u;
        const bool right = halfedge_use[e.b] >> ((k + 5) % 10) & 1u;
        if (!(left && right)) return fail("interior edge borders fewer than two faces", e.a);
    }
    return {};
}

struct KindCounts {
    std::size_t R = 0, P = 0, H = 0, unknown = 0;
    friend bool operator==(const KindCounts&, const KindCounts&) = default;
};

inline KindCounts count_kinds(const std::vector<Face>& faces, bool interior_only = false) {
    KindCounts c;
    for (const auto& f : faces) {
        if (interior_only && f.boundary) continue;
        switch (f.kind) {
            case FaceKind::R: ++c.R; break;
            case FaceKind::P: ++c.P; break;
            case FaceKind::H: ++c.H; break;
            default: ++c.unknown; break;
        }
    }
    return c;
}

/// Exact prototile areas.
inline double area_R() { return std::sin(M_PI / 5.0); }
inline double area_P() { return 0.25 * std::sqrt(5.0 * (5.0 + 2.0 * std::sqrt(5.0))); }
inline double area_H() { return 2.0 * std::sin(2.0 * M_PI / 5.0) + std::sin(M_PI / 5.0); }

}  // namespace rph
