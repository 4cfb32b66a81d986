#pragma once
// Simpleton flips: a vertex shared by exactly one R, one P and one H hops by a short
// step (length 1/tau) and the three tiles are re-formed inside the same outline.

#include "rph/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

namespace rph {

struct FlipMove {
    Index4 vertex;
    Index4 hop;  // a short step
    Index4 target() const { return vertex + hop; }
    FlipMove reversed() const { return {vertex + hop, -hop}; }
    friend bool operator==(const FlipMove&, const FlipMove&) = default;
    friend auto operator<=>(const FlipMove&, const FlipMove&) = default;
};

namespace detail {

/// The three faces after a flip, or nothing when the hop is not a simpleton flip.
/// `around` are the faces incident to the vertex; `occupied` tests global vertex presence.
template <class Occupied>
std::optional<std::vector<Face>> flip_faces(const Index4& v, const Index4& hop, const std::vector<const Face*>& around,
                                            const Occupied& occupied) {
    if (around.size() != 3) return std::nullopt;
    const Index4 target = v + hop;
    if (occupied(target)) return std::nullopt;

    PointSet local;
    std::set<Edge> outline;
    for (const Face* f : around) {
        for (std::size_t i = 0; i < f->cycle.size(); ++i) {
            const Index4& a = f->cycle[i];
            const Index4& b = f->cycle[(i + 1) % f->cycle.size()];
            if (a != v) local.insert(a);
            if (a != v && b != v) outline.insert(a < b ? Edge{a, b} : Edge{b, a});
        }
    }
    // any global vertex at unit distance from the target must lie on the outline
    for (int k = 0; k < 10; ++k) {
        const Index4 q = target + unit_step(k);
        if (occupied(q) && !local.count(q) && q != v) return std::nullopt;
    }
    local.insert(target);
    const auto edges = build_edges(local, false);
    if (find_crossing(edges)) return std::nullopt;
    std::set<Edge> rest;
    for (const auto& e : edges)
        if (e.a != target && e.b != target) rest.insert(e);
    if (rest != outline) return std::nullopt;

    auto faces = extract_faces(edges, {});
    if (faces.size() != 3) return std::nullopt;
    std::array<int, 3> kinds{};
    GoldenInt area_before, area_after;
    for (const Face* f : around) area_before += polygon_area_scaled(f->cycle);
    for (const auto& f : faces) {
        if (f.kind == FaceKind::Unknown) return std::nullopt;
        if (std::find(f.cycle.begin(), f.cycle.end(), target) == f.cycle.end()) return std::nullopt;
        ++kinds[static_cast<std::size_t>(f.kind)];
        area_after += polygon_area_scaled(f.cycle);
    }
    if (kinds != std::array<int, 3>{1, 1, 1} || area_before != area_after) return std::nullopt;
    for (auto& f : faces) f.boundary = false;
    return faces;
}

inline bool is_rph_triple(const std::vector<const Face*>& around) {
    if (around.size() != 3) return false;
    std::array<int, 3> kinds{};
    for (const Face* f : around) {
        if (f->boundary || f->kind == FaceKind::Unknown) return false;
        ++kinds[static_cast<std::size_t>(f->kind)];
    }
    return kinds == std::array<int, 3>{1, 1, 1};
}

}  // namespace detail

/// Faces incident to each vertex, by index into t.faces.
inline std::unordered_map<Index4, std::vector<std::size_t>, Index4Hash> incident_faces(const Tiling& t) {
    std::unordered_map<Index4, std::vector<std::size_t>, Index4Hash> at;
    for (std::size_t i = 0; i < t.faces.size(); ++i)
        for (const auto& p : t.faces[i].cycle) at[p].push_back(i);
    return at;
}

/// All simpleton flips available in a tiling, sorted. Only interior tiles take part.
inline std::vector<FlipMove> find_flips(const Tiling& t) {
    const PointSet pts(t.vertices.begin(), t.vertices.end());
    const auto at = incident_faces(t);
    auto occupied = [&](const Index4& p) { return pts.count(p) > 0; };
    std::vector<FlipMove> moves;
    for (const auto& v : t.vertices) {
        auto it = at.find(v);
        if (it == at.end() || it->second.size() != 3) continue;
        std::vector<const Face*> around;
        for (auto i : it->second) around.push_back(&t.faces[i]);
        if (!detail::is_rph_triple(around)) continue;
        for (int k = 0; k < 10; ++k)
            if (detail::flip_faces(v, short_step(k), around, occupied)) moves.push_back({v, short_step(k)});
    }
    std::sort(moves.begin(), moves.end());
    return moves;
}

/// Applies an available flip; unavailable moves are rejected with std::invalid_argument.
inline Tiling apply_flip(const Tiling& t, const FlipMove& m) {
    const PointSet pts(t.vertices.begin(), t.vertices.end());
    std::vector<std::size_t> idx;
    std::vector<const Face*> around;
    for (std::size_t i = 0; i < t.faces.size(); ++i) {
        const auto& c = t.faces[i].cycle;
        if (std::find(c.begin(), c.end(), m.vertex) != c.end()) {
            idx.push_back(i);
            around.push_back(&t.faces[i]);
        }
    }
    if (!pts.count(m.vertex) || !short_direction(m.hop) || !detail::is_rph_triple(around))
        throw std::invalid_argument("flip move is not available");
    auto fresh = detail::flip_faces(m.vertex, m.hop, around, [&](const Index4& p) { return pts.count(p) > 0; });
    if (!fresh) throw std::invalid_argument("flip move is not available");

    Tiling out;
    out.region = t.region;
    out.depth = t.depth;
    out.vertices = t.vertices;
    std::replace(out.vertices.begin(), out.vertices.end(), m.vertex, m.target());
    std::sort(out.vertices.begin(), out.vertices.end());
    for (const auto& e : t.edges)
        if (e.a != m.vertex && e.b != m.vertex) out.edges.push_back(e);
    for (int k = 0; k < 10; ++k) {
        const Index4 q = m.target() + unit_step(k);
        if (pts.count(q) && q != m.vertex) out.edges.push_back(q < m.target() ? Edge{q, m.target()} : Edge{m.target(), q});
    }
    std::sort(out.edges.begin(), out.edges.end());
    for (std::size_t i = 0; i < t.faces.size(); ++i)
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) out.faces.push_back(t.faces[i]);
    for (auto& f : *fresh) {
        f.boundary = !std::all_of(f.cycle.begin(), f.cycle.end(),
                                  [&](const Index4& p) { return strictly_inside(t.region, p); });
        out.faces.push_back(std::move(f));
    }
    std::sort(out.faces.begin(), out.faces.end(), [](const Face& a, const Face& b) { return a.cycle < b.cycle; });
    return out;
}

// --- Monte Carlo ----------------------------------------------------------------------

struct FlipTracePoint {
    std::size_t step = 0;
    std::size_t available = 0;
    double perp_rms = 0.0;  // RMS perpendicular radius of vertices inside the region
};

struct FlipTrace {
    std::vector<FlipMove> moves;
    std::vector<FlipTracePoint> stats;
    KindCounts counts_before;
    KindCounts counts_after;
    bool stopped_early = false;  // no flips were available
    std::size_t validity_checks = 0;
};

struct MonteCarloResult {
    Tiling tiling;
    FlipTrace trace;
};

namespace detail {

/// Mutable flip state for long runs; the public API stays value-based.
class FlipState {
public:
    explicit FlipState(const Tiling& t) : region_(t.region), depth_(t.depth) {
        for (const auto& v : t.vertices) {
            verts_.insert(v);
            grid_insert(v);
        }
        for (const auto& f : t.faces) add_face(f);
        std::vector<Index4> all(t.vertices);
        for (const auto& v : all) refresh(v);
    }

    const std::vector<FlipMove>& available() const { return moves_; }

    void apply(const FlipMove& m) {
        std::vector<std::size_t> old = faces_at_[m.vertex];
        std::vector<const Face*> around;
        for (auto i : old) around.push_back(&*faces_[i]);
        auto fresh = flip_faces(m.vertex, m.hop, around, [&](const Index4& p) { return verts_.count(p) > 0; });
        if (!fresh) throw std::logic_error("flip state out of sync");
        std::set<Index4> touched;
        for (auto i : old) {
            for (const auto& p : faces_[i]->cycle) touched.insert(p);
            remove_face(i);
        }
        verts_.erase(m.vertex);
        verts_.insert(m.target());
        for (auto& f : *fresh) {
            for (const auto& p : f.cycle) touched.insert(p);
            add_face(std::move(f));
        }
        touched.insert(m.vertex);
        // vertices whose flip test can see the moved point (hop 1/tau plus a unit edge)
        grid_erase(m.vertex);
        grid_insert(m.target());
        for (const Index4 c : {m.vertex, m.target()}) {
            for (const auto& q : grid_near(par_point(c), 2.7)) touched.insert(q);
        }
        for (const auto& p : touched) refresh(p);
    }

    std::vector<Index4> vertices() const {
        std::vector<Index4> v(verts_.begin(), verts_.end());
        std::sort(v.begin(), v.end());
        return v;
    }

    Tiling snapshot() const {
        Tiling t;
        t.vertices = vertices();
        t.region = region_;
        t.depth = depth_;
        t.edges = build_edges(verts_, false);
        for (const auto& f : faces_)
            if (f) t.faces.push_back(*f);
        std::sort(t.faces.begin(), t.faces.end(), [](const Face& a, const Face& b) { return a.cycle < b.cycle; });
        return t;
    }

    KindCounts counts() const {
        std::vector<Face> fs;
        for (const auto& f : faces_)
            if (f) fs.push_back(*f);
        return count_kinds(fs);
    }

private:
    static CellKey cell_of(const Vec2& p) {
        return {static_cast<std::int64_t>(std::floor(p.x)), static_cast<std::int64_t>(std::floor(p.y))};
    }

    void grid_insert(const Index4& v) { grid_[cell_of(par_point(v))].push_back(v); }

    void grid_erase(const Index4& v) {
        auto& bucket = grid_[cell_of(par_point(v))];
        bucket.erase(std::remove(bucket.begin(), bucket.end(), v), bucket.end());
    }

    std::vector<Index4> grid_near(const Vec2& c, double radius) const {
        std::vector<Index4> out;
        const auto lo = cell_of({c.x - radius, c.y - radius});
        const auto hi = cell_of({c.x + radius, c.y + radius});
        for (auto i = lo.i; i <= hi.i; ++i)
            for (auto j = lo.j; j <= hi.j; ++j) {
                auto it = grid_.find({i, j});
                if (it == grid_.end()) continue;
                for (const auto& q : it->second) {
                    const Vec2 p = par_point(q);
                    if ((p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y) <= radius * radius) out.push_back(q);
                }
            }
        return out;
    }

    void add_face(Face f) {
        std::size_t id;
        if (!free_.empty()) {
            id = free_.back();
            free_.pop_back();
            faces_[id] = std::move(f);
        } else {
            id = faces_.size();
            faces_.push_back(std::move(f));
        }
        for (const auto& p : faces_[id]->cycle) faces_at_[p].push_back(id);
    }

    void remove_face(std::size_t id) {
        for (const auto& p : faces_[id]->cycle) {
            auto& v = faces_at_[p];
            v.erase(std::remove(v.begin(), v.end(), id), v.end());
        }
        faces_[id].reset();
        free_.push_back(id);
    }

    void drop_moves_of(const Index4& v) {
        auto it = moves_of_.find(v);
        if (it == moves_of_.end()) return;
        for (const auto& m : it->second) {
            const std::size_t pos = position_.at(m);
            position_.erase(m);
            if (pos + 1 != moves_.size()) {
                moves_[pos] = moves_.back();
                position_[moves_[pos]] = pos;
            }
            moves_.pop_back();
        }
        moves_of_.erase(it);
    }

    void refresh(const Index4& v) {
        drop_moves_of(v);
        if (!verts_.count(v)) return;
        auto it = faces_at_.find(v);
        if (it == faces_at_.end() || it->second.size() != 3) return;
        std::vector<const Face*> around;
        for (auto i : it->second) around.push_back(&*faces_[i]);
        if (!is_rph_triple(around)) return;
        auto occupied = [&](const Index4& p) { return verts_.count(p) > 0; };
        std::vector<FlipMove> found;
        for (int k = 0; k < 10; ++k)
            if (flip_faces(v, short_step(k), around, occupied)) found.push_back({v, short_step(k)});
        for (const auto& m : found) {
            position_[m] = moves_.size();
            moves_.push_back(m);
        }
        if (!found.empty()) moves_of_[v] = std::move(found);
    }

    std::vector<Index4> region_;
    int depth_ = 0;
    PointSet verts_;
    std::unordered_map<CellKey, std::vector<Index4>, CellKeyHash> grid_;
    std::vector<std::optional<Face>> faces_;
    std::vector<std::size_t> free_;
    std::unordered_map<Index4, std::vector<std::size_t>, Index4Hash> faces_at_;
    std::vector<FlipMove> moves_;
    std::map<FlipMove, std::size_t> position_;
    std::unordered_map<Index4, std::vector<FlipMove>, Index4Hash> moves_of_;
};

inline double perp_rms_inside(const std::vector<Index4>& verts, const std::vector<Index4>& region) {
    double acc = 0.0;
    std::size_t n = 0;
    for (const auto& v : verts) {
        if (!strictly_inside(region, v)) continue;
        const Vec2 w = perp_point(v);
        acc += w.x * w.x + w.y * w.y;
        ++n;
    }
    return n ? std::sqrt(acc / static_cast<double>(n)) : 0.0;
}

}  // namespace detail

/// Uniformly random available flips, applied `steps` times. Deterministic per seed.
/// Every `check_every` steps the full tiling is validated (0 disables) and the
/// perpendicular spread is recorded.
inline MonteCarloResult monte_carlo_flips(const Tiling& t, std::size_t steps, std::uint64_t seed,
                                          std::size_t check_every = 100) {
    detail::FlipState state(t);
    std::mt19937_64 rng(seed);
    MonteCarloResult res;
    res.trace.counts_before = count_kinds(t.faces);
    const std::size_t every = check_every ? check_every : 100;
    auto record = [&](std::size_t step) {
        res.trace.stats.push_back({step, state.available().size(), detail::perp_rms_inside(state.vertices(), t.region)});
    };
    record(0);
    for (std::size_t s = 1; s <= steps; ++s) {
        const auto& avail = state.available();
        if (avail.empty()) {
            res.trace.stopped_early = true;
            break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, avail.size() - 1);
        const FlipMove m = avail[pick(rng)];
        state.apply(m);
        res.trace.moves.push_back(m);
        if (s % every == 0) {
            record(s);
            if (check_every) {
                auto rep = validate(state.snapshot());
                ++res.trace.validity_checks;
                if (!rep) throw StructuralFault("flip dynamics broke the tiling: " + rep.message, rep.location);
            }
        }
    }
    res.tiling = state.snapshot();
    res.trace.counts_after = count_kinds(res.tiling.faces);
    return res;
}

}  // namespace rph
