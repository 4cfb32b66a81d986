#pragma once
// Perpendicular-space analytics: point clouds, window area and boundary estimates,
// box-counting dimension, Koch sectors and conjugate-map checks.

#include "rph/gpsp.hpp"
#include "rph/tiling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rph {

// --- clouds -------------------------------------------------------------------------------

/// Which vertices of a patch enter a cloud. Supported drops vertices on or outside the
/// region polygon, whose neighbourhoods are incomplete.
enum class CloudScope { Full, Supported };

struct PerpCloud {
    std::vector<Vec2> points;
    int depth = 0;
};

inline PerpCloud perp_cloud(const std::vector<Index4>& pts, int depth = 0) {
    PerpCloud c;
    c.depth = depth;
    c.points.reserve(pts.size());
    for (const auto& p : pts) c.points.push_back(perp_point(p));
    return c;
}

inline PerpCloud perp_cloud(const Tiling& t, CloudScope scope = CloudScope::Full) {
    if (scope == CloudScope::Full || t.region.size() < 3) return perp_cloud(t.vertices, t.depth);
    std::vector<Index4> kept;
    for (const auto& v : t.vertices)
        if (strictly_inside(t.region, v)) kept.push_back(v);
    return perp_cloud(kept, t.depth);
}

inline double max_radius(const PerpCloud& c) {
    double r = 0.0;
    for (const auto& p : c.points) r = std::max(r, std::hypot(p.x, p.y));
    return r;
}

/// Clouds of RPH patches stay well inside this radius.
inline constexpr double kCloudSanityRadius = 2.0;

inline bool within_sanity_bound(const PerpCloud& c) { return max_radius(c) <= kCloudSanityRadius; }

namespace detail {

struct Bounds {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

inline Bounds bounds_of(const std::vector<Vec2>& pts) {
    Bounds b{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
             std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const auto& p : pts) {
        b.x0 = std::min(b.x0, p.x);
        b.y0 = std::min(b.y0, p.y);
        b.x1 = std::max(b.x1, p.x);
        b.y1 = std::max(b.y1, p.y);
    }
    return b;
}

/// Dense bucket grid over a fixed point list.
class PointGrid {
public:
    PointGrid(const std::vector<Vec2>& pts, double cell) : pts_(pts), cell_(cell) {
        if (pts.empty() || !(cell > 0.0)) return;
        b_ = bounds_of(pts);
        nx_ = static_cast<std::int64_t>((b_.x1 - b_.x0) / cell_) + 1;
        ny_ = static_cast<std::int64_t>((b_.y1 - b_.y0) / cell_) + 1;
        start_.assign(static_cast<std::size_t>(nx_ * ny_ + 1), 0);
        std::vector<std::size_t> key(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            key[i] = index(cx(pts[i].x), cy(pts[i].y));
            ++start_[key[i] + 1];
        }
        for (std::size_t k = 1; k < start_.size(); ++k) start_[k] += start_[k - 1];
        items_.resize(pts.size());
        auto fill = start_;
        for (std::size_t i = 0; i < pts.size(); ++i) items_[fill[key[i]]++] = i;
    }

    bool empty() const { return pts_.empty(); }

    /// True if some point lies at distance < r from q.
    bool any_within(Vec2 q, double r) const {
        if (pts_.empty()) return false;
        const double r2 = r * r;
        const auto i0 = std::max<std::int64_t>(0, cx(q.x - r)), i1 = std::min(nx_ - 1, cx(q.x + r));
        const auto j0 = std::max<std::int64_t>(0, cy(q.y - r)), j1 = std::min(ny_ - 1, cy(q.y + r));
        for (auto j = j0; j <= j1; ++j)
            for (auto i = i0; i <= i1; ++i) {
                const auto k = index(i, j);
                for (auto s = start_[k]; s < start_[k + 1]; ++s) {
                    const auto& p = pts_[items_[s]];
                    const double dx = p.x - q.x, dy = p.y - q.y;
                    if (dx * dx + dy * dy < r2) return true;
                }
            }
        return false;
    }

    /// Distance to the nearest point other than `skip`.
    double nearest(Vec2 q, std::size_t skip = std::numeric_limits<std::size_t>::max()) const {
        double best2 = std::numeric_limits<double>::infinity();
        if (pts_.empty()) return best2;
        const auto ci = std::clamp<std::int64_t>(cx(q.x), 0, nx_ - 1);
        const auto cj = std::clamp<std::int64_t>(cy(q.y), 0, ny_ - 1);
        // Distance from q to the grid box, so rings are bounded correctly for far queries.
        const double ox = std::max({0.0, b_.x0 - q.x, q.x - (b_.x0 + nx_ * cell_)});
        const double oy = std::max({0.0, b_.y0 - q.y, q.y - (b_.y0 + ny_ * cell_)});
        const double outside = std::hypot(ox, oy);
        const std::int64_t max_ring = std::max(nx_, ny_);
        for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
            const double lower = std::max(outside, (ring - 1) * cell_);
            if (ring > 0 && lower > 0 && lower * lower > best2) break;
            for (auto j = cj - ring; j <= cj + ring; ++j) {
                if (j < 0 || j >= ny_) continue;
                const bool edge_row = (j == cj - ring || j == cj + ring);
                for (auto i = ci - ring; i <= ci + ring; i += (edge_row ? 1 : 2 * ring)) {
                    if (i >= 0 && i < nx_) {
                        const auto k = index(i, j);
                        for (auto s = start_[k]; s < start_[k + 1]; ++s) {
                            if (items_[s] == skip) continue;
                            const auto& p = pts_[items_[s]];
                            const double dx = p.x - q.x, dy = p.y - q.y;
                            best2 = std::min(best2, dx * dx + dy * dy);
                        }
                    }
                    if (ring == 0) break;
                }
            }
        }
        return std::sqrt(best2);
    }

private:
    std::int64_t cx(double x) const { return static_cast<std::int64_t>(std::floor((x - b_.x0) / cell_)); }
    std::int64_t cy(double y) const { return static_cast<std::int64_t>(std::floor((y - b_.y0) / cell_)); }
    std::size_t index(std::int64_t i, std::int64_t j) const {
        i = std::clamp<std::int64_t>(i, 0, nx_ - 1);
        j = std::clamp<std::int64_t>(j, 0, ny_ - 1);
        return static_cast<std::size_t>(j * nx_ + i);
    }

    const std::vector<Vec2>& pts_;
    double cell_;
    Bounds b_{};
    std::int64_t nx_ = 0, ny_ = 0;
    std::vector<std::size_t> start_, items_;
};

inline double typical_spacing(const std::vector<Vec2>& pts) {
    const auto b = bounds_of(pts);
    const double n = static_cast<double>(pts.size());
    const double w = b.x1 - b.x0, h = b.y1 - b.y0;
    return std::max({std::sqrt(w * h / n), (w + h) / n, 1e-9});
}

}  // namespace detail

/// Largest nearest-neighbour distance in the cloud (0 for fewer than two points).
inline double max_gap(const PerpCloud& c) {
    if (c.points.size() < 2) return 0.0;
    detail::PointGrid grid(c.points, detail::typical_spacing(c.points));
    double g = 0.0;
    for (std::size_t i = 0; i < c.points.size(); ++i) g = std::max(g, grid.nearest(c.points[i], i));
    return g;
}

// --- morphological closing and grid masks ---------------------------------------------

struct WindowOptions {
    /// Closing radius in units of the cloud's max nearest-neighbour gap.
    double closing_factor = 1.5;
    /// Lattice steps per closing radius for the empty-disk centres.
    int lattice_subdiv = 6;
};

/// The closing of a cloud: the complement of the union of open disks of radius r that
/// contain no cloud point. Disk centres are restricted to a fine lattice.
class ClosedWindow {
public:
    ClosedWindow(const PerpCloud& c, const WindowOptions& opt = {}) {
        if (c.points.empty()) return;
        b_ = detail::bounds_of(c.points);
        r_ = opt.closing_factor * max_gap(c);
        if (!(r_ > 0.0)) return;
        f_ = r_ / opt.lattice_subdiv;
        i0_ = static_cast<std::int64_t>(std::floor((b_.x0 - 2 * r_) / f_));
        j0_ = static_cast<std::int64_t>(std::floor((b_.y0 - 2 * r_) / f_));
        nx_ = static_cast<std::int64_t>(std::ceil((b_.x1 + 2 * r_) / f_)) - i0_ + 1;
        ny_ = static_cast<std::int64_t>(std::ceil((b_.y1 + 2 * r_) / f_)) - j0_ + 1;
        empty_.assign(static_cast<std::size_t>(nx_ * ny_), 0);
        detail::PointGrid grid(c.points, r_);
        for (std::int64_t j = 0; j < ny_; ++j)
            for (std::int64_t i = 0; i < nx_; ++i) {
                const Vec2 q{(i0_ + i) * f_, (j0_ + j) * f_};
                empty_[static_cast<std::size_t>(j * nx_ + i)] = grid.any_within(q, r_) ? 0 : 1;
            }
    }

    double radius() const { return r_; }

    bool contains(Vec2 q) const {
        if (!(r_ > 0.0)) return false;
        if (q.x < b_.x0 - r_ || q.x > b_.x1 + r_ || q.y < b_.y0 - r_ || q.y > b_.y1 + r_) return false;
        const double r2 = r_ * r_;
        const auto li = static_cast<std::int64_t>(std::floor((q.x - r_) / f_)) - i0_;
        const auto hi = static_cast<std::int64_t>(std::ceil((q.x + r_) / f_)) - i0_;
        const auto lj = static_cast<std::int64_t>(std::floor((q.y - r_) / f_)) - j0_;
        const auto hj = static_cast<std::int64_t>(std::ceil((q.y + r_) / f_)) - j0_;
        for (auto j = std::max<std::int64_t>(lj, 0); j <= std::min(hj, ny_ - 1); ++j)
            for (auto i = std::max<std::int64_t>(li, 0); i <= std::min(hi, nx_ - 1); ++i) {
                if (!empty_[static_cast<std::size_t>(j * nx_ + i)]) continue;
                const double dx = (i0_ + i) * f_ - q.x, dy = (j0_ + j) * f_ - q.y;
                if (dx * dx + dy * dy <= r2) return false;
            }
        return true;
    }

    const detail::Bounds& bounds() const { return b_; }

private:
    detail::Bounds b_{};
    double r_ = 0.0, f_ = 1.0;
    std::int64_t i0_ = 0, j0_ = 0, nx_ = 0, ny_ = 0;
    std::vector<std::uint8_t> empty_;
};

/// Grid cell (i, j) covering [i*step, (i+1)*step) x [j*step, (j+1)*step).
struct Cell {
    std::int64_t i = 0, j = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Occupancy of grid cells, judged at cell centres. A one-cell empty margin surrounds
/// the occupied part.
struct GridMask {
    double step = 0.0;
    std::int64_t i0 = 0, j0 = 0, nx = 0, ny = 0;
    std::vector<std::uint8_t> cells;

    bool at(std::int64_t i, std::int64_t j) const {
        i -= i0;
        j -= j0;
        if (i < 0 || j < 0 || i >= nx || j >= ny) return false;
        return cells[static_cast<std::size_t>(j * nx + i)] != 0;
    }
    std::size_t count() const { return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), 1)); }
    double area() const { return static_cast<double>(count()) * step * step; }
    Vec2 centre(std::int64_t i, std::int64_t j) const { return {(i + 0.5) * step, (j + 0.5) * step}; }
};

inline void check_grid_step(double grid_step) {
    if (!(grid_step >= 0.005 && grid_step <= 0.1))
        throw std::invalid_argument("grid_step must lie in [0.005, 0.1]");
}

inline GridMask window_mask(const ClosedWindow& w, double grid_step) {
    GridMask m;
    m.step = grid_step;
    if (!(w.radius() > 0.0)) return m;
    const auto& b = w.bounds();
    const double r = w.radius();
    m.i0 = static_cast<std::int64_t>(std::floor((b.x0 - r) / grid_step)) - 1;
    m.j0 = static_cast<std::int64_t>(std::floor((b.y0 - r) / grid_step)) - 1;
    m.nx = static_cast<std::int64_t>(std::floor((b.x1 + r) / grid_step)) + 2 - m.i0;
    m.ny = static_cast<std::int64_t>(std::floor((b.y1 + r) / grid_step)) + 2 - m.j0;
    m.cells.assign(static_cast<std::size_t>(m.nx * m.ny), 0);
    for (std::int64_t j = 0; j < m.ny; ++j)
        for (std::int64_t i = 0; i < m.nx; ++i)
            m.cells[static_cast<std::size_t>(j * m.nx + i)] = w.contains(m.centre(m.i0 + i, m.j0 + j)) ? 1 : 0;
    return m;
}

inline GridMask window_mask(const PerpCloud& c, double grid_step, const WindowOptions& opt = {}) {
    check_grid_step(grid_step);
    return window_mask(ClosedWindow(c, opt), grid_step);
}

/// Area of the grid cells whose centres lie in the closing of the cloud.
inline double window_area(const PerpCloud& c, double grid_step, const WindowOptions& opt = {}) {
    check_grid_step(grid_step);
    if (c.points.empty()) return 0.0;
    return window_mask(c, grid_step, opt).area();
}

/// Occupied cells that share an edge with an unoccupied cell connected to the outside.
inline std::vector<Cell> boundary_cells(const GridMask& m) {
    std::vector<Cell> out;
    if (m.nx == 0) return out;
    std::vector<std::uint8_t> outside(m.cells.size(), 0);
    std::vector<std::int64_t> stack;
    auto push = [&](std::int64_t i, std::int64_t j) {
        if (i < 0 || j < 0 || i >= m.nx || j >= m.ny) return;
        const auto k = j * m.nx + i;
        if (m.cells[static_cast<std::size_t>(k)] || outside[static_cast<std::size_t>(k)]) return;
        outside[static_cast<std::size_t>(k)] = 1;
        stack.push_back(k);
    };
    for (std::int64_t i = 0; i < m.nx; ++i) push(i, 0), push(i, m.ny - 1);
    for (std::int64_t j = 0; j < m.ny; ++j) push(0, j), push(m.nx - 1, j);
    while (!stack.empty()) {
        const auto k = stack.back();
        stack.pop_back();
        const auto i = k % m.nx, j = k / m.nx;
        push(i + 1, j), push(i - 1, j), push(i, j + 1), push(i, j - 1);
    }
    auto is_out = [&](std::int64_t i, std::int64_t j) {
        if (i < 0 || j < 0 || i >= m.nx || j >= m.ny) return true;
        return outside[static_cast<std::size_t>(j * m.nx + i)] != 0;
    };
    for (std::int64_t j = 0; j < m.ny; ++j)
        for (std::int64_t i = 0; i < m.nx; ++i) {
            if (!m.cells[static_cast<std::size_t>(j * m.nx + i)]) continue;
            if (is_out(i + 1, j) || is_out(i - 1, j) || is_out(i, j + 1) || is_out(i, j - 1))
                out.push_back({m.i0 + i, m.j0 + j});
        }
    return out;
}

/// Boundary closing: radius equal to the max gap keeps the finest resolved detail.
inline WindowOptions boundary_options() { return WindowOptions{1.0, 6}; }

inline std::vector<Cell> boundary_cells(const PerpCloud& c, double grid_step,
                                        const WindowOptions& opt = boundary_options()) {
    return boundary_cells(window_mask(c, grid_step, opt));
}

inline std::vector<Vec2> cell_centres(const std::vector<Cell>& cells, double step) {
    std::vector<Vec2> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back({(c.i + 0.5) * step, (c.j + 0.5) * step});
    return out;
}

// --- box counting -----------------------------------------------------------------------

struct FractalFit {
    std::vector<double> scales;
    std::vector<double> counts;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool degenerate = false;
};

struct BoxOptions {
    /// Smallest box, in grid cells.
    double min_cells = 4.0;
    /// Number of tau^2 scale periods covered; three periods span over four octaves.
    int periods = 3;
    /// Scales per tau^2 period.
    int per_period = 4;
    /// Box grid offsets per axis; counts are averaged over shifts.
    int shifts = 4;
};

namespace detail {

struct LineFit {
    double slope = 0, intercept = 0, r2 = 0;
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    const double mean = sy / n;
    double ss_tot = 0, ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += e * e;
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;
    return f;
}

}  // namespace detail

/// Log-log slope of occupied box counts over geometric scales starting at
/// `min_cells * grid_step` with ratio tau^(2/per_period).
inline FractalFit box_dimension(const std::vector<Vec2>& pts, double grid_step, const BoxOptions& opt = {}) {
    FractalFit fit;
    const int n_scales = opt.periods * opt.per_period + 1;
    if (pts.empty() || n_scales < 5) {
        fit.degenerate = true;
        return fit;
    }
    std::vector<double> lx, ly;
    std::vector<std::pair<std::int64_t, std::int64_t>> keys(pts.size());
    for (int k = 0; k < n_scales; ++k) {
        const double eps = opt.min_cells * grid_step * std::pow(kTau, 2.0 * k / opt.per_period);
        double total = 0.0;
        for (int a = 0; a < opt.shifts; ++a)
            for (int b = 0; b < opt.shifts; ++b) {
                const double ox = eps * a / opt.shifts, oy = eps * b / opt.shifts;
                for (std::size_t i = 0; i < pts.size(); ++i)
                    keys[i] = {static_cast<std::int64_t>(std::floor((pts[i].x + ox) / eps)),
                               static_cast<std::int64_t>(std::floor((pts[i].y + oy) / eps))};
                std::sort(keys.begin(), keys.end());
                total += static_cast<double>(std::unique(keys.begin(), keys.end()) - keys.begin());
            }
        const double n = total / (opt.shifts * opt.shifts);
        fit.scales.push_back(eps);
        fit.counts.push_back(n);
        lx.push_back(std::log(1.0 / eps));
        ly.push_back(std::log(n));
    }
    const auto lf = detail::least_squares(lx, ly);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.r2 = lf.r2;
    fit.degenerate = !(fit.r2 >= 0.9) || !std::isfinite(fit.slope);
    return fit;
}

inline FractalFit box_dimension(const std::vector<Cell>& cells, double grid_step, const BoxOptions& opt = {}) {
    return box_dimension(cell_centres(cells, grid_step), grid_step, opt);
}

// --- distances ----------------------------------------------------------------------------

/// Largest distance from a point of `a` to the set `b`.
inline double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    if (a.empty()) return 0.0;
    if (b.empty()) return std::numeric_limits<double>::infinity();
    detail::PointGrid grid(b, detail::typical_spacing(b));
    double h = 0.0;
    for (const auto& p : a) h = std::max(h, grid.nearest(p));
    return h;
}

inline double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

/// Points spaced at most `step` apart along a polyline.
inline std::vector<Vec2> sample_polyline(const std::vector<Vec2>& poly, double step) {
    std::vector<Vec2> out;
    for (std::size_t s = 0; s + 1 < poly.size(); ++s) {
        const auto a = poly[s], b = poly[s + 1];
        const int n = std::max(1, static_cast<int>(std::ceil(std::hypot(b.x - a.x, b.y - a.y) / step)));
        for (int k = 0; k < n; ++k) out.push_back({a.x + (b.x - a.x) * k / n, a.y + (b.y - a.y) * k / n});
    }
    if (!poly.empty()) out.push_back(poly.back());
    return out;
}

/// Cells visited by a polyline on a grid of the given step.
inline std::vector<Cell> rasterize_polyline(const std::vector<Vec2>& poly, double step) {
    std::vector<Cell> cells;
    for (const auto& p : sample_polyline(poly, step / 4))
        cells.push_back({static_cast<std::int64_t>(std::floor(p.x / step)),
                         static_cast<std::int64_t>(std::floor(p.y / step))});
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

/// Points with polar angle in [deg0, deg1] and radius at least `min_radius`.
inline std::vector<Vec2> polar_sector(const std::vector<Vec2>& pts, double deg0, double deg1, double min_radius) {
    std::vector<Vec2> out;
    for (const auto& p : pts) {
        const double a = std::atan2(p.y, p.x) * 180.0 / M_PI;
        if (a >= deg0 && a <= deg1 && std::hypot(p.x, p.y) >= min_radius) out.push_back(p);
    }
    return out;
}

// --- Koch sectors -------------------------------------------------------------------------

/// Three-segment generator expressed in the frame of its parent chord (chord = (1, 0)).
struct KochTemplate {
    std::array<Vec2, 3> segments{};

    /// Segments of length 1/tau^2 at the given angles (radians) from the chord.
    static KochTemplate from_angles(double a0, double a1, double a2) {
        const double l = 1.0 / (kTau * kTau);
        KochTemplate t;
        const std::array<double, 3> ang{a0, a1, a2};
        for (std::size_t i = 0; i < 3; ++i) t.segments[i] = {l * std::cos(ang[i]), l * std::sin(ang[i])};
        return t;
    }

    std::array<double, 3> angles() const {
        return {std::atan2(segments[0].y, segments[0].x), std::atan2(segments[1].y, segments[1].x),
                std::atan2(segments[2].y, segments[2].x)};
    }
};

/// Throws unless every segment is 1/tau^2 long and the segments join the chord ends.
inline void check_template(const KochTemplate& t, double tol = 1e-9) {
    const double l = 1.0 / (kTau * kTau);
    double sx = 0, sy = 0;
    for (const auto& s : t.segments) {
        if (std::abs(std::hypot(s.x, s.y) - l) > tol)
            throw std::invalid_argument("Koch template segments must be 1/tau^2 of the chord");
        sx += s.x;
        sy += s.y;
    }
    if (std::abs(sx - 1.0) > tol || std::abs(sy) > tol)
        throw std::invalid_argument("Koch template segments must end at the chord end");
}

/// Angles of the three segments of the window generator, found by the calibration tool:
/// straight, then +36 and -36 degrees.
inline KochTemplate window_koch_template() { return KochTemplate::from_angles(0.0, M_PI / 5.0, -M_PI / 5.0); }

/// Sector chord: from the window tip on the positive x axis to the boundary crossing of
/// the 18 degree ray. The radius of the latter was fitted by the calibration tool.
inline constexpr double kKochChordEndRadius = 0.870;

inline Vec2 koch_chord_start() { return {1.0, 0.0}; }
inline Vec2 koch_chord_end() {
    return {kKochChordEndRadius * std::cos(M_PI / 10.0), kKochChordEndRadius * std::sin(M_PI / 10.0)};
}

struct KochSector {
    std::vector<Vec2> polyline;
    int depth = 0;
    double chord_length = 0.0;

    std::size_t segment_count() const { return polyline.empty() ? 0 : polyline.size() - 1; }
    double length() const {
        double l = 0;
        for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
            l += std::hypot(polyline[i + 1].x - polyline[i].x, polyline[i + 1].y - polyline[i].y);
        return l;
    }
};

inline KochSector koch_sector(int depth, const KochTemplate& tpl = window_koch_template(),
                              Vec2 a = koch_chord_start(), Vec2 b = koch_chord_end()) {
    if (depth < 0) throw std::invalid_argument("Koch depth must be non-negative");
    check_template(tpl);
    KochSector k;
    k.depth = depth;
    k.chord_length = std::hypot(b.x - a.x, b.y - a.y);
    k.polyline = {a, b};
    for (int d = 0; d < depth; ++d) {
        std::vector<Vec2> next;
        next.reserve((k.polyline.size() - 1) * 3 + 1);
        next.push_back(k.polyline.front());
        for (std::size_t i = 0; i + 1 < k.polyline.size(); ++i) {
            const Vec2 p = k.polyline[i], q = k.polyline[i + 1];
            const double dx = q.x - p.x, dy = q.y - p.y;
            Vec2 cur = p;
            for (std::size_t s = 0; s < 3; ++s) {
                const auto& g = tpl.segments[s];
                cur = {cur.x + g.x * dx - g.y * dy, cur.y + g.x * dy + g.y * dx};
                next.push_back(s == 2 ? q : cur);
            }
        }
        k.polyline = std::move(next);
    }
    return k;
}

// --- conjugate map ------------------------------------------------------------------------

/// Perpendicular images of the substitution motif.
inline std::vector<Vec2> perp_motif() {
    std::vector<Vec2> out;
    for (const auto& m : motif()) out.push_back(perp_point(m));
    return out;
}

/// Contraction ratio of the conjugate map, 1/tau^2.
inline constexpr double kSigmaBar = 1.0 / (kTau * kTau);

struct ConjugateReport {
    std::size_t points = 0;
    std::size_t included = 0;
    std::optional<Vec2> inclusion_witness;
    std::size_t eliminated = 0;
    std::size_t in_annulus = 0;
    double annulus_radius = 0.0;
    std::optional<Vec2> annulus_witness;

    double inclusion_fraction() const { return points ? double(included) / double(points) : 1.0; }
    double annulus_fraction() const { return eliminated ? double(in_annulus) / double(eliminated) : 1.0; }
    bool ok() const { return included == points && in_annulus == eliminated; }
};

/// Checks that `next` lies in the union of contracted copies of `prev` placed on the
/// perpendicular motif, and that the eliminated images sit in the outer annulus.
inline ConjugateReport conj_consistency(const PerpCloud& prev, const PerpCloud& next,
                                        const std::vector<Vec2>& eliminated, double tol = 1e-9,
                                        double annulus_fraction = 0.8) {
    ConjugateReport rep;
    rep.points = next.points.size();
    const auto shell = perp_motif();
    if (!prev.points.empty()) {
        detail::PointGrid grid(prev.points, detail::typical_spacing(prev.points));
        const double scale = 1.0 / kSigmaBar;
        for (const auto& q : next.points) {
            bool found = false;
            for (const auto& p : shell) {
                const Vec2 pre{(q.x - p.x) * scale, (q.y - p.y) * scale};
                if (grid.any_within(pre, tol * scale)) {
                    found = true;
                    break;
                }
            }
            if (found) ++rep.included;
            else if (!rep.inclusion_witness) rep.inclusion_witness = q;
        }
    }
    rep.eliminated = eliminated.size();
    rep.annulus_radius = annulus_fraction * max_radius(next);
    for (const auto& e : eliminated) {
        if (std::hypot(e.x, e.y) > rep.annulus_radius) ++rep.in_annulus;
        else if (!rep.annulus_witness) rep.annulus_witness = e;
    }
    return rep;
}

/// Runs one GPSP under `wheel` and checks the conjugate map on the full clouds.
inline ConjugateReport conj_consistency(const Tiling& t, const WheelDiagram& wheel) {
    auto step = gpsp_step(t, ScheduleEntry{wheel});
    std::vector<Vec2> elim;
    for (const auto& e : step.removed) elim.push_back(perp_point(e));
    return conj_consistency(perp_cloud(t), perp_cloud(step.tiling), elim);
}

}  // namespace rph
