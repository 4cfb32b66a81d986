#pragma once
// Point groups inside D10: stabilizers of wheel diagrams, intersections for schedules,
// and approximate symmetries of perpendicular clouds.

#include "rph/gpsp.hpp"
#include "rph/window.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rph {

/// Element of D10 acting on apex directions k (inward bisector at 18 + 36k degrees).
/// Rotation j maps k to k + j. Mirror c maps k to c - k; mirror 9 is the reflection in
/// the x axis. Mirrors reverse handedness.
struct GroupElement {
    int rot = 0;
    bool mirror = false;

    int apply(int k) const { return ((mirror ? rot - k : rot + k) % 10 + 10) % 10; }

    /// this after other.
    GroupElement compose(const GroupElement& o) const {
        if (!mirror) return {(rot + o.rot) % 10, o.mirror};
        return {((rot - o.rot) % 10 + 10) % 10, !o.mirror};
    }

    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

enum class GroupLabel { C1, C2, C5, C10, D1, D2, D5, D10 };

inline const char* group_label_name(GroupLabel l) {
    switch (l) {
        case GroupLabel::C1: return "C1";
        case GroupLabel::C2: return "C2";
        case GroupLabel::C5: return "C5";
        case GroupLabel::C10: return "C10";
        case GroupLabel::D1: return "D1";
        case GroupLabel::D2: return "D2";
        case GroupLabel::D5: return "D5";
        default: return "D10";
    }
}

struct PointGroup {
    std::vector<GroupElement> elements;  // sorted, identity first

    int rotation_order() const {
        return static_cast<int>(std::count_if(elements.begin(), elements.end(), [](auto& g) { return !g.mirror; }));
    }
    int mirror_count() const { return static_cast<int>(elements.size()) - rotation_order(); }
    std::vector<int> mirror_axes() const {
        std::vector<int> out;
        for (const auto& g : elements)
            if (g.mirror) out.push_back(g.rot);
        return out;
    }
    GroupLabel label() const {
        const int n = rotation_order();
        const bool d = mirror_count() > 0;
        switch (n) {
            case 1: return d ? GroupLabel::D1 : GroupLabel::C1;
            case 2: return d ? GroupLabel::D2 : GroupLabel::C2;
            case 5: return d ? GroupLabel::D5 : GroupLabel::C5;
            default: return d ? GroupLabel::D10 : GroupLabel::C10;
        }
    }
    std::string name() const { return group_label_name(label()); }
    bool contains(const GroupElement& g) const { return std::binary_search(elements.begin(), elements.end(), g); }
    std::size_t order() const { return elements.size(); }

    friend bool operator==(const PointGroup&, const PointGroup&) = default;
};

inline std::vector<GroupElement> all_elements() {
    std::vector<GroupElement> out;
    for (bool m : {false, true})
        for (int j = 0; j < 10; ++j) out.push_back({j, m});
    return out;
}

inline PointGroup make_group(std::vector<GroupElement> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return PointGroup{std::move(elems)};
}

/// Closure of a generating set.
inline PointGroup generate(const std::vector<GroupElement>& gens) {
    std::set<GroupElement> s{GroupElement{}};
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<GroupElement> cur(s.begin(), s.end());
        for (const auto& a : cur)
            for (const auto& g : gens) grew |= s.insert(g.compose(a)).second;
    }
    return make_group({s.begin(), s.end()});
}

/// Every subgroup of D10, largest first.
inline const std::vector<PointGroup>& subgroups_of_d10() {
    static const std::vector<PointGroup> subs = [] {
        std::vector<PointGroup> out;
        for (int n : {10, 5, 2, 1}) {
            const GroupElement r{10 / n % 10, false};
            for (int c = -1; c < 10; ++c) {
                std::vector<GroupElement> gens{r};
                if (c >= 0) gens.push_back({c, true});
                auto g = generate(gens);
                if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
            }
        }
        std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.order() > b.order(); });
        return out;
    }();
    return subs;
}

inline bool fixes(const WheelDiagram& w, const GroupElement& g) {
    for (int k = 0; k < 10; ++k) {
        const Chirality image = g.mirror ? flip(w.flag(k)) : w.flag(k);
        if (w.flag(g.apply(k)) != image) return false;
    }
    return true;
}

/// Stabilizer of the decorated wheel inside D10.
inline PointGroup classify_wheel(const WheelDiagram& w) {
    std::vector<GroupElement> s;
    for (const auto& g : all_elements())
        if (fixes(w, g)) s.push_back(g);
    return make_group(std::move(s));
}

inline PointGroup intersect(const PointGroup& a, const PointGroup& b) {
    std::vector<GroupElement> out;
    std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                          std::back_inserter(out));
    return PointGroup{std::move(out)};
}

/// Common subgroup of the stabilizers of every wheel in the sequence.
inline PointGroup sequence_group(const std::vector<WheelDiagram>& ws) {
    if (ws.empty()) throw std::invalid_argument("sequence_group needs at least one wheel");
    auto g = classify_wheel(ws.front());
    for (std::size_t i = 1; i < ws.size(); ++i) g = intersect(g, classify_wheel(ws[i]));
    return g;
}

/// Label counts over all 1024 wheels.
inline std::map<std::string, int> wheel_label_census() {
    std::map<std::string, int> counts;
    for (unsigned b = 0; b < 1024; ++b) ++counts[classify_wheel(WheelDiagram::from_bits(b)).name()];
    return counts;
}

// --- perpendicular action ------------------------------------------------------------------

/// Image of a perpendicular point under the element acting on the patch. A patch rotation
/// by 36 degrees rotates perpendicular space by 252 degrees; the x-axis reflection acts as
/// the x-axis reflection.
inline Vec2 perp_action(const GroupElement& g, Vec2 p) {
    // Mirror c is rotation by c - 9 after the x-axis reflection.
    const int j = g.mirror ? ((g.rot - 9) % 10 + 10) % 10 : g.rot;
    if (g.mirror) p.y = -p.y;
    const double a = j * 252.0 * M_PI / 180.0;
    return {p.x * std::cos(a) - p.y * std::sin(a), p.x * std::sin(a) + p.y * std::cos(a)};
}

struct SymmetryOptions {
    /// Absolute Hausdorff tolerance; when unset it is gap_factor * max_gap + grid_step.
    std::optional<double> tolerance;
    double gap_factor = 1.75;
    double grid_step = 0.01;
    WindowOptions window = boundary_options();
};

struct SymmetryReport {
    PointGroup group;
    double tolerance = 0.0;
    std::array<double, 20> mismatch{};  // indexed like all_elements()
};

/// Largest subgroup of D10 whose elements move the window boundary by at most the
/// tolerance in Hausdorff distance.
inline SymmetryReport empirical_symmetry_report(const PerpCloud& c, const SymmetryOptions& opt = {}) {
    SymmetryReport rep;
    const auto elems = all_elements();
    if (c.points.size() < 2) {
        // A single point (or nothing) is fixed by everything.
        rep.group = make_group(elems);
        return rep;
    }
    const auto boundary = cell_centres(boundary_cells(c, opt.grid_step, opt.window), opt.grid_step);
    rep.tolerance = opt.tolerance ? *opt.tolerance : opt.gap_factor * max_gap(c) + opt.grid_step;
    for (std::size_t k = 0; k < elems.size(); ++k) {
        std::vector<Vec2> image;
        image.reserve(boundary.size());
        for (const auto& p : boundary) image.push_back(perp_action(elems[k], p));
        rep.mismatch[k] = hausdorff(boundary, image);
    }
    for (const auto& sub : subgroups_of_d10()) {
        const bool ok = std::all_of(sub.elements.begin(), sub.elements.end(), [&](const GroupElement& g) {
            const auto idx = static_cast<std::size_t>((g.mirror ? 10 : 0) + g.rot);
            return rep.mismatch[idx] <= rep.tolerance;
        });
        if (ok) {
            rep.group = sub;
            break;
        }
    }
    return rep;
}

inline PointGroup empirical_symmetry(const PerpCloud& c, std::optional<double> tolerance = std::nullopt) {
    SymmetryOptions opt;
    opt.tolerance = tolerance;
    return empirical_symmetry_report(c, opt).group;
}

}  // namespace rph
