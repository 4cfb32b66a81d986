#pragma once
// The decagonal Bravais module: integer index vectors over e0..e3 (e4 = -(e0+e1+e2+e3)),
// their exact parallel and perpendicular embeddings, and the D10 / tau-scaling actions.

#include "rph/golden.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <unordered_set>

namespace rph {

struct Index4 {
    std::array<std::int64_t, 4> n{};

    constexpr Index4() = default;
    constexpr Index4(std::int64_t n0, std::int64_t n1, std::int64_t n2, std::int64_t n3) : n{n0, n1, n2, n3} {}

    std::int64_t operator[](std::size_t i) const { return n[i]; }

    friend constexpr bool operator==(const Index4&, const Index4&) = default;
    friend constexpr auto operator<=>(const Index4&, const Index4&) = default;

    friend Index4 operator+(const Index4& p, const Index4& q) {
        Index4 r;
        for (std::size_t i = 0; i < 4; ++i) r.n[i] = detail::checked_add(p.n[i], q.n[i]);
        return r;
    }
    friend Index4 operator-(const Index4& p, const Index4& q) {
        Index4 r;
        for (std::size_t i = 0; i < 4; ++i) r.n[i] = detail::checked_sub(p.n[i], q.n[i]);
        return r;
    }
    friend Index4 operator-(const Index4& p) { return Index4{} - p; }
    friend Index4 operator*(std::int64_t k, const Index4& p) {
        Index4 r;
        for (std::size_t i = 0; i < 4; ++i) r.n[i] = detail::checked_mul(k, p.n[i]);
        return r;
    }
};

inline std::ostream& operator<<(std::ostream& os, const Index4& p) {
    return os << '[' << p.n[0] << ',' << p.n[1] << ',' << p.n[2] << ',' << p.n[3] << ']';
}

struct Index4Hash {
    std::size_t operator()(const Index4& p) const noexcept {
        std::uint64_t h = 0x243f6a8885a308d3ULL;
        for (auto v : p.n) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

using PointSet = std::unordered_set<Index4, Index4Hash>;

namespace detail {

// Coordinates of e_j (j = 0..4) in GoldenCoord form: 2cos(72j), sin(72j)/s.
inline const std::array<GoldenCoord, 5>& basis_coords() {
    static const std::array<GoldenCoord, 5> table = {{
        {{2, 0}, {0, 0}},
        {{-1, 1}, {1, 0}},
        {{0, -1}, {-1, 1}},
        {{0, -1}, {1, -1}},
        {{-1, 1}, {-1, 0}},
    }};
    return table;
}

inline Index4 apply_linear(const Index4& p, const std::array<Index4, 4>& images) {
    Index4 r;
    for (std::size_t j = 0; j < 4; ++j) {
        if (p.n[j] != 0) r = r + p.n[j] * images[j];
    }
    return r;
}

inline constexpr Index4 kE4{-1, -1, -1, -1};

}  // namespace detail

/// Basis vector e_j of the module, j taken mod 5; e4 is rewritten into four indices.
inline Index4 basis(int j) {
    j = ((j % 5) + 5) % 5;
    if (j == 4) return detail::kE4;
    Index4 r;
    r.n[static_cast<std::size_t>(j)] = 1;
    return r;
}

inline GoldenCoord embed_par(const Index4& p) {
    const auto& e = detail::basis_coords();
    GoldenCoord r;
    for (std::size_t j = 0; j < 4; ++j) r = r + GoldenInt{p.n[j]} * e[j];
    return r;
}

/// Perpendicular image: index j maps to e_{2j mod 5}.
inline GoldenCoord embed_perp(const Index4& p) {
    const auto& e = detail::basis_coords();
    GoldenCoord r;
    for (std::size_t j = 0; j < 4; ++j) r = r + GoldenInt{p.n[j]} * e[(2 * j) % 5];
    return r;
}

/// tau * e_j = e_{j-1} + e_j + e_{j+1}.
inline Index4 tau_scale(const Index4& p) {
    static const std::array<Index4, 4> images = [] {
        std::array<Index4, 4> t;
        for (int j = 0; j < 4; ++j) t[static_cast<std::size_t>(j)] = basis(j - 1) + basis(j) + basis(j + 1);
        return t;
    }();
    return detail::apply_linear(p, images);
}

inline Index4 tau2_scale(const Index4& p) { return tau_scale(tau_scale(p)); }

/// Rotation by 36 degrees: e_j -> -e_{j+3}.
inline Index4 rotate36(const Index4& p) {
    static const std::array<Index4, 4> images = [] {
        std::array<Index4, 4> t;
        for (int j = 0; j < 4; ++j) t[static_cast<std::size_t>(j)] = -basis(j + 3);
        return t;
    }();
    return detail::apply_linear(p, images);
}

inline Index4 rotate36(const Index4& p, int times) {
    times = ((times % 10) + 10) % 10;
    Index4 r = p;
    for (int i = 0; i < times; ++i) r = rotate36(r);
    return r;
}

/// Reflection about the x axis: e_j -> e_{-j}.
inline Index4 mirror_x(const Index4& p) {
    static const std::array<Index4, 4> images = [] {
        std::array<Index4, 4> t;
        for (int j = 0; j < 4; ++j) t[static_cast<std::size_t>(j)] = basis(5 - j);
        return t;
    }();
    return detail::apply_linear(p, images);
}

/// Unit step in direction k * 36 degrees, k taken mod 10.
inline const Index4& unit_step(int k) {
    static const std::array<Index4, 10> table = [] {
        std::array<Index4, 10> t;
        t[0] = basis(0);
        for (std::size_t i = 1; i < 10; ++i) t[i] = rotate36(t[i - 1]);
        return t;
    }();
    return table[static_cast<std::size_t>(((k % 10) + 10) % 10)];
}

/// Short step (parallel length 1/tau) pointing in direction k * 36 degrees.
inline const Index4& short_step(int k) {
    static const std::array<Index4, 10> table = [] {
        std::array<Index4, 10> t;
        for (int i = 0; i < 10; ++i) t[static_cast<std::size_t>(i)] = unit_step(i - 2) + unit_step(i + 2);
        return t;
    }();
    return table[static_cast<std::size_t>(((k % 10) + 10) % 10)];
}

inline std::optional<int> unit_direction(const Index4& d) {
    for (int k = 0; k < 10; ++k)
        if (unit_step(k) == d) return k;
    return std::nullopt;
}

inline std::optional<int> short_direction(const Index4& d) {
    for (int k = 0; k < 10; ++k)
        if (short_step(k) == d) return k;
    return std::nullopt;
}

struct StepTables {
    std::array<Index4, 10> unit_steps;
    std::array<Index4, 10> short_steps;
};

inline StepTables step_tables() {
    StepTables t;
    for (int k = 0; k < 10; ++k) {
        t.unit_steps[static_cast<std::size_t>(k)] = unit_step(k);
        t.short_steps[static_cast<std::size_t>(k)] = short_step(k);
    }
    return t;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 to_vec2(const GoldenCoord& c) { return {c.x(), c.y()}; }
inline Vec2 par_point(const Index4& p) { return to_vec2(embed_par(p)); }
inline Vec2 perp_point(const Index4& p) { return to_vec2(embed_perp(p)); }

}  // namespace rph
