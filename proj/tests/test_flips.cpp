#include "common.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace rph;
using namespace rph::testing;

namespace {

const GoldenInt kInvTauSqX4{8, -4};  // 4 / tau^2
const GoldenInt kTauSqX4{4, 4};      // 4 tau^2

Tiling mirrored(const Tiling& t) {
    std::vector<Index4> pts, region;
    for (const auto& v : t.vertices) pts.push_back(mirror_x(v));
    for (auto it = t.region.rbegin(); it != t.region.rend(); ++it) region.push_back(mirror_x(*it));
    return make_tiling(pts, region, t.depth);
}

}  // namespace

TEST(FindFlips, SingleTileHasNone) { EXPECT_TRUE(find_flips(seed_rhombus()).empty()); }

TEST(FindFlips, HopLengths) {
    const auto moves = find_flips(patch(kAllL, 3));
    ASSERT_FALSE(moves.empty());
    for (const auto& m : moves) {
        EXPECT_EQ(embed_par(m.hop).norm2_x4(), kInvTauSqX4);
        EXPECT_EQ(embed_perp(m.hop).norm2_x4(), kTauSqX4);
        EXPECT_TRUE(short_direction(m.hop).has_value());
    }
}

TEST(FindFlips, EliminationChoicesAreOneFlipApart) {
    // Flip the flag of one acute apex near the middle of the patch.
    const auto& prev = patch(kAllL, 2);
    const auto rh = rhombi_of(prev);
    Vec2 mid{};
    for (const auto& r : prev.region) mid = {mid.x + par_point(r).x / 4, mid.y + par_point(r).y / 4};
    std::size_t pick = 0;
    double best = 1e9;
    for (std::size_t i = 0; i < rh.size(); ++i) {
        const auto p = par_point(rh[i].apex[0]);
        if (const double d = std::hypot(p.x - mid.x, p.y - mid.y); d < best) best = d, pick = i;
    }
    const auto base = wheel_chooser(WheelDiagram::uniform(Chirality::L));
    const FlagChooser variant = [&](const Rhombus& r, std::size_t i) {
        auto f = base(r, i);
        if (i == pick) f.first = flip(f.first);
        return f;
    };
    const auto a = gpsp_step(prev, base).tiling;
    const auto b = gpsp_step(prev, variant).tiling;
    ASSERT_TRUE(validate(a));
    ASSERT_TRUE(validate(b));
    const auto [cw, ccw] = apex_candidates(rh[pick].apex[0], rh[pick].dir[0]);
    // All-L removes the clockwise candidate, the variant the counterclockwise one.
    std::size_t connecting = 0;
    for (const auto& m : find_flips(a))
        if (m.vertex == ccw && m.target() == cw) ++connecting;
    EXPECT_EQ(connecting, 1u);
    const FlipMove m{ccw, cw - ccw};
    EXPECT_EQ(apply_flip(a, m).vertices, b.vertices);
}

TEST(ApplyFlip, InvolutionAndCounts) {
    const auto& t = patch(kAllL, 3);
    const auto moves = find_flips(t);
    ASSERT_GE(moves.size(), 10u);
    for (std::size_t i = 0; i < moves.size(); i += moves.size() / 10) {
        const auto& m = moves[i];
        const auto u = apply_flip(t, m);
        EXPECT_TRUE(validate(u));
        EXPECT_EQ(count_kinds(u.faces), count_kinds(t.faces));
        const auto back = apply_flip(u, m.reversed());
        EXPECT_EQ(back, t);
        EXPECT_EQ(embed_perp(m.target()) - embed_perp(m.vertex), embed_perp(m.hop));
    }
}

TEST(ApplyFlip, RejectsUnavailableMove) {
    const auto& t = patch(kAllL, 3);
    EXPECT_THROW(apply_flip(t, FlipMove{t.vertices.front(), short_step(0)}), std::invalid_argument);
}

TEST(FindFlips, MirrorEquivariant) {
    const auto& t = patch(kAllL, 3);
    std::vector<FlipMove> expect;
    for (const auto& m : find_flips(t)) expect.push_back({mirror_x(m.vertex), mirror_x(m.hop)});
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(find_flips(mirrored(t)), expect);
}

TEST(MonteCarlo, InvariantsAlongTrace) {
    const auto& t = patch(kAllL, 3);
    const auto res = monte_carlo_flips(t, 2000, 5, 100);
    EXPECT_FALSE(res.trace.stopped_early);
    EXPECT_EQ(res.trace.moves.size(), 2000u);
    EXPECT_EQ(res.trace.validity_checks, 20u);
    EXPECT_EQ(res.trace.counts_before, res.trace.counts_after);
    EXPECT_TRUE(validate(res.tiling));
    for (const auto& m : res.trace.moves) EXPECT_TRUE(short_direction(m.hop).has_value());
    ASSERT_GE(res.trace.stats.size(), 2u);
    EXPECT_GE(res.trace.stats.back().perp_rms, res.trace.stats.front().perp_rms);
}

TEST(MonteCarlo, DeterministicPerSeed) {
    const auto& t = patch(kAllL, 3);
    const auto a = monte_carlo_flips(t, 300, 9, 0);
    const auto b = monte_carlo_flips(t, 300, 9, 0);
    EXPECT_EQ(a.trace.moves, b.trace.moves);
    EXPECT_EQ(a.tiling, b.tiling);
}

TEST(MonteCarlo, StopsWhenNothingToFlip) {
    const auto res = monte_carlo_flips(seed_rhombus(), 10, 1);
    EXPECT_TRUE(res.trace.stopped_early);
    EXPECT_TRUE(res.trace.moves.empty());
}
