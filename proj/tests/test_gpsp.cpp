#include "common.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace rph;
using namespace rph::testing;

namespace {

bool contains(const PointSet& s, const Index4& p) { return s.count(p) > 0; }

Tiling mirrored(const Tiling& t) {
    std::vector<Index4> pts, region;
    for (const auto& v : t.vertices) pts.push_back(mirror_x(v));
    for (auto it = t.region.rbegin(); it != t.region.rend(); ++it) region.push_back(mirror_x(*it));
    return make_tiling(pts, region, t.depth);
}

std::vector<Vec2> normalized_cloud(const Tiling& t) {
    const auto c = perp_cloud(t, CloudScope::Supported);
    const double r = max_radius(c);
    std::vector<Vec2> out;
    for (const auto& p : c.points) out.push_back({p.x / r, p.y / r});
    return out;
}

}  // namespace

TEST(Motif, Points) {
    const auto& m = motif();
    EXPECT_EQ(m.size(), 11u);
    EXPECT_NE(std::find(m.begin(), m.end(), Index4{}), m.end());
    EXPECT_NE(std::find(m.begin(), m.end(), Index4{1, 1, 0, 0}), m.end());
    std::vector<Index4> shell;
    for (const auto& p : m)
        if (p != Index4{}) shell.push_back(p);
    for (const auto& p : shell) EXPECT_EQ(embed_par(p).norm2_x4(), (GoldenInt{4, 4}));  // |p|^2 = tau^2
    const Index4 first{1, 1, 0, 0};
    for (int k = 0; k < 10; ++k) {
        const Index4 a = rotate36(first, k), b = rotate36(first, k + 1);
        EXPECT_TRUE(unit_direction(b - a).has_value());
    }
}

TEST(Inflate, Examples) {
    const auto from_origin = inflate(std::vector<Index4>{Index4{}});
    EXPECT_EQ(from_origin, PointSet(motif().begin(), motif().end()));
    const auto from_e0 = inflate(std::vector<Index4>{Index4{1, 0, 0, 0}});
    EXPECT_TRUE(contains(from_e0, Index4{1, 0, -1, -1}));
    const auto edge = inflate(std::vector<Index4>{Index4{}, Index4{1, 0, 0, 0}});
    EXPECT_LT(edge.size(), 22u);
}

TEST(Eliminate, SingleRhombus) {
    const auto seed = seed_rhombus();
    for (auto c : {Chirality::L, Chirality::R}) {
        const auto rh = rhombi_of(seed);
        ASSERT_EQ(rh.size(), 1u);
        const auto cand = inflate(seed.vertices);
        const auto res = eliminate(cand, rh, wheel_chooser(WheelDiagram::uniform(c)));
        EXPECT_EQ(res.removed.size(), 2u);
        EXPECT_EQ(res.designated, 2u);
        EXPECT_EQ(res.points.size(), cand.size() - 2);
        EXPECT_TRUE(validate(make_tiling(res.points)));
    }
}

TEST(Eliminate, NoRhombiLeavesCandidates) {
    const auto p = seed_pentagon();
    const auto cand = inflate(p.vertices);
    EXPECT_EQ(eliminate(cand, rhombi_of(p), wheel_chooser(WheelDiagram::uniform(Chirality::L))).points, cand);
}

TEST(Eliminate, MissingDesignatedPointIsAFault) {
    const auto seed = seed_rhombus();
    auto cand = inflate(seed.vertices);
    const auto rh = rhombi_of(seed);
    cand.erase(designated_point(rh[0].apex[0], rh[0].dir[0], Chirality::L));
    EXPECT_THROW(eliminate(cand, rh, wheel_chooser(WheelDiagram::uniform(Chirality::L))), StructuralFault);
}

TEST(EliminationRule, Labels) {
    EXPECT_EQ(rule_from_flags(Chirality::L, Chirality::L), EliminationRule::l);
    EXPECT_EQ(rule_from_flags(Chirality::R, Chirality::R), EliminationRule::r);
    EXPECT_NE(rule_from_flags(Chirality::L, Chirality::R), rule_from_flags(Chirality::R, Chirality::L));
    for (auto r : {EliminationRule::l, EliminationRule::r, EliminationRule::m, EliminationRule::m_prime}) {
        const auto [a, b] = flags_from_rule(r);
        EXPECT_EQ(rule_from_flags(a, b), r);
    }
}

TEST(WheelDiagram, Strings) {
    EXPECT_EQ(WheelDiagram::uniform(Chirality::L).str(), kAllL);
    EXPECT_EQ(WheelDiagram::alternating().str(), kAlternating);
    EXPECT_EQ(WheelDiagram::parse("LRRLLLRLRR").str(), "LRRLLLRLRR");
    EXPECT_THROW(WheelDiagram::parse("LLL"), std::invalid_argument);
    EXPECT_THROW(WheelDiagram::parse("LLLLLLLLLX"), std::invalid_argument);
    for (unsigned b = 0; b < 1024; ++b) EXPECT_EQ(WheelDiagram::from_bits(b).bits(), b);
}

TEST(GpspStep, SeedStepCoversExpandedRhombus) {
    const auto step = gpsp_step(seed_rhombus(), ScheduleEntry{WheelDiagram::uniform(Chirality::L)});
    EXPECT_TRUE(validate(step.tiling));
    ASSERT_EQ(step.tiling.region.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(step.tiling.region[i], tau2_scale(seed_rhombus().region[i]));
    double covered = 0;
    for (const auto& f : step.tiling.faces) {
        auto clipped = clip_polygon(to_plane(f.cycle), to_plane(step.tiling.region));
        covered += polygon_area(clipped);
    }
    EXPECT_NEAR(covered, polygon_area(step.tiling.region), 1e-9);
    EXPECT_EQ(step.log.rhombi, 1u);
    EXPECT_EQ(step.log.removed, 2u);
}

TEST(GpspStep, BothSeedChoicesExtract) {
    for (auto c : {Chirality::L, Chirality::R})
        EXPECT_TRUE(validate(gpsp_step(seed_rhombus(), ScheduleEntry{WheelDiagram::uniform(c)}).tiling));
}

TEST(GpspStep, EliminationCountsAndNoOrphans) {
    for (int d = 1; d <= 4; ++d) {
        const auto& prev = patch(kAllL, d - 1);
        const auto step = gpsp_step(prev, ScheduleEntry{WheelDiagram::uniform(Chirality::L)});
        EXPECT_EQ(step.log.designated, 2 * rhombi_of(prev).size());
        EXPECT_LE(step.log.removed, step.log.designated);
        PointSet on_face;
        for (const auto& f : step.tiling.faces) on_face.insert(f.cycle.begin(), f.cycle.end());
        for (const auto& v : step.tiling.vertices)
            if (strictly_inside(step.tiling.region, v)) {
                EXPECT_TRUE(on_face.count(v)) << v;
            }
    }
}

TEST(GpspStep, VertexGrowthApproachesTauFourth) {
    // Frozen regression counts for the all-L sequence from the R seed.
    const std::vector<std::size_t> expected{4, 32, 268, 2018, 14402, 100382};
    std::vector<double> n;
    for (int d = 0; d <= 5; ++d) {
        const auto& t = patch(kAllL, d);
        EXPECT_EQ(t.vertices.size(), expected[static_cast<std::size_t>(d)]) << "depth " << d;
        n.push_back(static_cast<double>(t.vertices.size()));
    }
    const double tau4 = std::pow(kTau, 4);
    const double r5 = n[5] / n[4], r4 = n[4] / n[3];
    EXPECT_LT(std::abs(r5 - tau4), std::abs(r4 - tau4));
    EXPECT_NEAR(r5, tau4, 0.03 * tau4);
}

TEST(GpspStep, InteriorFrequencies) {
    const auto f = tile_frequencies(patch(kAllL, 5));
    EXPECT_NEAR(f.ratios[1], 2.0, 0.1);
    EXPECT_NEAR(f.ratios[2], 1 / kTau, 0.05 / kTau);
}

TEST(GpspStep, UniformWheelsAreMirrorImages) {
    const auto left = run_sequence(mirrored(seed_rhombus()), {WheelDiagram::uniform(Chirality::L)}, 3, 0).tiling;
    const auto right = mirrored(patch(kAllR, 3));
    EXPECT_EQ(left.vertices, right.vertices);
    EXPECT_EQ(left.faces.size(), right.faces.size());
}

TEST(PointInflation, Examples) {
    const PointSet origin{Index4{}};
    EXPECT_EQ(point_inflation_only(origin, 1), PointSet(motif().begin(), motif().end()));
}

TEST(PointInflation, SupersetOfRph) {
    const auto seed = seed_rhombus();
    const PointSet s(seed.vertices.begin(), seed.vertices.end());
    for (const auto& sched : {kAllL, kAllR, kAlternating}) {
        for (int d = 1; d <= 4; ++d) {
            const auto sup = point_inflation_only(s, d);
            for (const auto& v : patch(sched, d).vertices) ASSERT_TRUE(contains(sup, v)) << sched << " depth " << d;
        }
    }
}

TEST(PointInflation, PerpCloudStrictlyLarger) {
    const auto seed = seed_rhombus();
    const auto sup = point_inflation_only(PointSet(seed.vertices.begin(), seed.vertices.end()), 4);
    const auto& rph = patch(kAllL, 4);
    EXPECT_GT(sup.size(), rph.vertices.size());
    // The perpendicular map is injective, so the image of the superset strictly contains the RPH cloud.
    std::set<std::pair<double, double>> big;
    for (const auto& v : sup) big.insert({perp_point(v).x, perp_point(v).y});
    for (const auto& p : perp_cloud(rph).points) EXPECT_TRUE(big.count({p.x, p.y}));
    EXPECT_GT(big.size(), perp_cloud(rph).points.size());
}

TEST(RunSequence, DistinctSchedulesGiveDistinctWindows) {
    const auto a = normalized_cloud(run_sequence(seed_rhombus(), parse_schedule(kAllL), 4, 0).tiling);
    const auto b = normalized_cloud(run_sequence(seed_rhombus(), parse_schedule(kAllL + " " + kAllR), 4, 0).tiling);
    EXPECT_GT(hausdorff(a, b), 0.05);
}

TEST(RunSequence, RandomDeterminism) {
    const Schedule s = parse_schedule("RANDOM(1,1,1,1)");
    const auto a = run_sequence(seed_rhombus(), s, 4, 42);
    const auto b = run_sequence(seed_rhombus(), s, 4, 42);
    const auto c = run_sequence(seed_rhombus(), s, 4, 43);
    EXPECT_EQ(a.tiling, b.tiling);
    EXPECT_NE(a.tiling.vertices, c.tiling.vertices);
    EXPECT_TRUE(validate(a.tiling));
    EXPECT_TRUE(validate(c.tiling));
    ASSERT_EQ(a.log.size(), 4u);
    EXPECT_EQ(a.log[0].rule, "RANDOM(1,1,1,1)");
}

TEST(RunSequence, CyclesSchedule) {
    const auto res = run_sequence(seed_rhombus(), parse_schedule(kAllL + " " + kAllR), 3, 0);
    ASSERT_EQ(res.log.size(), 3u);
    EXPECT_EQ(res.log[0].rule, kAllL);
    EXPECT_EQ(res.log[1].rule, kAllR);
    EXPECT_EQ(res.log[2].rule, kAllL);
    EXPECT_THROW(run_sequence(seed_rhombus(), {}, 1, 0), std::invalid_argument);
}

TEST(RandomStream, CounterBased) {
    EXPECT_EQ(stream_uniform(1, 2, 3, 4), stream_uniform(1, 2, 3, 4));
    EXPECT_NE(stream_uniform(1, 2, 3, 4), stream_uniform(1, 2, 3, 5));
    EXPECT_NE(stream_uniform(1, 2, 3, 4), stream_uniform(2, 2, 3, 4));
    double lo = 1, hi = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const double u = stream_uniform(7, 0, 0, i);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    EXPECT_GE(lo, 0.0);
    EXPECT_LT(hi, 1.0);
    RandomRule only_m{{0, 0, 1, 0}, 0};
    for (double u : {0.0, 0.3, 0.99}) EXPECT_EQ(sample_rule(only_m, u), EliminationRule::m);
}

TEST(Seeds, SingleTiles) {
    EXPECT_EQ(count_kinds(seed_rhombus().faces).R, 1u);
    EXPECT_EQ(count_kinds(seed_pentagon().faces).P, 1u);
    EXPECT_EQ(count_kinds(seed_hexagon().faces).H, 1u);
    EXPECT_THROW(seed_walk({0, 1}), std::invalid_argument);
    for (const auto& s : {seed_pentagon(), seed_hexagon()})
        EXPECT_TRUE(validate(run_sequence(s, {WheelDiagram::uniform(Chirality::L)}, 3, 0).tiling));
}
