#include "common.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rph;
using rph::testing::kAllL;
using rph::testing::patch;

namespace {

std::vector<Index4> walk(const std::vector<int>& dirs) {
    std::vector<Index4> pts;
    Index4 p{};
    for (int k : dirs) {
        pts.push_back(p);
        p = p + unit_step(k);
    }
    return pts;
}

}  // namespace

TEST(BuildEdges, SingleEdge) {
    EXPECT_EQ(build_edges(std::vector<Index4>{Index4{}, Index4{1, 0, 0, 0}}).size(), 1u);
}

TEST(BuildEdges, MotifShellIsARing) {
    std::vector<Index4> pts(motif().begin(), motif().end());
    const auto edges = build_edges(pts);
    EXPECT_EQ(edges.size(), 10u);
    for (const auto& e : edges) {
        EXPECT_NE(e.a, Index4{});
        EXPECT_NE(e.b, Index4{});
    }
}

TEST(BuildEdges, CrossingPairIsAFault) {
    // The unit segment from e9 along 108 degrees crosses the edge 0 -> e0.
    const Index4 lo = unit_step(9), hi = lo + unit_step(3);
    ASSERT_LT(par_point(lo).y, 0.0);
    ASSERT_GT(par_point(hi).y, 0.0);
    EXPECT_THROW(build_edges(std::vector<Index4>{Index4{}, unit_step(0), lo, hi}), StructuralFault);
}

TEST(BuildEdges, DepthTwoPatchHasNoCrossings) {
    const auto& t = patch(kAllL, 2);
    EXPECT_FALSE(find_crossing(t.edges).has_value());
}

TEST(ExtractFaces, Prototiles) {
    auto r = make_tiling(seed_rhombus().vertices);
    ASSERT_EQ(r.faces.size(), 1u);
    EXPECT_EQ(r.faces[0].kind, FaceKind::R);

    auto p = make_tiling(walk({0, 2, 4, 6, 8}));
    ASSERT_EQ(p.faces.size(), 1u);
    EXPECT_EQ(p.faces[0].kind, FaceKind::P);

    auto h = make_tiling(walk({0, 2, 3, 5, 7, 8}));
    ASSERT_EQ(h.faces.size(), 1u);
    EXPECT_EQ(h.faces[0].kind, FaceKind::H);
    const std::vector<Vec2> expected{{0, 0}, {1, 0}, {1.309, 0.951}, {1, 1.902}, {0, 1.902}, {-0.309, 0.951}};
    const auto& cyc = h.faces[0].cycle;
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& v : cyc) {
            const auto q = par_point(v);
            found |= std::abs(q.x - e.x) < 1e-3 && std::abs(q.y - e.y) < 1e-3;
        }
        EXPECT_TRUE(found) << e.x << "," << e.y;
    }
    EXPECT_NEAR(polygon_area(cyc), 2.489898, 1e-6);
}

TEST(ExtractFaces, ExactAreas) {
    EXPECT_NEAR(polygon_area(seed_rhombus().faces[0].cycle), 0.587785, 1e-6);
    EXPECT_NEAR(polygon_area(seed_pentagon().faces[0].cycle), 1.720477, 1e-6);
    EXPECT_NEAR(area_R(), 0.587785, 1e-6);
    EXPECT_NEAR(area_P(), 1.720477, 1e-6);
    EXPECT_NEAR(area_H(), 2.489898, 1e-6);
}

TEST(ExtractFaces, Orientation) {
    for (int k = 0; k < 10; ++k) {
        std::vector<Index4> pts;
        for (const auto& v : seed_rhombus().vertices) pts.push_back(rotate36(v, k));
        const auto t = make_tiling(pts);
        ASSERT_EQ(t.faces.size(), 1u);
        EXPECT_EQ(t.faces[0].kind, FaceKind::R);
        const auto ap = acute_apexes(t.faces[0]);
        ASSERT_EQ(ap.size(), 2u);
        EXPECT_EQ((ap[1].second - ap[0].second + 10) % 10, 5);
    }
}

TEST(Validate, Examples) {
    EXPECT_TRUE(validate(Tiling{}));
    EXPECT_TRUE(validate(seed_rhombus()));
    EXPECT_TRUE(validate(patch(kAllL, 3)));
}

TEST(Validate, DeletedInteriorVertexIsDetected) {
    const auto& t = patch(kAllL, 3);
    // The vertex closest to the middle of the region.
    Vec2 mid{};
    for (const auto& r : t.region) mid = {mid.x + par_point(r).x / 4, mid.y + par_point(r).y / 4};
    Index4 victim = t.vertices.front();
    double best = 1e9;
    for (const auto& v : t.vertices) {
        const auto p = par_point(v);
        if (const double d = std::hypot(p.x - mid.x, p.y - mid.y); d < best) best = d, victim = v;
    }
    std::vector<Index4> pts;
    for (const auto& v : t.vertices)
        if (v != victim) pts.push_back(v);
    const auto mutated = make_tiling(pts, t.region, t.depth);
    const auto rep = validate(mutated);
    EXPECT_FALSE(rep.ok);
    EXPECT_NE(rep.message.find("not a prototile"), std::string::npos) << rep.message;
}

TEST(Validate, WrongKindTagIsDetected) {
    auto t = seed_rhombus();
    t.faces[0].kind = FaceKind::P;
    EXPECT_FALSE(validate(t).ok);
}

TEST(Tiling, AreaEquationOverInteriorFaces) {
    const auto& t = patch(kAllL, 4);
    const auto c = count_kinds(t.faces, true);
    const double tiles = static_cast<double>(c.R) * area_R() + static_cast<double>(c.P) * area_P() +
                         static_cast<double>(c.H) * area_H();
    double interior = 0.0;
    for (const auto& f : t.faces)
        if (!f.boundary) interior += polygon_area(f.cycle);
    EXPECT_NEAR(tiles, interior, 1e-6 * interior);
    // Interior faces cover the supported region up to a boundary layer.
    const double region = polygon_area(t.region);
    EXPECT_LT(interior, region);
    EXPECT_GT(interior, 0.75 * region);
}
