#include "common.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rph;
using namespace rph::testing;

namespace {

PointGroup empirical(const std::string& sched, int depth) {
    return empirical_symmetry(perp_cloud(patch(sched, depth), CloudScope::Supported));
}

bool is_subgroup(const PointGroup& small, const PointGroup& big) {
    for (const auto& g : small.elements)
        if (!big.contains(g)) return false;
    return true;
}

}  // namespace

TEST(GroupElement, CompositionIsAction) {
    for (const auto& a : all_elements())
        for (const auto& b : all_elements())
            for (int k = 0; k < 10; ++k) EXPECT_EQ(a.compose(b).apply(k), a.apply(b.apply(k)));
}

TEST(Subgroups, OfD10) {
    const auto& subs = subgroups_of_d10();
    // D10, D5 x2, C10, C5, D2 x5, D1 x10, C2, C1
    EXPECT_EQ(subs.size(), 22u);
    EXPECT_EQ(subs.front().order(), 20u);
    EXPECT_EQ(subs.back().order(), 1u);
    for (const auto& g : subs) {
        const auto n = g.rotation_order(), m = g.mirror_count();
        EXPECT_TRUE(m == 0 || m == n) << g.name();  // D_n has n mirrors, C_n none
    }
}

TEST(ClassifyWheel, Examples) {
    EXPECT_EQ(classify_wheel(WheelDiagram::uniform(Chirality::L)).label(), GroupLabel::C10);
    EXPECT_EQ(classify_wheel(WheelDiagram::uniform(Chirality::R)).label(), GroupLabel::C10);
    EXPECT_EQ(classify_wheel(WheelDiagram::alternating()).label(), GroupLabel::D5);
    EXPECT_EQ(classify_wheel(WheelDiagram::parse("LLRLRLLRLR")).label(), GroupLabel::C2);
    EXPECT_EQ(classify_wheel(WheelDiagram::parse("LLLRRRRLLL")).label(), GroupLabel::C1);
}

TEST(ClassifyWheel, CensusFixture) {
    // Independent brute force over the stabilizers of all 1024 wheels.
    const std::map<std::string, int> expected{{"C1", 840}, {"C10", 2}, {"C2", 30}, {"D1", 150}, {"D5", 2}};
    const auto census = wheel_label_census();
    EXPECT_EQ(census, expected);
    int total = 0;
    for (const auto& [k, v] : census) total += v;
    EXPECT_EQ(total, 1024);
    EXPECT_EQ(census.count("C5"), 0u);
}

TEST(ClassifyWheel, HalfTurnSymmetricWheelsAreC2OrLarger) {
    for (unsigned b = 0; b < 1024; ++b) {
        const auto w = WheelDiagram::from_bits(b);
        bool half_turn = true;
        for (int k = 0; k < 5; ++k) half_turn &= w.flag(k) == w.flag(k + 5);
        EXPECT_EQ(classify_wheel(w).contains(GroupElement{5, false}), half_turn);
    }
}

TEST(SequenceGroup, Examples) {
    const auto c5 = sequence_group({WheelDiagram::uniform(Chirality::L), WheelDiagram::alternating()});
    EXPECT_EQ(c5.label(), GroupLabel::C5);
    EXPECT_EQ(c5.order(), 5u);
    EXPECT_TRUE(c5.contains(GroupElement{2, false}));
    const auto w = WheelDiagram::parse("LLRLLLRLRR");
    EXPECT_EQ(sequence_group({w, w}), classify_wheel(w));
    EXPECT_THROW(sequence_group({}), std::invalid_argument);
}

TEST(SequenceGroup, LagrangeOnRandomPairs) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<unsigned> d(0, 1023);
    for (int i = 0; i < 2000; ++i) {
        const auto a = WheelDiagram::from_bits(d(rng)), b = WheelDiagram::from_bits(d(rng));
        const auto g = sequence_group({a, b});
        EXPECT_EQ(classify_wheel(a).order() % g.order(), 0u);
        EXPECT_EQ(classify_wheel(b).order() % g.order(), 0u);
    }
}

TEST(SequenceGroup, FourCycleIsTrivial) {
    std::vector<WheelDiagram> ws;
    for (const auto& e : parse_schedule(kFourCycle)) ws.push_back(std::get<WheelDiagram>(e));
    EXPECT_EQ(sequence_group(ws).label(), GroupLabel::C1);
}

TEST(PerpAction, MatchesModuleSymmetry) {
    // Acting on the patch by g must act on perpendicular images by perp_action(g).
    const Index4 p{2, -1, 3, 1};
    for (int j = 0; j < 10; ++j) {
        const auto img = perp_point(rotate36(p, j));
        const auto act = perp_action(GroupElement{j, false}, perp_point(p));
        EXPECT_NEAR(img.x, act.x, 1e-12);
        EXPECT_NEAR(img.y, act.y, 1e-12);
    }
    const auto m = perp_point(mirror_x(p));
    const auto act = perp_action(GroupElement{9, true}, perp_point(p));
    EXPECT_NEAR(m.x, act.x, 1e-12);
    EXPECT_NEAR(m.y, act.y, 1e-12);
}

TEST(EmpiricalSymmetry, SinglePointIsDegenerate) {
    const auto g = empirical_symmetry(PerpCloud{{Vec2{0, 0}}, 0});
    EXPECT_EQ(g.label(), GroupLabel::D10);
    EXPECT_EQ(g.order(), 20u);
}

TEST(EmpiricalSymmetry, AllLDepthFourIsChiral) {
    const auto rep = empirical_symmetry_report(perp_cloud(patch(kAllL, 4), CloudScope::Supported));
    EXPECT_EQ(rep.group.label(), GroupLabel::C10);
    // The x-axis mirror is rejected.
    EXPECT_GT(rep.mismatch[10 + 9], rep.tolerance);
}

TEST(EmpiricalSymmetry, AlternatingIsD5) { EXPECT_EQ(empirical(kAlternating, 4).label(), GroupLabel::D5); }

TEST(EmpiricalSymmetry, FourCycleIsTrivial) { EXPECT_EQ(empirical(kFourCycle, 5).label(), GroupLabel::C1); }

TEST(EmpiricalSymmetry, ContainsWheelGroup) {
    for (const auto& sched : {kAllL, kAllR, kAlternating, std::string("LLRLRLLRLR")}) {
        std::vector<WheelDiagram> ws;
        for (const auto& e : parse_schedule(sched)) ws.push_back(std::get<WheelDiagram>(e));
        EXPECT_TRUE(is_subgroup(sequence_group(ws), empirical(sched, 4))) << sched;
    }
}
