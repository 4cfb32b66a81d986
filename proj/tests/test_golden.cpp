#include "rph/golden.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace rph;

namespace {

GoldenInt random_gi(std::mt19937_64& rng, std::int64_t lim) {
    std::uniform_int_distribution<std::int64_t> d(-lim, lim);
    return {d(rng), d(rng)};
}

}  // namespace

TEST(GoldenInt, TauSquaredIsTauPlusOne) {
    EXPECT_EQ(gold_mul(GoldenInt::tau(), GoldenInt::tau()), (GoldenInt{1, 1}));
}

TEST(GoldenInt, ProductAgainstFloat) {
    const GoldenInt p = gold_mul({2, 3}, {1, -1});
    EXPECT_EQ(p, (GoldenInt{-1, -2}));
    EXPECT_NEAR(p.to_double(), (2 + 3 * kTau) * (1 - kTau), 1e-12);
}

TEST(GoldenInt, MultiplicativeIdentity) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto x = random_gi(rng, 1'000'000);
        EXPECT_EQ(gold_mul(x, GoldenInt{1}), x);
    }
}

TEST(GoldenInt, RingLaws) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 2000; ++i) {
        const auto x = random_gi(rng, 1000), y = random_gi(rng, 1000), z = random_gi(rng, 1000);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x * y, y * x);
    }
}

TEST(GoldenInt, Conjugates) {
    EXPECT_EQ(gold_conj(GoldenInt::tau()), (GoldenInt{1, -1}));
    EXPECT_NEAR(gold_conj(GoldenInt::tau()).to_double(), -0.618034, 1e-6);
    EXPECT_EQ(gold_conj({1, 1}), (GoldenInt{2, -1}));
    EXPECT_NEAR(gold_conj({1, 1}).to_double(), 0.381966, 1e-6);
    EXPECT_EQ(gold_conj(GoldenInt{5}), GoldenInt{5});
}

TEST(GoldenInt, ConjugationIsRingAutomorphism) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        const auto x = random_gi(rng, 1'000'000), y = random_gi(rng, 1'000'000);
        EXPECT_EQ(gold_conj(gold_mul(x, y)), gold_mul(gold_conj(x), gold_conj(y)));
        EXPECT_EQ(gold_conj(x + y), gold_conj(x) + gold_conj(y));
    }
}

TEST(GoldenInt, FloatHomomorphism) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10000; ++i) {
        const auto x = random_gi(rng, 1'000'000), y = random_gi(rng, 1'000'000);
        const double expect = x.to_double() * y.to_double();
        EXPECT_NEAR(gold_mul(x, y).to_double(), expect, 1e-9 * std::max(1.0, std::abs(expect)));
    }
}

TEST(GoldenInt, Sign) {
    EXPECT_EQ(gold_sign({-1, 1}), Sign::positive);
    EXPECT_EQ(gold_sign({8, -5}), Sign::negative);
    EXPECT_EQ(gold_sign({0, 0}), Sign::zero);
    // Convergent pairs of Fibonacci numbers sit very close to zero.
    EXPECT_EQ(gold_sign({832040, -514229}), Sign::negative);
    EXPECT_EQ(gold_sign({-832040, 514229}), Sign::positive);
    EXPECT_EQ(gold_sign({1346269, -832040}), Sign::positive);
}

TEST(GoldenInt, SignAgreesWithFloat) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20000; ++i) {
        const auto x = random_gi(rng, 1'000'000);
        const double v = x.to_double();
        if (std::abs(v) <= 1e-6) continue;
        EXPECT_EQ(gold_sign(x), v > 0 ? Sign::positive : Sign::negative) << x;
    }
}

TEST(GoldenInt, OverflowIsReported) {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2;
    EXPECT_THROW(gold_mul({big, big}, {4, 4}), OverflowError);
    EXPECT_THROW((GoldenInt{std::numeric_limits<std::int64_t>::max(), 0} + GoldenInt{1, 0}), OverflowError);
    EXPECT_THROW(gold_conj({std::numeric_limits<std::int64_t>::max(), 1}), OverflowError);
}

TEST(GoldenCoord, ClosedUnderOperations) {
    const GoldenCoord p{{2, 0}, {0, 0}}, q{{-1, 1}, {1, 0}};
    const auto r = GoldenInt{1, 1} * (p + q) - q;
    EXPECT_NEAR(r.x(), kTau * kTau * (1 + std::cos(2 * M_PI / 5)) - std::cos(2 * M_PI / 5), 1e-12);
    EXPECT_NEAR(r.y(), kTau * kTau * std::sin(2 * M_PI / 5) - std::sin(2 * M_PI / 5), 1e-12);
    EXPECT_EQ(p.norm2_x4(), GoldenInt{4});
    EXPECT_EQ(q.norm2_x4(), GoldenInt{4});
}
