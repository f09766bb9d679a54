#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "causalpath/core.hpp"

using namespace causalpath;

namespace {

ProbDist dist(std::vector<double> p) {
    const int m = static_cast<int>(p.size());
    return ProbDist(Alphabet(m), std::move(p));
}

ProbDist random_dist(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<double> w(static_cast<std::size_t>(m));
    for (double& v : w) {
        v = u(rng);
    }
    return ProbDist::normalized(Alphabet(m), w);
}

}  // namespace

TEST(Alphabet, RejectsNonPositive) {
    EXPECT_THROW(Alphabet(0), InputError);
    EXPECT_TRUE(Alphabet(3).contains(2));
    EXPECT_FALSE(Alphabet(3).contains(3));
}

TEST(SymbolSeq, RejectsOutOfRange) {
    EXPECT_THROW(SymbolSeq(Alphabet(2), {0, 1, 2}), InputError);
    EXPECT_NO_THROW(SymbolSeq(Alphabet(3), {0, 1, 2}));
}

TEST(ProbDist, ValidatesNormalization) {
    EXPECT_THROW(dist({0.5, 0.6}), InvalidDistribution);
    EXPECT_THROW(dist({-0.1, 1.1}), InvalidDistribution);
    EXPECT_NO_THROW(dist({0.5, 0.5 + 5e-10}));
    EXPECT_THROW(ProbDist(Alphabet(3), {0.5, 0.5}), InvalidDistribution);
}

TEST(ProbDist, ZeroLogIsSignalled) {
    const ProbDist p = dist({1.0, 0.0});
    EXPECT_DOUBLE_EQ(p.log2_prob(0), 0.0);
    EXPECT_THROW((void)p.log2_prob(1), ZeroProbabilityError);
}

TEST(ProbDist, NormalizedRejectsZeroTotal) {
    EXPECT_THROW(ProbDist::normalized(Alphabet(2), {0.0, 0.0}), ZeroProbabilityError);
}

TEST(Kl, Examples) {
    EXPECT_DOUBLE_EQ(kl_divergence(dist({0.3, 0.7}), dist({0.3, 0.7})), 0.0);
    // 0.5 log2 2 + 0.5 log2(2/3)
    const double expected = 0.5 * 1.0 + 0.5 * (1.0 - std::log2(3.0));
    EXPECT_NEAR(kl_divergence(dist({0.5, 0.5}), dist({0.25, 0.75})), expected, 1e-15);
    EXPECT_NEAR(expected, 0.2075, 5e-5);
    EXPECT_DOUBLE_EQ(kl_divergence(dist({1.0, 0.0}), dist({0.5, 0.5})), 1.0);
}

TEST(Kl, Errors) {
    EXPECT_THROW(kl_divergence(dist({0.5, 0.5}), dist({1.0, 0.0})), AbsoluteContinuityError);
    EXPECT_THROW(kl_divergence(dist({0.5, 0.5}), dist({0.2, 0.3, 0.5})), AlphabetMismatch);
}

TEST(Entropy, Examples) {
    EXPECT_DOUBLE_EQ(entropy(ProbDist::uniform(Alphabet(4))), 2.0);
    EXPECT_DOUBLE_EQ(entropy(dist({1.0, 0.0, 0.0})), 0.0);
    const double h = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
    EXPECT_NEAR(entropy(dist({0.25, 0.75})), h, 1e-15);
    EXPECT_NEAR(h, 0.8113, 5e-5);
}

TEST(TotalVariation, Examples) {
    EXPECT_DOUBLE_EQ(total_variation(dist({0.2, 0.8}), dist({0.2, 0.8})), 0.0);
    EXPECT_DOUBLE_EQ(total_variation(dist({1.0, 0.0}), dist({0.0, 1.0})), 1.0);
    EXPECT_DOUBLE_EQ(total_variation(dist({0.5, 0.5}), dist({0.25, 0.75})), 0.25);
    EXPECT_THROW(total_variation(dist({1.0}), dist({0.5, 0.5})), AlphabetMismatch);
}

TEST(AbsLogRatio, HandExample) {
    // |log2 1.6| + |log2 0.4| = 2
    EXPECT_NEAR(abs_log_ratio_sum(dist({0.8, 0.2}), dist({0.5, 0.5})), 2.0, 1e-12);
}

TEST(Log2Add, Basic) {
    EXPECT_NEAR(log2_add(0.0, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(log2_add(-2000.0, -2000.0), -1999.0, 1e-12);
    EXPECT_DOUBLE_EQ(log2_add(-INFINITY, 3.0), 3.0);
}

TEST(Properties, KlNonnegativeZeroIffEqual) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        const int m = 2 + t % 5;
        const ProbDist p = random_dist(rng, m);
        const ProbDist q = random_dist(rng, m);
        EXPECT_GE(kl_divergence(p, q), 0.0);
        EXPECT_LE(kl_divergence(p, p), 1e-12);
        if (total_variation(p, q) > 1e-6) {
            EXPECT_GT(kl_divergence(p, q), 0.0);
        }
    }
}

TEST(Properties, Pinsker) {
    // In bits: TV <= sqrt(D * ln2 / 2).
    std::mt19937_64 rng(12);
    for (int t = 0; t < 500; ++t) {
        const int m = 2 + t % 4;
        const ProbDist p = random_dist(rng, m);
        const ProbDist q = random_dist(rng, m);
        EXPECT_LE(total_variation(p, q), std::sqrt(kl_divergence(p, q) * std::log(2.0) / 2.0) + 1e-12);
    }
}

TEST(Properties, EntropyConcave) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 500; ++t) {
        const int m = 2 + t % 6;
        const ProbDist p = random_dist(rng, m);
        const ProbDist q = random_dist(rng, m);
        std::vector<double> mid(static_cast<std::size_t>(m));
        for (int a = 0; a < m; ++a) {
            mid[static_cast<std::size_t>(a)] = 0.5 * (p[a] + q[a]);
        }
        const double hm = entropy(ProbDist(Alphabet(m), mid));
        EXPECT_GE(hm + 1e-12, 0.5 * (entropy(p) + entropy(q)));
        EXPECT_LE(hm, std::log2(m) + 1e-12);
    }
}
