#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "causalpath/ctw.hpp"
#include "ctw_oracle.hpp"

using namespace causalpath;

namespace {

std::vector<int> level_sizes(const ContextSchema& s) {
    std::vector<int> out;
    for (int j = 1; j <= s.depth(); ++j) {
        out.push_back(s.level_size(j));
    }
    return out;
}

std::vector<Symbol> iid_stream(std::uint64_t seed, int m, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, m - 1);
    std::vector<Symbol> out(n);
    for (auto& s : out) {
        s = u(rng);
    }
    return out;
}

}  // namespace

TEST(Kt, Examples) {
    const std::vector<std::uint64_t> c0{0, 0};
    const ProbDist p0 = kt_predict(c0, Alphabet(2));
    EXPECT_DOUBLE_EQ(p0[0], 0.5);
    const std::vector<std::uint64_t> c1{3, 1};
    const ProbDist p1 = kt_predict(c1, Alphabet(2));
    EXPECT_DOUBLE_EQ(p1[0], 0.7);
    EXPECT_DOUBLE_EQ(p1[1], 0.3);
    const std::vector<std::uint64_t> c2{0, 0, 0};
    EXPECT_NEAR(kt_predict(c2, Alphabet(3))[2], 1.0 / 3.0, 1e-15);
    EXPECT_THROW(kt_predict(c1, Alphabet(3)), InputError);
}

TEST(Schema, LeafAndNodeCounts) {
    const Alphabet t(3);
    const auto stale = ContextSchema::with_side(t, t, 1, 1);
    EXPECT_EQ(stale.depth(), 2);
    EXPECT_EQ(stale.leaf_count(), 27u);
    EXPECT_EQ(stale.node_count(), 31u);
    const auto pair = ContextSchema::with_side(t, t, 1, 0);
    EXPECT_EQ(pair.leaf_count(), 9u);
    EXPECT_EQ(pair.node_count(), 10u);
    const auto plain = ContextSchema::plain(t, 1);
    EXPECT_EQ(plain.leaf_count(), 3u);
    EXPECT_EQ(plain.node_count(), 4u);
}

TEST(Schema, ContextLayout) {
    const Alphabet t(3);
    const auto stale = ContextSchema::with_side(t, t, 1, 1);
    const std::vector<Symbol> x{2, 1, 0};
    const std::vector<Symbol> y{1, 2, 2};
    // pos 3: level 1 = x_2 alone, level 2 = (x_1, y_1) = 1*3+2
    EXPECT_EQ(stale.context_at(x, y, 3), (std::vector<Symbol>{0, 5}));
    EXPECT_EQ(stale.context_at(x, y, 1), (std::vector<Symbol>{2}));
    EXPECT_TRUE(stale.context_at(x, y, 0).empty());
    EXPECT_THROW(stale.context_at(x, y, 4), InputError);
}

TEST(Ctw, FreshTreeIsUniform) {
    ContextTree tree(ContextSchema::plain(Alphabet(3), 2));
    const std::vector<Symbol> ctx{1, 2};
    const ProbDist p = tree.predict(ctx);
    for (int a = 0; a < 3; ++a) {
        EXPECT_NEAR(p[a], 1.0 / 3.0, 1e-15);
    }
    EXPECT_NEAR(tree.predict({}).probs()[0], 1.0 / 3.0, 1e-15);
}

TEST(Ctw, RejectsMalformedContext) {
    ContextTree tree(ContextSchema::plain(Alphabet(2), 1));
    const std::vector<Symbol> too_long{0, 1};
    const std::vector<Symbol> bad{2};
    EXPECT_THROW(tree.predict(too_long), InputError);
    EXPECT_THROW(tree.predict(bad), InputError);
    EXPECT_THROW(tree.observe(std::vector<Symbol>{0}, 5), InputError);
}

TEST(Ctw, DepthZeroIsKt) {
    ContextTree tree(ContextSchema::plain(Alphabet(3), 0));
    std::vector<std::uint64_t> counts(3, 0);
    for (Symbol s : iid_stream(5, 3, 50)) {
        const ProbDist p = tree.predict({});
        const ProbDist q = kt_predict(counts, Alphabet(3));
        for (int a = 0; a < 3; ++a) {
            EXPECT_NEAR(p[a], q[a], 1e-12);
        }
        tree.observe({}, s);
        ++counts[static_cast<std::size_t>(s)];
    }
}

TEST(Ctw, DepthOneHandRecursion) {
    // Context 0 is always followed by 1; 8 such transitions.
    ContextTree tree(ContextSchema::plain(Alphabet(2), 1));
    oracle::NaiveCtw ref(2, {2});
    const std::vector<Symbol> ctx0{0};
    for (int t = 0; t < 8; ++t) {
        tree.observe(ctx0, 1);
        ref.observe({0}, 1);
    }
    const auto leaf = tree.counts_at(ctx0);
    ASSERT_TRUE(leaf.has_value());
    const ProbDist leaf_kt = kt_predict(*leaf, Alphabet(2));
    EXPECT_NEAR(leaf_kt[1], 8.5 / 9.0, 1e-15);

    const ProbDist p = tree.predict(ctx0);
    const std::vector<double> q = ref.predict({0});
    EXPECT_NEAR(p[1], q[1], 1e-12);
    EXPECT_NEAR(std::exp2(tree.log2_block_probability()), ref.block_probability(), 1e-15);
}

TEST(Ctw, MatchesNaiveOracleWithWarmup) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Alphabet t(2);
        const auto schema = ContextSchema::with_side(t, t, 1, seed % 2);
        ContextTree tree(schema);
        oracle::NaiveCtw ref(2, level_sizes(schema));
        const auto x = iid_stream(seed, 2, 10);
        const auto y = iid_stream(seed + 100, 2, 10);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto ctx = schema.context_at(x, y, i);
            const ProbDist p = tree.predict(ctx);
            const std::vector<double> q = ref.predict(ctx);
            for (int a = 0; a < 2; ++a) {
                EXPECT_NEAR(p[a], q[static_cast<std::size_t>(a)], 1e-12) << "seed " << seed << " i " << i;
            }
            tree.observe(ctx, x[i]);
            ref.observe(ctx, x[i]);
        }
        EXPECT_NEAR(std::exp2(tree.log2_block_probability()), ref.block_probability(), 1e-13);
    }
}

TEST(Ctw, TelescopingIdentity) {
    const auto schema = ContextSchema::plain(Alphabet(3), 2);
    ContextTree tree(schema);
    const auto x = iid_stream(21, 3, 2000);
    double loss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto ctx = schema.context_at(x, {}, i);
        const ProbDist p = tree.predict(ctx);
        EXPECT_GT(p[0], 0.0);
        EXPECT_GT(p[1], 0.0);
        EXPECT_GT(p[2], 0.0);
        loss += p.log2_prob(x[i]);
        tree.observe(ctx, x[i]);
    }
    EXPECT_NEAR(loss, tree.log2_block_probability(), 1e-9);
    EXPECT_TRUE(tree.counts_consistent());
}

TEST(Ctw, DeterministicAndSerializable) {
    const Alphabet t(3);
    const auto schema = ContextSchema::with_side(t, t, 1, 1);
    ContextTree a(schema);
    ContextTree b(schema);
    const auto x = iid_stream(3, 3, 500);
    const auto y = iid_stream(4, 3, 500);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto ctx = schema.context_at(x, y, i);
        a.observe(ctx, x[i]);
        b.observe(ctx, x[i]);
    }
    EXPECT_TRUE(a.identical_to(b));
    EXPECT_LE(a.node_count(), schema.node_count() + 4);

    std::stringstream snap;
    a.dump(snap);
    const ContextTree c = ContextTree::load(snap);
    EXPECT_TRUE(a.identical_to(c));
    std::stringstream again;
    c.dump(again);
    EXPECT_EQ(snap.str(), again.str());

    std::stringstream bad("ctw-tree 2\n");
    EXPECT_THROW(ContextTree::load(bad), InputError);
}

TEST(Ctw, UniformIidLogLoss) {
    const auto schema = ContextSchema::plain(Alphabet(2), 3);
    ContextTree tree(schema);
    const auto x = iid_stream(2024, 2, 4096);
    for (std::size_t i = 0; i < x.size(); ++i) {
        tree.observe(schema.context_at(x, {}, i), x[i]);
    }
    const double avg = -tree.log2_block_probability() / static_cast<double>(x.size());
    EXPECT_NEAR(avg, 1.0, 0.05);
}

TEST(Bounds, Values) {
    // Independent evaluation of the two formulas.
    const double plain = 3.0 * std::log2(10000.0 / 3.0) + 3.0 * (1.5 + std::log2(3.0)) - 0.5;
    EXPECT_NEAR(regret_bound_plain(3, 3, 10000), plain, 1e-9);
    EXPECT_NEAR(regret_bound_plain(3, 3, 10000), 43.86, 5e-3);
    EXPECT_NEAR(regret_bound_plain(2, 1, 1), 2.0, 1e-12);
    EXPECT_GT(regret_bound_plain(3, 3, 20000), regret_bound_plain(3, 3, 10000));

    const double side = 9.0 * std::log2(10000.0 / 9.0) + 18.0 + 10.0;
    EXPECT_NEAR(regret_bound_side_info(3, 9, 10, 10000), side, 1e-9);
    EXPECT_NEAR(regret_bound_side_info(3, 9, 10, 10000), 119.06, 5e-3);
    const double stale = 27.0 * std::log2(50000.0 / 27.0) + 54.0 + 31.0;
    EXPECT_NEAR(regret_bound_side_info(3, 27, 31, 50000), stale, 1e-9);

    // With S = L both bounds share the log term.
    const double gap = regret_bound_side_info(3, 3, 3, 1000) - regret_bound_plain(3, 3, 1000);
    EXPECT_NEAR(gap, (3.0 * 2.0 + 3.0) - (3.0 * (1.5 + std::log2(3.0)) - 0.5), 1e-9);

    EXPECT_THROW(regret_bound_plain(3, 10, 5), InputError);
    EXPECT_THROW(regret_bound_side_info(3, 9, 10, 5), InputError);
    EXPECT_THROW(regret_bound_side_info(3, 9, 8, 100), InputError);
}

TEST(Bounds, BudgetMonotoneAndClamped) {
    const Alphabet t(3);
    const auto schema = ContextSchema::with_side(t, t, 1, 0);
    double prev = 0.0;
    for (std::uint64_t n = 1; n <= 200; ++n) {
        const RegretBudget b = regret_budget(schema, n);
        EXPECT_EQ(b.leaves, 9u);
        EXPECT_EQ(b.nodes, 10u);
        EXPECT_GE(b.bound_bits, prev);
        prev = b.bound_bits;
    }
    EXPECT_NEAR(regret_budget(ContextSchema::plain(t, 1), 10000).bound_bits, 43.86, 5e-3);
}

TEST(Properties, RegretContainmentOnMarkovSources) {
    // Order-1 ternary sources with random rows; regret against the true
    // model must stay under the plain bound at every prefix.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(1000 + seed);
        std::gamma_distribution<double> g(0.7, 1.0);
        std::vector<std::vector<double>> rows(3, std::vector<double>(3));
        for (auto& r : rows) {
            double s = 0.0;
            for (double& v : r) {
                v = g(rng) + 1e-3;
                s += v;
            }
            for (double& v : r) {
                v /= s;
            }
        }
        const auto schema = ContextSchema::plain(Alphabet(3), 1);
        ContextTree tree(schema);
        std::vector<Symbol> x;
        double regret = 0.0;
        for (std::size_t i = 0; i < 3000; ++i) {
            // First symbol uniform under the source as well.
            std::vector<double> law = i == 0 ? std::vector<double>(3, 1.0 / 3.0)
                                             : rows[static_cast<std::size_t>(x.back())];
            std::discrete_distribution<int> pick(law.begin(), law.end());
            const Symbol s = pick(rng);
            const auto ctx = schema.context_at(x, {}, i);
            regret += std::log2(law[static_cast<std::size_t>(s)]) - tree.predict(ctx).log2_prob(s);
            tree.observe(ctx, s);
            x.push_back(s);
            ASSERT_LE(regret, regret_budget(schema, i + 1).bound_bits) << "seed " << seed << " n " << i + 1;
        }
    }
}
