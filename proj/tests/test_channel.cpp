#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bdmc/channel.hpp"

using namespace bdmc;

namespace {

// Definitional sums written out independently of the library.
double capacity_oracle(const std::vector<ChannelRow>& rows)
{
    double total = 0.0;
    for (const auto& r : rows) {
        const double mix = 0.5 * r.w0 + 0.5 * r.w1;
        if (r.w0 > 0) {
            total += 0.5 * r.w0 * std::log(r.w0 / mix) / std::log(2.0);
        }
        if (r.w1 > 0) {
            total += 0.5 * r.w1 * std::log(r.w1 / mix) / std::log(2.0);
        }
    }
    return total;
}

Channel split_outputs(const Channel& ch, double lambda)
{
    std::vector<ChannelRow> rows;
    for (const auto& r : ch.outputs()) {
        rows.push_back({r.label + "a", lambda * r.w0, lambda * r.w1});
        rows.push_back({r.label + "b", (1 - lambda) * r.w0, (1 - lambda) * r.w1});
    }
    return make_channel(rows);
}

Channel shuffled(const Channel& ch, std::uint64_t seed)
{
    std::vector<ChannelRow> rows = ch.outputs();
    std::mt19937_64 rng(seed);
    std::shuffle(rows.begin(), rows.end(), rng);
    return make_channel(rows);
}

}  // namespace

TEST(MakeChannel, AcceptsValidRows)
{
    const Channel useless = make_channel({{"0", 0.5, 0.5}, {"1", 0.5, 0.5}});
    EXPECT_EQ(useless.size(), 2U);
    EXPECT_DOUBLE_EQ(bhattacharyya(useless), 1.0);

    const Channel noiseless = make_channel({{"a", 1.0, 0.0}, {"b", 0.0, 1.0}});
    EXPECT_EQ(noiseless.size(), 2U);
    EXPECT_EQ(capacity(noiseless), 1.0);
}

TEST(MakeChannel, RowSumError)
{
    try {
        make_channel({{"a", 0.4, 0.5}, {"b", 0.5, 0.5}});
        FAIL();
    } catch (const invalid_channel& e) {
        EXPECT_STREQ(e.what(), "input-0 row sums to 0.9");
    }
    EXPECT_THROW(make_channel({{"a", 0.5, 0.5}, {"b", 0.5, 0.6}}), invalid_channel);
}

TEST(MakeChannel, NegativeProbabilityNamesRow)
{
    try {
        make_channel({{"a", 0.5, 0.5}, {"b", 0.6, 0.5}, {"c", -0.1, 0.0}});
        FAIL();
    } catch (const invalid_channel& e) {
        EXPECT_NE(std::string(e.what()).find("row 3 ('c')"), std::string::npos) << e.what();
    }
    EXPECT_THROW(make_channel({{"a", std::nan(""), 1.0}, {"b", 1.0, 0.0}}), invalid_channel);
    EXPECT_THROW(make_channel({}), invalid_channel);
}

TEST(MakeChannel, DegenerateOutputsPrunedOrRejected)
{
    const std::vector<ChannelRow> rows = {{"a", 0.5, 0.5}, {"dead", 0.0, 0.0}, {"b", 0.5, 0.5}};
    const Channel ch = make_channel(rows);
    EXPECT_EQ(ch.size(), 2U);
    ASSERT_EQ(ch.diagnostics().size(), 1U);
    EXPECT_NE(ch.diagnostics()[0].find("dead"), std::string::npos);
    EXPECT_THROW(make_channel(rows, true), invalid_channel);
}

TEST(MakeChannel, RenormalizesWithinTolerance)
{
    const Channel ch = make_channel({{"a", 0.3 + 4e-10, 0.5}, {"b", 0.7, 0.5}});
    double s0 = 0.0;
    for (const auto& r : ch.outputs()) {
        s0 += r.w0;
    }
    EXPECT_NEAR(s0, 1.0, 1e-15);
}

TEST(MakeChannel, DeduplicatesLabels)
{
    const Channel ch = make_channel({{"y", 0.5, 0.2}, {"y", 0.3, 0.3}, {"y", 0.2, 0.5}});
    EXPECT_EQ(ch.outputs()[0].label, "y");
    EXPECT_EQ(ch.outputs()[1].label, "y#2");
    EXPECT_EQ(ch.outputs()[2].label, "y#3");
}

TEST(Bec, Examples)
{
    const Channel ch = bec(0.3);
    EXPECT_EQ(ch.size(), 3U);
    EXPECT_NEAR(bhattacharyya(ch), 0.3, 1e-15);
    EXPECT_NEAR(capacity(ch), 0.7, 1e-15);
    EXPECT_NEAR(capacity(ch), capacity_oracle(ch.outputs()), 1e-15);

    EXPECT_EQ(bhattacharyya(bec(0.0)), 0.0);
    EXPECT_EQ(capacity(bec(0.0)), 1.0);
    EXPECT_EQ(bhattacharyya(bec(1.0)), 1.0);
    EXPECT_EQ(capacity(bec(1.0)), 0.0);
    EXPECT_THROW(bec(1.5), domain_error);
}

TEST(Bsc, Examples)
{
    const Channel ch = bsc(0.1);
    EXPECT_NEAR(bhattacharyya(ch), 0.6, 1e-15);
    EXPECT_NEAR(capacity(ch), 0.53100440641071877875, 1e-15);
    EXPECT_NEAR(capacity(ch), 1.0 - ent(0.1), 1e-15);
    EXPECT_EQ(bhattacharyya(bsc(0.0)), 0.0);
    EXPECT_EQ(capacity(bsc(0.0)), 1.0);
    EXPECT_EQ(bhattacharyya(bsc(0.5)), 1.0);
    EXPECT_EQ(capacity(bsc(0.5)), 0.0);
    EXPECT_THROW(bsc(0.6), domain_error);
}

TEST(BscCrossoverForCapacity, InvertsCapacity)
{
    EXPECT_NEAR(bsc_crossover_for_capacity(1.0 - ent(0.1)), 0.1, 1e-11);
    EXPECT_NEAR(bsc_crossover_for_capacity(0.531004), 0.1, 2e-7);
    EXPECT_NEAR(bsc_crossover_for_capacity(1.0), 0.0, 1e-12);
    EXPECT_NEAR(bsc_crossover_for_capacity(0.0), 0.5, 1e-12);
}

TEST(RandomChannel, DeterministicAndValid)
{
    const Channel a = random_channel(4, 7);
    const Channel b = random_channel(4, 7);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.outputs()[i].w0, b.outputs()[i].w0);
        EXPECT_EQ(a.outputs()[i].w1, b.outputs()[i].w1);
    }
    const Channel c = random_channel(4, 8);
    EXPECT_NE(a.outputs()[0].w0, c.outputs()[0].w0);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Channel two = random_channel(2, seed);
        EXPECT_NO_THROW(make_channel(two.outputs(), true));
    }
    EXPECT_THROW(random_channel(1, 0), domain_error);
}

TEST(RandomChannel, SixteenOutputSweepSatisfiesSandwich)
{
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        const Channel ch = random_channel(16, seed);
        const double z = bhattacharyya(ch);
        const double loss = 1.0 - capacity(ch);
        EXPECT_GE(z - loss, -1e-12);
        EXPECT_GE(loss - phi(z), -1e-12);
    }
}

TEST(Capacity, MatchesOracleAndExpectationForm)
{
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Channel ch = random_channel(2 + seed % 15, seed);
        const double i = capacity(ch);
        const double z = bhattacharyya(ch);
        EXPECT_NEAR(i, capacity_oracle(ch.outputs()), 1e-12);
        ASSERT_GE(i, 0.0);
        ASSERT_LE(i, 1.0);
        ASSERT_GE(z, 0.0);
        ASSERT_LE(z, 1.0);

        const BlackwellMeasure m = blackwell(ch);
        EXPECT_NEAR(m.mean_u(), z, 1e-12);
        EXPECT_NEAR(m.expect_q([](double q) { return ent(q); }), 1.0 - i, 1e-12);
        EXPECT_NEAR(m.expect_q([](double q) { return phi(bh(q)); }), 1.0 - i, 1e-12);
    }
}

TEST(Bhattacharyya, Examples)
{
    EXPECT_NEAR(bhattacharyya(bsc(0.1)), 0.6, 1e-15);
    EXPECT_NEAR(bhattacharyya(bec(0.3)), 0.3, 1e-15);
    EXPECT_DOUBLE_EQ(bhattacharyya(make_channel({{"a", 0.2, 0.2}, {"b", 0.3, 0.3}, {"c", 0.5, 0.5}})), 1.0);
}

TEST(Blackwell, BscAtoms)
{
    const BlackwellMeasure m = blackwell(bsc(0.1));
    ASSERT_EQ(m.atoms.size(), 2U);
    EXPECT_NEAR(m.atoms[0].q, 0.1, 1e-15);
    EXPECT_NEAR(m.atoms[0].p, 0.5, 1e-15);
    EXPECT_NEAR(m.atoms[1].q, 0.9, 1e-15);
    EXPECT_NEAR(m.atoms[1].p, 0.5, 1e-15);
    EXPECT_NEAR(m.atoms[0].u, 0.6, 1e-15);
    EXPECT_NEAR(m.atoms[1].u, 0.6, 1e-15);
}

TEST(Blackwell, BecAtoms)
{
    const BlackwellMeasure m = blackwell(bec(0.3));
    ASSERT_EQ(m.atoms.size(), 3U);
    EXPECT_EQ(m.atoms[0].q, 0.0);
    EXPECT_NEAR(m.atoms[0].p, 0.35, 1e-15);
    EXPECT_EQ(m.atoms[1].q, 0.5);
    EXPECT_NEAR(m.atoms[1].p, 0.3, 1e-15);
    EXPECT_EQ(m.atoms[2].q, 1.0);
    EXPECT_NEAR(m.atoms[2].p, 0.35, 1e-15);
    for (const auto& a : m.atoms) {
        EXPECT_TRUE(a.u == 0.0 || a.u == 1.0);
    }
}

TEST(Blackwell, InvariantsOnRandomChannels)
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const BlackwellMeasure m = blackwell(random_channel(8, seed));
        double mass = 0.0;
        for (std::size_t i = 0; i < m.atoms.size(); ++i) {
            const auto& a = m.atoms[i];
            mass += a.p;
            EXPECT_GE(a.q, 0.0);
            EXPECT_LE(a.q, 1.0);
            EXPECT_NEAR(a.u, bh(a.q), 1e-12);
            if (i > 0) {
                EXPECT_GT(a.q - m.atoms[i - 1].q, default_merge_tol);
            }
        }
        EXPECT_NEAR(mass, 1.0, 1e-9);
    }
    EXPECT_THROW(blackwell(bsc(0.1), -1.0), domain_error);
}

TEST(Blackwell, MergesCloseAtoms)
{
    const Channel ch = make_channel({{"a", 0.2, 0.1}, {"b", 0.4, 0.2}, {"c", 0.4, 0.7}});
    const BlackwellMeasure m = blackwell(ch);
    ASSERT_EQ(m.atoms.size(), 2U);
    EXPECT_NEAR(m.atoms[1].q, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.atoms[1].p, 0.45, 1e-15);
}

TEST(Classify, Examples)
{
    const ChannelClass e = classify(bec(0.3));
    EXPECT_EQ(e.kind, ChannelKind::BEC);
    ASSERT_TRUE(e.parameter);
    EXPECT_NEAR(*e.parameter, 0.3, 1e-12);

    const ChannelClass s = classify(bsc(0.2));
    EXPECT_EQ(s.kind, ChannelKind::BSC);
    ASSERT_TRUE(s.parameter);
    EXPECT_NEAR(*s.parameter, 0.2, 1e-12);

    const ChannelClass split = classify(split_outputs(bsc(0.2), 0.3));
    EXPECT_EQ(split.kind, ChannelKind::BSC);
    EXPECT_NEAR(*split.parameter, 0.2, 1e-12);

    const ChannelClass g = classify(random_channel(8, 1));
    EXPECT_EQ(g.kind, ChannelKind::General);
    EXPECT_FALSE(g.parameter);
}

TEST(Classify, OverlapReportsBec)
{
    // noiseless and useless channels satisfy both predicates
    const ChannelClass noiseless = classify(bsc(0.0));
    EXPECT_EQ(noiseless.kind, ChannelKind::BEC);
    EXPECT_EQ(*noiseless.parameter, 0.0);
    const ChannelClass useless = classify(bsc(0.5));
    EXPECT_EQ(useless.kind, ChannelKind::BEC);
    EXPECT_EQ(*useless.parameter, 1.0);
}

TEST(Classify, ConstructorRoundtrip)
{
    for (int k = 0; k <= 20; ++k) {
        const double eps = k / 20.0;
        const ChannelClass c = classify(bec(eps));
        EXPECT_EQ(c.kind, ChannelKind::BEC);
        EXPECT_NEAR(*c.parameter, eps, 1e-12);
    }
    for (int k = 1; k < 50; ++k) {
        const double eps = k / 100.0;
        const ChannelClass c = classify(bsc(eps));
        EXPECT_EQ(c.kind, ChannelKind::BSC) << eps;
        EXPECT_NEAR(*c.parameter, eps, 1e-12);
    }
}

TEST(Classify, NonSymmetricBscLikeChannel)
{
    // Four outputs, every one with posterior 0.25 or 0.75: a BSC(0.25) in
    // disguise, although no output pair is mirrored.
    const Channel ch = make_channel({{"a", 0.3, 0.1}, {"b", 0.45, 0.15}, {"c", 0.1, 0.3}, {"d", 0.15, 0.45}});
    const ChannelClass c = classify(ch);
    EXPECT_EQ(c.kind, ChannelKind::BSC);
    EXPECT_NEAR(*c.parameter, 0.25, 1e-12);
}

TEST(Invariance, PermutationAndSplitting)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Channel ch = random_channel(2 + seed % 7, seed);
        const double i = capacity(ch);
        const double z = bhattacharyya(ch);
        const BlackwellMeasure m = blackwell(ch);

        for (const Channel& other : {shuffled(ch, seed + 1), split_outputs(ch, 0.37)}) {
            EXPECT_NEAR(capacity(other), i, 1e-14);
            EXPECT_NEAR(bhattacharyya(other), z, 1e-14);
            EXPECT_EQ(classify(other).kind, classify(ch).kind);
            const BlackwellMeasure mo = blackwell(other);
            ASSERT_EQ(mo.atoms.size(), m.atoms.size());
            for (std::size_t a = 0; a < m.atoms.size(); ++a) {
                EXPECT_NEAR(mo.atoms[a].q, m.atoms[a].q, 1e-14);
                EXPECT_NEAR(mo.atoms[a].p, m.atoms[a].p, 1e-14);
            }
        }
    }
}
