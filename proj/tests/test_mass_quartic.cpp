#include "lmass/errors.hpp"
#include "lmass/mass_quartic.hpp"
#include "lmass/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lmass;
using namespace lmass::testing;

namespace {

Rat group_total(const MassReport& r, const std::string& symbol, const std::string& group) {
    Rat s = 0;
    for (const auto& b : r.breakdown)
        if (b.symbol == symbol && b.group == group) s += b.value;
    s.canonicalize();
    return s;
}

auto wild_field(long e, long f) { return make_field(2, e, f, 3 * min_precision(2, e)); }

}  // namespace

TEST(Quartic, EpimorphicPartClosedForm) {
    EXPECT_EQ(premass4_common(3, false, false).premass, Rat(77, 72));
    for (long q : {2L, 4L, 5L, 7L, 9L, 16L, 25L, 27L, 49L, 121L}) {
        Rat want(5 * q * q + 8 * q + 8, 8 * q * q);
        want.canonicalize();
        EXPECT_EQ(premass4_common(q, false, false).premass, want) << q;
    }
}

TEST(Quartic, OddPrimeTotals) {
    auto Q5 = make_field(5, 1, 1);
    EXPECT_EQ(premass4(Q5, {}).premass, 1 + Rat(1, 5) + Rat(2, 25) + Rat(1, 125));
    MassReport r = premass4(Q5, {Q5->from_int(5)});
    EXPECT_EQ(r.symbol_total("(4)"), 0);
    EXPECT_EQ(r.symbol_total("(22)"), 0);
    for (long p : {3L, 7L, 11L, 13L}) {
        auto F = make_field(p, 1, 1);
        Rat pr(1, p);
        EXPECT_EQ(premass4(F, {}).premass, 1 + pr + 2 * pr * pr + pr * pr * pr) << p;
    }
}

TEST(Quartic, TwoAdicBreakdown) {
    auto Q2 = wild_field(1, 1);
    QuarticReport R = premass4_wild(Q2, {});
    EXPECT_EQ(R.report.premass, Rat(17, 8));
    EXPECT_EQ(group_total(R.report, "(2^2)", "D4"), Rat(5, 64));
    EXPECT_EQ(group_total(R.report, "(2^2)", "V4"), Rat(3, 128));
    EXPECT_EQ(group_total(R.report, "(2^2)", "C4"), Rat(3, 128));
    EXPECT_EQ(group_total(R.report, "(1^21^2)", "C2"), Rat(3, 128));
    EXPECT_EQ(group_total(R.report, "(1^21^2)", "V4"), Rat(13, 128));
    EXPECT_EQ(R.report.symbol_total("(1^4)"), Rat(1, 1024) + Rat(1, 256) + Rat(35, 1024) + Rat(11, 128));
}

TEST(Quartic, TrivialTotalsOverTwoAdicBases) {
    for (const auto& s : std::vector<FieldShape>{{2, 1, 1}, {2, 2, 1}, {2, 1, 2}}) {
        auto F = wild_field(s.e, s.f);
        Rat qi(1);
        qi /= F->q();
        Rat want = 1 + qi + 2 * qi * qi + qi * qi * qi;
        want.canonicalize();
        EXPECT_EQ(premass4(F, {}).premass, want) << s.e << s.f;
    }
}

TEST(Quartic, CountingHelpers) {
    for (long e : {1L, 2L, 3L})
        for (long q : {2L, 4L, 8L}) EXPECT_EQ(quartic_NC2(q, e, 4 * e + 1), 2 * ipow(Int(q), 2 * e)) << e << " " << q;
    EXPECT_EQ(quartic_NC2(2, 1, 3), 0);
    EXPECT_EQ(quartic_NC2(2, 1, 4), 4);
}

TEST(Quartic, NecSizesForUnramifiedE) {
    auto Q2 = wild_field(1, 1);
    SquareClasses SF(Q2);
    auto C = choose_omega(SF, Q2->from_int(5));
    ASSERT_TRUE(C.has_value());
    for (auto algo : {NecAlgo::Brute, NecAlgo::Subspace}) {
        NecSizes N = nec_sizes(SF, &*C, {}, algo);
        EXPECT_EQ(N.total, 8);
        EXPECT_EQ(N.at(0), 4);
        EXPECT_EQ(N.at(2), 2);
        EXPECT_EQ(N.at(3), 1);
        EXPECT_EQ(N.at(10), 1);
    }
    NecSizes T = nec_sizes_trivial(SF);
    EXPECT_EQ(T.total, 8);
    EXPECT_EQ(counts_12E_C4(1, 2, T, 4), 4);
    EXPECT_EQ(counts_12E_C4(1, 2, T, 3), 0);
}

TEST(Quartic, ParseNecAlgo) {
    EXPECT_EQ(parse_nec_algo("brute"), NecAlgo::Brute);
    EXPECT_EQ(parse_nec_algo("subspace"), NecAlgo::Subspace);
    EXPECT_EQ(parse_nec_algo("auto"), NecAlgo::Auto);
    EXPECT_THROW(parse_nec_algo("fast"), ValidationError);
}

TEST(Quartic, NecSizesBruteMatchesSubspace) {
    Rng rng(79);
    int cases = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto F = trial % 2 ? wild_field(1, 1) : wild_field(2, 1);
        SquareClasses SF(F);
        Elem d = SF.element(SF.class_at(1 + rng() % (SF.size() - 1)));
        auto C = choose_omega(SF, d);
        if (!C) continue;
        auto gens = random_gens(*F, rng, 3);
        NecSizes a = nec_sizes(SF, &*C, gens, NecAlgo::Brute), b = nec_sizes(SF, &*C, gens, NecAlgo::Subspace);
        EXPECT_EQ(a.total, b.total);
        EXPECT_EQ(a.by_level, b.by_level);
        for (std::size_t c = 1; c < a.by_level.size(); ++c) EXPECT_LE(a.by_level[c], a.by_level[c - 1]);
        ++cases;
    }
    EXPECT_GE(cases, 100);
}

TEST(Quartic, FormulaCountsMatchTowerEnumeration) {
    for (const auto& s : std::vector<FieldShape>{{2, 1, 1}, {2, 2, 1}}) {
        auto F = wild_field(s.e, s.f);
        for (const auto& gens : std::vector<std::vector<Elem>>{{}, {F->from_int(-1)}, {F->from_int(3), F->from_int(2)}}) {
            QuarticCountMap formula;
            for (const auto& c : premass4_wild(F, gens).counts)
                if (c.symbol != "(4)" && c.count != 0) formula[{c.symbol, c.group, c.m}] += c.count;
            QuarticCountMap oracle;
            for (const auto& [k, v] : enum_quartic_towers(F, gens))
                if (std::get<0>(k) != "(4)") oracle[k] = v;
            EXPECT_EQ(formula, oracle) << s.e << " gens=" << gens.size();
        }
    }
}
