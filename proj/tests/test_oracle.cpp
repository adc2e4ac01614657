#include "lmass/errors.hpp"
#include "lmass/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lmass;
using namespace lmass::testing;

TEST(Oracle, QuadraticCharactersOverQ2) {
    auto Q2 = make_field(2, 1, 1);
    auto xs = enum_Cp_characters(*Q2, {});
    EXPECT_EQ(xs.size(), 7u);
    auto by = count_by_disc(xs, false);
    EXPECT_EQ(by[0], 1);
    EXPECT_EQ(by[2], 2);
    EXPECT_EQ(by[3], 4);
    EXPECT_EQ(oracle_premass(xs, 2, false), Rat(1, 2));
}

TEST(Oracle, NormGroupsIntersectInTheSquares) {
    auto Q2 = make_field(2, 1, 1);
    SquareClasses SF(Q2);
    for (std::size_t k = 1; k < SF.size(); ++k) {
        auto xs = enum_Cp_characters(*Q2, {SF.element(SF.class_at(k))});
        bool everywhere = true;
        for (const auto& x : xs) everywhere = everywhere && x.all_norms();
        EXPECT_FALSE(everywhere) << k;
    }
    for (const auto& x : enum_Cp_characters(*Q2, {Q2->from_int(9)})) EXPECT_TRUE(x.all_norms());
}

TEST(Oracle, CubicCharactersOverQ3) {
    auto Q3 = make_field(3, 1, 1);
    auto xs = enum_Cp_characters(*Q3, {});
    EXPECT_EQ(xs.size(), 4u);  // (Z/3)^2 has four lines
    auto by = count_by_disc(xs, false);
    EXPECT_EQ(by[0], 1);
    EXPECT_EQ(by[4], 3);
    for (const auto& x : xs) EXPECT_EQ(x.weight, Rat(1, 3));
}

TEST(Oracle, TameTotallyRamified) {
    auto Q5 = make_field(5, 1, 1);
    EXPECT_EQ(enum_tame(*Q5, 2, {}).size(), 2u);
    auto Q2 = make_field(2, 1, 1);
    Rng rng(83);
    auto t2 = enum_tame(*Q2, 3, random_gens(*Q2, rng, 3));
    ASSERT_EQ(t2.size(), 1u);
    EXPECT_TRUE(t2[0].all_norms());
    EXPECT_EQ(t2[0].disc_val, 2);
    auto Q7 = make_field(7, 1, 1);
    auto t7 = enum_tame(*Q7, 3, {});
    EXPECT_EQ(t7.size(), 3u);
    for (const auto& x : t7) EXPECT_EQ(x.group, "C3");
    // 7 is a norm from exactly one of the three
    int hits = 0;
    for (const auto& x : enum_tame(*Q7, 3, {Q7->from_int(7)})) hits += x.all_norms();
    EXPECT_EQ(hits, 1);
}

TEST(Oracle, QuarticTowersOverQ2) {
    auto Q2 = make_field(2, 1, 1, 3 * min_precision(2, 1));
    auto m = enum_quartic_towers(Q2, {});
    EXPECT_EQ((m[{"(2^2)", "D4", 4}]), 2);
    EXPECT_EQ((m[{"(2^2)", "D4", 6}]), 2);
    EXPECT_THROW(enum_quartic_towers(make_field(3, 1, 1), {}), ValidationError);
}
