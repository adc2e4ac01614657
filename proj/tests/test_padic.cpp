#include "lmass/element_parser.hpp"
#include "lmass/errors.hpp"
#include "lmass/norms.hpp"
#include "lmass/padic.hpp"
#include "lmass/unit_groups.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lmass;
using namespace lmass::testing;

TEST(Padic, ConstructBaseFields) {
    auto Q2 = make_field(2, 1, 1, 20, 0);
    EXPECT_EQ(Q2->q(), 2);
    EXPECT_EQ(Q2->degree(), 1);
    auto E = make_field(3, 2, 1);
    EXPECT_EQ(E->q(), 3);
    EXPECT_EQ(E->e(), 2);
    auto U = make_field(2, 1, 2);
    EXPECT_EQ(U->q(), 4);
    EXPECT_TRUE(is_irreducible_mod_p(U->desc().unram_poly, 2));
}

TEST(Padic, ConstructionIsDeterministic) {
    auto a = field_construct(3, 2, 2, 0, 5), b = field_construct(3, 2, 2, 0, 5);
    EXPECT_EQ(a.unram_poly, b.unram_poly);
    EXPECT_EQ(a.eis_poly, b.eis_poly);
    EXPECT_EQ(a.prec, b.prec);
}

TEST(Padic, ConstructRejectsBadInput) {
    EXPECT_THROW(make_field(4, 1, 1), ValidationError);
    EXPECT_THROW(make_field(2, 1, 1, 3), ValidationError);
}

TEST(Padic, Valuations) {
    auto Q2 = make_field(2, 1, 1);
    EXPECT_EQ(Q2->valuation(Q2->from_int(12)), 2);
    EXPECT_EQ(Q2->valuation(Q2->zero()), kInfVal);
    auto E = make_field(2, 2, 1);
    EXPECT_EQ(E->valuation(E->uniformizer()), 1);
    EXPECT_EQ(E->valuation(E->from_int(2)), 2);
    EXPECT_EQ(Q2->valuation(Q2->from_rat(Rat(3, 8))), -3);
}

TEST(Padic, QuadraticExtensions) {
    auto Q2 = make_field(2, 1, 1);
    auto U = QuadField::extend(Q2, Q2->from_int(5));
    EXPECT_FALSE(U->ramified());
    EXPECT_EQ(U->f(), 2);
    EXPECT_EQ(U->norm(U->sqrt_d()), Q2->from_int(-5));
    auto R = QuadField::extend(Q2, Q2->from_int(2));
    EXPECT_TRUE(R->ramified());
    EXPECT_EQ(R->e(), 2);
    EXPECT_EQ(R->valuation(R->sqrt_d()), 1);
    EXPECT_THROW(QuadField::extend(Q2, Q2->from_int(17)), ValidationError);
}

TEST(Padic, RamifiedQ5NormGroupAgainstEnumeration) {
    // a unit is a norm from Q5(sqrt 5) exactly when it is a square mod 5
    auto Q5 = make_field(5, 1, 1);
    auto E = QuadField::extend(Q5, Q5->from_int(5));
    EXPECT_TRUE(E->ramified());
    for (long u = 1; u < 5; ++u) {
        bool brute = false;
        for (long x = 1; x < 5; ++x) brute = brute || (x * x - u) % 5 == 0;
        EXPECT_EQ(hilbert2(*Q5, Q5->from_int(u), Q5->from_int(5)) == 1, brute) << u;
        EXPECT_EQ(E->valuation(E->embed(Q5->from_int(u))), 0);
    }
    EXPECT_EQ(hilbert2(*Q5, Q5->from_int(-5), Q5->from_int(5)), 1);
    EXPECT_EQ(hilbert2(*Q5, Q5->from_int(-10), Q5->from_int(5)), -1);
}

TEST(Padic, DiscValQuadraticExamples) {
    auto Q2 = make_field(2, 1, 1);
    EXPECT_EQ(disc_val_quadratic(*Q2, Q2->from_int(5)), 0);
    EXPECT_EQ(disc_val_quadratic(*Q2, Q2->from_int(-1)), 2);
    EXPECT_EQ(disc_val_quadratic(*Q2, Q2->from_int(2)), 3);
}

TEST(Padic, DiscValMatchesHilbertConductorScanOverQ2) {
    // U^(1) = <-1,5>, U^(2) = <5>, U^(3) inside the squares
    auto Q2 = make_field(2, 1, 1);
    const std::vector<std::vector<long>> level_gens = {{-1, 5}, {-1, 5}, {5}, {}};
    for (long u : {-1L, 2L, 3L, 5L, 6L, 7L, 10L, 14L, -2L, -5L, 15L, 30L}) {
        long cond = 3;
        for (long c = 3; c >= 0; --c) {
            bool inside = true;
            for (long g : level_gens[c])
                if (hilbert_Qp(Int(g), Int(u), 2) != 1) inside = false;
            if (inside) cond = c;
            else break;
        }
        EXPECT_EQ(disc_val_quadratic(*Q2, Q2->from_int(u)), cond) << u;
    }
}

TEST(Padic, DiscValMatchesPairingScanOverRamifiedBase) {
    auto F = make_field(2, 2, 1);
    SquareClasses SF(F);
    const FpMatrix& H = SF.pairing();
    for (std::size_t k = 1; k < SF.size(); ++k) {
        FpVec v = SF.class_at(k);
        FpVec row = SF.pair_row(v);
        long cond = 0;
        for (long c = 0; c <= 2 * F->e() + 1; ++c) {
            bool inside = true;
            FpMatrix L = SF.basis().level_subspace(c);
            for (const auto& col : L.columns()) {
                std::uint64_t s = 0;
                for (std::size_t i = 0; i < col.size(); ++i) s ^= col[i] & row[i];
                if (s) inside = false;
            }
            if (inside) {
                cond = c;
                break;
            }
        }
        EXPECT_EQ(SF.disc_val(v), cond) << k;
        EXPECT_EQ(disc_val_quadratic(*F, SF.element(v)), cond) << k;
    }
    (void)H;
}

TEST(Padic, NormTraceProperties) {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& s = small_shapes()[rng() % small_shapes().size()];
        auto F = make_field(s.p, s.e, s.f);
        Elem d = random_element(*F, rng, 1);
        if (is_square(*F, d)) continue;
        auto E = QuadField::extend(F, d);
        Elem x = E->add(E->embed(random_unit(*F, rng)), E->mul(E->sqrt_d(), E->embed(random_unit(*F, rng))));
        Elem y = E->add(E->embed(random_element(*F, rng)), E->sqrt_d());
        Elem nxy = E->norm(E->mul(x, y));
        Elem dn = F->sub(nxy, F->mul(E->norm(x), E->norm(y)));
        EXPECT_TRUE(F->is_exact_zero(dn) || F->is_zero_mod(dn, F->valuation(nxy) + 5));
        Elem dt = F->sub(E->trace(E->add(x, y)), F->add(E->trace(x), E->trace(y)));
        EXPECT_TRUE(F->is_exact_zero(dt) || F->is_zero_mod(dt, 5));
        EXPECT_EQ(F->valuation(E->norm(x)), E->f() / F->f() * E->valuation(x));
        EXPECT_EQ(F->valuation(E->norm(y)), E->f() / F->f() * E->valuation(y));
    }
}

TEST(Padic, ParserGrammar) {
    auto F = make_field(3, 2, 2);
    Elem a = parse_element(*F, "(1+pi)^2 - 2*pi*u + 1/2");
    Elem one_pi = F->add(F->one(), F->uniformizer());
    Elem b = F->add(F->sub(F->mul(one_pi, one_pi), F->mul_int(F->mul(F->uniformizer(), F->unram_generator()), 2)),
                    F->from_rat(Rat(1, 2)));
    EXPECT_EQ(a, b);
    EXPECT_EQ(F->valuation(parse_element(*F, "pi^-3*u")), -3);
    EXPECT_THROW(parse_element(*F, "2*"), ValidationError);
    EXPECT_THROW(parse_element(*F, "pi-pi"), ValidationError);
    EXPECT_EQ(parse_rational("9/5"), Rat(9, 5));
    EXPECT_EQ(split_list(" 2, -1,,5 ").size(), 3u);
}

TEST(Padic, PrecisionDoublingKeepsValuationsAndResidues) {
    Rng rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& s = small_shapes()[rng() % small_shapes().size()];
        auto F1 = make_field(s.p, s.e, s.f);
        auto F2 = make_field(s.p, s.e, s.f, 2 * F1->prec());
        Rng r1(trial), r2(trial);
        Elem a = random_element(*F1, r1), b = random_element(*F2, r2);
        EXPECT_EQ(F1->valuation(a), F2->valuation(b));
        Elem a3 = F1->add(F1->mul(a, a), F1->one()), b3 = F2->add(F2->mul(b, b), F2->one());
        EXPECT_EQ(F1->valuation(a3), F2->valuation(b3));
        EXPECT_EQ(F1->residue(F1->unit_part(a3)), F2->residue(F2->unit_part(b3)));
    }
}
