#include "lmass/fp_matrix.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace lmass;
using lmass::testing::pick;
using lmass::testing::Rng;

namespace {

FpMatrix random_matrix(Rng& rng, std::uint64_t p, std::size_t r, std::size_t c) {
    FpMatrix M(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) M(i, j) = rng() % p;
    return M;
}

// Every vector of the column span, as integers in base p (small dimensions only).
std::set<std::vector<std::uint64_t>> span_elements(const FpMatrix& M) {
    std::set<std::vector<std::uint64_t>> out;
    std::size_t total = 1;
    for (std::size_t j = 0; j < M.cols(); ++j) total *= M.p();
    for (std::size_t k = 0; k < total; ++k) {
        std::vector<std::uint64_t> x(M.cols());
        std::size_t t = k;
        for (auto& xi : x) {
            xi = t % M.p();
            t /= M.p();
        }
        out.insert(M.apply(x));
    }
    return out;
}

}  // namespace

TEST(FpLinalg, IdentityDecomposition) {
    FpMatrix I = FpMatrix::identity(5, 4);
    RrefDecomp d = rref_decomp(I);
    EXPECT_EQ(d.rref, I);
    EXPECT_EQ(d.T, I);
    EXPECT_EQ(d.Tinv, I);
}

TEST(FpLinalg, AllOnesOverF2) {
    FpMatrix M = FpMatrix::from_columns(2, 2, {{1, 1}, {1, 1}});
    RrefDecomp d = rref_decomp(M);
    EXPECT_EQ(d.rank(), 1u);
    EXPECT_EQ(d.rref, FpMatrix::from_columns(2, 2, {{1, 0}, {1, 0}}));
}

TEST(FpLinalg, DecompositionReproducesRandom20x30OverF3) {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        FpMatrix M = random_matrix(rng, 3, 20, 30);
        RrefDecomp d = rref_decomp(M);
        EXPECT_EQ(d.T * d.rref, M);
        EXPECT_EQ(d.T * d.Tinv, FpMatrix::identity(3, 20));
    }
}

TEST(FpLinalg, IntersectIdempotent) {
    Rng rng(11);
    FpMatrix M = random_matrix(rng, 5, 6, 3);
    FpMatrix I = colspan_intersect(M, M);
    EXPECT_EQ(I.cols(), rank(M));
    for (const auto& c : I.columns()) EXPECT_TRUE(in_colspan(M, c));
}

TEST(FpLinalg, ComplementaryCoordinateSubspaces) {
    FpMatrix A = FpMatrix::from_columns(2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    FpMatrix B = FpMatrix::from_columns(2, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
    EXPECT_EQ(colspan_intersect(A, B).cols(), 0u);
}

TEST(FpLinalg, IntersectionMatchesBruteForceInF2to8) {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        FpMatrix A = random_matrix(rng, 2, 8, static_cast<std::size_t>(pick(rng, 1, 6)));
        FpMatrix B = random_matrix(rng, 2, 8, static_cast<std::size_t>(pick(rng, 1, 6)));
        auto sa = span_elements(A), sb = span_elements(B);
        std::set<std::vector<std::uint64_t>> both;
        for (const auto& v : sa)
            if (sb.count(v)) both.insert(v);
        FpMatrix I = colspan_intersect(A, B);
        EXPECT_EQ(std::size_t{1} << I.cols(), both.size());
        for (const auto& v : both) EXPECT_TRUE(in_colspan(I, v) || I.cols() == 0);
    }
}

TEST(FpLinalg, DimensionFormulaProperty) {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[rng() % 4];
        std::size_t n = static_cast<std::size_t>(pick(rng, 2, 9));
        FpMatrix A = random_matrix(rng, p, n, static_cast<std::size_t>(pick(rng, 1, 5)));
        FpMatrix B = random_matrix(rng, p, n, static_cast<std::size_t>(pick(rng, 1, 5)));
        FpMatrix I = colspan_intersect(A, B);
        EXPECT_EQ(I.cols() + rank(A.hcat(B)), rank(A) + rank(B));
        for (const auto& c : I.columns()) {
            EXPECT_TRUE(in_colspan(A, c));
            EXPECT_TRUE(in_colspan(B, c));
        }
    }
}

TEST(FpLinalg, KernelAndSolve) {
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        FpMatrix M = random_matrix(rng, 7, 5, 8);
        FpMatrix K = kernel(M);
        EXPECT_EQ(K.cols() + rank(M), 8u);
        for (const auto& c : K.columns())
            for (auto x : M.apply(c)) EXPECT_EQ(x, 0u);
        std::vector<std::uint64_t> x(8);
        for (auto& xi : x) xi = rng() % 7;
        auto b = M.apply(x);
        auto y = solve(M, b);
        ASSERT_TRUE(y.has_value());
        EXPECT_EQ(M.apply(*y), b);
    }
}

TEST(FpLinalg, MismatchedIntersectRejected) {
    FpMatrix A(2, 3, 1), B(2, 4, 1);
    EXPECT_ANY_THROW(colspan_intersect(A, B));
}
