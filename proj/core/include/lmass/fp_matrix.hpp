#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lmass {

// Dense matrix over the prime field F_p, row-major, entries in [0, p).
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols);

    static FpMatrix identity(std::uint64_t p, std::size_t n);
    static FpMatrix from_columns(std::uint64_t p, std::size_t rows,
                                 const std::vector<std::vector<std::uint64_t>>& cols);

    std::uint64_t p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint64_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint64_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<std::uint64_t> column(std::size_t j) const;
    std::vector<std::vector<std::uint64_t>> columns() const;

    FpMatrix operator*(const FpMatrix& o) const;
    std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& v) const;
    bool operator==(const FpMatrix& o) const = default;

    FpMatrix transpose() const;
    FpMatrix hcat(const FpMatrix& o) const;

private:
    std::uint64_t p_ = 2;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint64_t> a_;
};

// M = T * rref with T invertible; Tinv kept alongside.
struct RrefDecomp {
    FpMatrix rref, T, Tinv;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

RrefDecomp rref_decomp(const FpMatrix& M);

std::size_t rank(const FpMatrix& M);

// Columns form a basis of ker M.
FpMatrix kernel(const FpMatrix& M);

// Some x with M x = b, if one exists.
std::optional<std::vector<std::uint64_t>> solve(const RrefDecomp& d, const std::vector<std::uint64_t>& b);
std::optional<std::vector<std::uint64_t>> solve(const FpMatrix& M, const std::vector<std::uint64_t>& b);

// Independent columns spanning colspan(M).
FpMatrix column_basis(const FpMatrix& M);

// Basis (as columns) of colspan(M1) ∩ colspan(M2), via the kernel of (M1 | -M2).
FpMatrix colspan_intersect(const FpMatrix& M1, const FpMatrix& M2);

bool in_colspan(const FpMatrix& M, const std::vector<std::uint64_t>& v);

namespace fp {
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow(std::uint64_t a, std::uint64_t k, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
}  // namespace fp

}  // namespace lmass
