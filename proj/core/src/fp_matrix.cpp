#include "lmass/fp_matrix.hpp"

#include <utility>

namespace lmass {

namespace fp {
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}
std::uint64_t pow(std::uint64_t a, std::uint64_t k, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (k) {
        if (k & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        k >>= 1;
    }
    return r;
}
std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::domain_error("fp::inv: zero has no inverse");
    return pow(a, p - 2, p);
}
}  // namespace fp

FpMatrix::FpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::uint64_t p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
    return m;
}

FpMatrix FpMatrix::from_columns(std::uint64_t p, std::size_t rows,
                                const std::vector<std::vector<std::uint64_t>>& cols) {
    FpMatrix m(p, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("from_columns: column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i] % p;
    }
    return m;
}

std::vector<std::uint64_t> FpMatrix::column(std::size_t j) const {
    std::vector<std::uint64_t> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<std::vector<std::uint64_t>> FpMatrix::columns() const {
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("FpMatrix: dimension mismatch in product");
    FpMatrix r(p_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = (*this)(i, k);
            if (!a) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) = fp::add(r(i, j), fp::mul(a, o(k, j), p_), p_);
        }
    return r;
}

std::vector<std::uint64_t> FpMatrix::apply(const std::vector<std::uint64_t>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("FpMatrix::apply: dimension mismatch");
    std::vector<std::uint64_t> r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r[i] = fp::add(r[i], fp::mul((*this)(i, j), v[j] % p_, p_), p_);
    return r;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

FpMatrix FpMatrix::hcat(const FpMatrix& o) const {
    if (rows_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("FpMatrix::hcat: dimension mismatch");
    FpMatrix r(p_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
}

// Gaussian elimination. Every row operation E applied to the working matrix is
// mirrored as Tinv <- E * Tinv and T <- T * E^{-1}, so M = T * rref throughout.
RrefDecomp rref_decomp(const FpMatrix& M) {
    const std::uint64_t p = M.p();
    const std::size_t m = M.rows(), n = M.cols();
    RrefDecomp d{M, FpMatrix::identity(p, m), FpMatrix::identity(p, m), {}};
    FpMatrix& R = d.rref;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && R(piv, col) == 0) ++piv;
        if (piv == m) continue;
        if (piv != row) {
            for (std::size_t j = 0; j < n; ++j) std::swap(R(row, j), R(piv, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(d.Tinv(row, j), d.Tinv(piv, j));
            for (std::size_t i = 0; i < m; ++i) std::swap(d.T(i, row), d.T(i, piv));
        }
        std::uint64_t a = R(row, col);
        if (a != 1) {
            std::uint64_t ai = fp::inv(a, p);
            for (std::size_t j = 0; j < n; ++j) R(row, j) = fp::mul(R(row, j), ai, p);
            for (std::size_t j = 0; j < m; ++j) d.Tinv(row, j) = fp::mul(d.Tinv(row, j), ai, p);
            for (std::size_t i = 0; i < m; ++i) d.T(i, row) = fp::mul(d.T(i, row), a, p);
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || R(r, col) == 0) continue;
            // row_r -= c * row_row
            std::uint64_t c = R(r, col);
            for (std::size_t j = 0; j < n; ++j) R(r, j) = fp::sub(R(r, j), fp::mul(c, R(row, j), p), p);
            for (std::size_t j = 0; j < m; ++j) d.Tinv(r, j) = fp::sub(d.Tinv(r, j), fp::mul(c, d.Tinv(row, j), p), p);
            // inverse op: row_r += c * row_row, i.e. T column row += c * column r
            for (std::size_t i = 0; i < m; ++i) d.T(i, row) = fp::add(d.T(i, row), fp::mul(c, d.T(i, r), p), p);
        }
        d.pivots.push_back(col);
        ++row;
    }
    return d;
}

std::size_t rank(const FpMatrix& M) { return rref_decomp(M).rank(); }

FpMatrix kernel(const FpMatrix& M) {
    const std::uint64_t p = M.p();
    RrefDecomp d = rref_decomp(M);
    const std::size_t n = M.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : d.pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint64_t> v(n, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < d.pivots.size(); ++r)
            v[d.pivots[r]] = fp::sub(0, d.rref(r, free), p);
        basis.push_back(std::move(v));
    }
    return FpMatrix::from_columns(p, n, basis);
}

std::optional<std::vector<std::uint64_t>> solve(const RrefDecomp& d, const std::vector<std::uint64_t>& b) {
    const std::uint64_t p = d.rref.p();
    if (b.size() != d.rref.rows()) throw std::invalid_argument("solve: dimension mismatch");
    std::vector<std::uint64_t> y = d.Tinv.apply(b);
    for (std::size_t r = d.rank(); r < y.size(); ++r)
        if (y[r] != 0) return std::nullopt;
    std::vector<std::uint64_t> x(d.rref.cols(), 0);
    for (std::size_t r = 0; r < d.rank(); ++r) x[d.pivots[r]] = y[r] % p;
    return x;
}

std::optional<std::vector<std::uint64_t>> solve(const FpMatrix& M, const std::vector<std::uint64_t>& b) {
    return solve(rref_decomp(M), b);
}

FpMatrix column_basis(const FpMatrix& M) {
    RrefDecomp d = rref_decomp(M);
    std::vector<std::vector<std::uint64_t>> cols;
    for (auto c : d.pivots) cols.push_back(M.column(c));
    return FpMatrix::from_columns(M.p(), M.rows(), cols);
}

FpMatrix colspan_intersect(const FpMatrix& M1, const FpMatrix& M2) {
    if (M1.rows() != M2.rows()) throw std::invalid_argument("colspan_intersect: row counts differ");
    if (M1.p() != M2.p()) throw std::invalid_argument("colspan_intersect: different primes");
    const std::uint64_t p = M1.p();
    FpMatrix B1 = column_basis(M1), B2 = column_basis(M2);
    FpMatrix negB2 = B2;
    for (std::size_t i = 0; i < negB2.rows(); ++i)
        for (std::size_t j = 0; j < negB2.cols(); ++j) negB2(i, j) = fp::sub(0, negB2(i, j), p);
    FpMatrix K = kernel(B1.hcat(negB2));
    std::vector<std::vector<std::uint64_t>> out;
    for (std::size_t k = 0; k < K.cols(); ++k) {
        std::vector<std::uint64_t> x(B1.cols());
        for (std::size_t i = 0; i < B1.cols(); ++i) x[i] = K(i, k);
        out.push_back(B1.apply(x));
    }
    return FpMatrix::from_columns(p, M1.rows(), out);
}

bool in_colspan(const FpMatrix& M, const std::vector<std::uint64_t>& v) {
    return solve(M, v).has_value();
}

}  // namespace lmass
