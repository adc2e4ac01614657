#include "lmass/residue_field.hpp"

#include "lmass/errors.hpp"
#include "lmass/fp_matrix.hpp"

#include <numeric>

namespace lmass {

ResidueField::ResidueField(std::uint64_t p, std::size_t f, std::vector<std::vector<RVec>> table, RVec one)
    : p_(p), f_(f), q_(ipow(Int(p), f)), table_(std::move(table)), one_(std::move(one)) {}

RVec ResidueField::scalar(std::uint64_t c) const {
    RVec r(f_, 0);
    for (std::size_t i = 0; i < f_; ++i) r[i] = fp::mul(one_[i], c % p_, p_);
    return r;
}

bool ResidueField::is_zero(const RVec& a) const {
    for (auto x : a)
        if (x % p_) return false;
    return true;
}

RVec ResidueField::add(const RVec& a, const RVec& b) const {
    RVec r(f_);
    for (std::size_t i = 0; i < f_; ++i) r[i] = fp::add(a[i], b[i], p_);
    return r;
}

RVec ResidueField::sub(const RVec& a, const RVec& b) const {
    RVec r(f_);
    for (std::size_t i = 0; i < f_; ++i) r[i] = fp::sub(a[i], b[i], p_);
    return r;
}

RVec ResidueField::neg(const RVec& a) const { return sub(zero(), a); }

RVec ResidueField::mul(const RVec& a, const RVec& b) const {
    RVec r(f_, 0);
    for (std::size_t i = 0; i < f_; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < f_; ++j) {
            if (!b[j]) continue;
            std::uint64_t c = fp::mul(a[i], b[j], p_);
            const RVec& t = table_[i][j];
            for (std::size_t k = 0; k < f_; ++k)
                if (t[k]) r[k] = fp::add(r[k], fp::mul(c, t[k], p_), p_);
        }
    }
    return r;
}

RVec ResidueField::pow(const RVec& a, const Int& k) const {
    RVec r = one_, b = a;
    Int e = k;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

RVec ResidueField::inv(const RVec& a) const {
    if (is_zero(a)) throw ValidationError("residue field: zero has no inverse");
    return pow(a, q_ - 2);
}

RVec ResidueField::pth_root(const RVec& a) const {
    return pow(a, q_ / Int(p_));
}

bool ResidueField::is_square(const RVec& a) const {
    if (is_zero(a)) return true;
    if (p_ == 2) return true;
    return pow(a, (q_ - 1) / 2) == one_;
}

bool ResidueField::is_nth_power(const RVec& a, unsigned long n) const {
    if (is_zero(a)) return true;
    Int g;
    Int qm1 = q_ - 1;
    mpz_gcd_ui(g.get_mpz_t(), qm1.get_mpz_t(), n);
    return pow(a, qm1 / g) == one_;
}

RVec ResidueField::element(std::uint64_t index) const {
    RVec r(f_, 0);
    for (std::size_t i = 0; i < f_; ++i) {
        r[i] = index % p_;
        index /= p_;
    }
    return r;
}

std::uint64_t ResidueField::index(const RVec& a) const {
    std::uint64_t r = 0;
    for (std::size_t i = f_; i-- > 0;) r = r * p_ + a[i];
    return r;
}

}  // namespace lmass
