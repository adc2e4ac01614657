#pragma once

#include "lmass/rational.hpp"

#include <cstdint>
#include <vector>

namespace lmass {

using RVec = std::vector<std::uint64_t>;

// Finite field F_q as an F_p-algebra of dimension f, given by structure
// constants in a fixed basis (the residues of the field's residue lifts).
class ResidueField {
public:
    ResidueField() = default;
    // table[i][j] = coordinates of b_i * b_j
    ResidueField(std::uint64_t p, std::size_t f, std::vector<std::vector<RVec>> table, RVec one);

    std::uint64_t p() const { return p_; }
    std::size_t f() const { return f_; }
    const Int& q() const { return q_; }

    RVec zero() const { return RVec(f_, 0); }
    const RVec& one() const { return one_; }
    RVec scalar(std::uint64_t c) const;

    bool is_zero(const RVec& a) const;
    RVec add(const RVec& a, const RVec& b) const;
    RVec sub(const RVec& a, const RVec& b) const;
    RVec neg(const RVec& a) const;
    RVec mul(const RVec& a, const RVec& b) const;
    RVec pow(const RVec& a, const Int& k) const;
    RVec inv(const RVec& a) const;
    RVec frobenius(const RVec& a) const { return pow(a, Int(p_)); }
    // Unique p-th root; Frobenius is bijective on a finite field.
    RVec pth_root(const RVec& a) const;
    bool is_square(const RVec& a) const;
    // a is an n-th power in F_q^x (a nonzero).
    bool is_nth_power(const RVec& a, unsigned long n) const;
    RVec element(std::uint64_t index) const;  // base-p digits as coordinates
    std::uint64_t index(const RVec& a) const;

private:
    std::uint64_t p_ = 2;
    std::size_t f_ = 1;
    Int q_ = 2;
    std::vector<std::vector<RVec>> table_;
    RVec one_;
};

}  // namespace lmass
