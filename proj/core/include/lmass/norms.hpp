#pragma once

#include "lmass/fp_matrix.hpp"
#include "lmass/padic.hpp"
#include "lmass/unit_groups.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace lmass {

// F^x / F^{x2} for a 2-adic field, with the quadratic Hilbert pairing on the
// graded basis. The pairing matrix is built on first use.
class SquareClasses {
public:
    explicit SquareClasses(FieldPtr F);

    const Field& field() const { return B_.field(); }
    const FieldPtr& field_ptr() const { return B_.field_ptr(); }
    const UnitClassBasis& basis() const { return B_; }
    std::size_t dim() const { return B_.dim(); }

    FpVec coords(ElemView a) const { return B_.coords(a); }
    Elem element(const FpVec& v) const { return B_.element(v); }
    bool is_square(ElemView a) const;

    // H(i, j) = 1 exactly when (r_i, r_j) = -1.
    const FpMatrix& pairing() const;
    // t -> [(a, t) = -1] as a row vector.
    FpVec pair_row(const FpVec& a) const;
    int hilbert(const FpVec& a, const FpVec& b) const;
    int hilbert(ElemView a, ElemView b) const;

    // Largest c <= 2e+1 with the class inside U^(c) F^{x2}; -1 for odd valuation.
    long level(const FpVec& v) const;
    // Valuation of the discriminant of F(sqrt v); 0 for the trivial class.
    long disc_val(const FpVec& v) const;

    std::size_t size() const { return std::size_t{1} << dim(); }
    // The k-th class in binary order of the coordinates.
    FpVec class_at(std::size_t k) const;

private:
    UnitClassBasis B_;
    mutable std::once_flag once_;
    mutable FpMatrix H_;
};

// Norm equations in a quadratic extension L/E: is d in N(L^x), and some omega
// with N(omega) in d E^{x2}.
class NormSolver {
public:
    explicit NormSolver(std::shared_ptr<const QuadField> L);

    const QuadField& ext() const { return *L_; }
    const UnitClassBasis& base_basis() const { return BE_; }
    const UnitClassBasis& ext_basis() const { return BL_; }

    bool member(ElemView d) const;
    std::optional<Elem> solve(ElemView d) const;
    // Some beta in L with N(beta) = d exactly.
    std::optional<Elem> solve_exact(ElemView d) const;
    // The norm group as a subspace of E^x / E^{x2}.
    const FpMatrix& norm_span() const { return A_; }

private:
    std::shared_ptr<const QuadField> L_;
    UnitClassBasis BE_, BL_;
    FpMatrix A_;
    RrefDecomp rref_;
};

struct NormSolution {
    bool member = false;
    std::optional<Elem> omega;
};
NormSolution solve_norm_equation(std::shared_ptr<const QuadField> L, ElemView d);

// Quadratic Hilbert symbol (a, b)_F, any residue characteristic.
int hilbert2(const Field& F, ElemView a, ElemView b);

// Galois quartic L = E(sqrt omega) over F with E/F quadratic: is alpha in N_{L/F}?
// EF solves norms from E, SE is the square-class data of E.
bool galois_tower_norm(const NormSolver& EF, const SquareClasses& SE, ElemView alpha, ElemView omega);

}  // namespace lmass
