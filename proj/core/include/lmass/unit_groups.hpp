#pragma once

#include "lmass/fp_matrix.hpp"
#include "lmass/padic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lmass {

using FpVec = std::vector<std::uint64_t>;

// floor(pe/(p-1)); the level pe/(p-1) itself exists only when (p-1) | e.
long top_floor(const Field& F);
bool top_integral(const Field& F);
// ceil(pe/(p-1))
long top_ceil(const Field& F);

struct CAlphaResult {
    long level;   // -1 for valuation prime to p, kInfVal for p-th powers
    Elem lambda;  // alpha / lambda^p lies in U^(level) (in U^(floor(pe/(p-1))+1) when level is infinite)
};

// Largest c with alpha in U^(c) F^{xp}, by successive p-th root extraction.
CAlphaResult c_alpha(const Field& F, ElemView alpha);

// y -> y + res(pi^e / p) y^p on the residue field.
RVec phi_map(const Field& F, const RVec& y);
FpMatrix phi_matrix(const Field& F);

struct MuInfo {
    bool contains = false;
    std::size_t image_rank = 0;  // rank of phi, f - 1 exactly when mu_p is present
};
MuInfo contains_mu_p(const Field& F);

// #(F^x / U^(c) F^{xp})
Int quotient_size(const Field& F, long c);
// #(U^(i) F^{xp} / U^(i+1) F^{xp}); i = -1 is the valuation layer.
Int w_size(const Field& F, long i);

// Graded basis of F^x / F^{xp}: the uniformiser, 1 + pi^i b for p not dividing i below
// pe/(p-1) and b in the residue basis, and one top-level unit when mu_p is in F.
class UnitClassBasis {
public:
    explicit UnitClassBasis(FieldPtr F);

    const Field& field() const { return *F_; }
    const FieldPtr& field_ptr() const { return F_; }
    std::size_t dim() const { return reps_.size(); }
    const std::vector<Elem>& reps() const { return reps_; }
    const std::vector<long>& levels() const { return levels_; }
    bool mu_p() const { return mu_.contains; }
    const RrefDecomp& phi_rref() const { return phi_; }

    FpVec coords(ElemView a) const;
    // prod reps[i]^v[i]
    Elem element(const FpVec& v) const;
    // U^(c) F^{xp} / F^{xp} as a coordinate subspace.
    bool in_level(const FpVec& v, long c) const;
    FpMatrix level_subspace(long c) const;

private:
    FieldPtr F_;
    MuInfo mu_;
    RrefDecomp phi_;
    RVec top_unit_;  // residue of u with res(u) outside im(phi)
    std::vector<Elem> reps_;
    std::vector<long> levels_;
    std::vector<std::vector<Elem>> level_units_;  // 1 + pi^i b_j, indexed [i][j]
};

struct FiltrationProfile {
    long n = 2;
    Int group_order = 1;
    std::vector<Int> sizes;  // sizes[t] = #A_t; t past the end gives 1
    bool mu_p_in_F = false;
    bool vals_div2 = true, vals_div4 = true, vals_divn = true;

    Int size_at(long t) const;
    bool trivial() const { return group_order == 1; }
};

// n = p uses the graded basis; n prime to p (a prime, or 4 with p odd) uses the
// valuation / residue decomposition; n = 4 with p = 2 stores the square-class profile.
FiltrationProfile filtration_profile(const Field& F, const std::vector<Elem>& gens, long n);
FiltrationProfile filtration_profile(const UnitClassBasis& B, const std::vector<Elem>& gens);

struct StratifiedGenSet {
    long n = 2;
    std::vector<Elem> A[3];
    std::vector<bool> square[3];  // element lies in F^{x2}
    bool subgroup_trivial = true;  // A is inside F^{xn}
    bool subgroup_in_squares = true;
    std::size_t total() const { return A[0].size() + A[1].size() + A[2].size(); }
};

// Deterministic stratified generating set of the image of gens in F^x / F^{xn}.
// Supported: n = p, n a prime different from p, and n = 4 with p odd.
StratifiedGenSet stratified_gens(const Field& F, const std::vector<Elem>& gens, long n);

// Class of a in F^x / F^{xn} for n prime to p: (v mod n, k mod g) with g = gcd(n, q-1).
struct TameClass {
    long v = 0, k = 0;
};
struct TameGroup {
    long n = 2, g = 1;
    RVec zeta_res;  // residue z with z^((q-1)/g) of order g
    TameClass classify(const Field& F, ElemView a) const;
    Elem element(const Field& F, TameClass c) const;
};
TameGroup tame_group(const Field& F, long n);

// Stratified generating set of the subgroup generated by tame classes, in class form.
// Square flags are meaningful when g is even.
struct TameStrata {
    long n = 2, g = 1;
    std::vector<TameClass> A[3];
    bool subgroup_trivial = true;
    bool subgroup_in_squares = true;
    bool vals_div = true;  // every class has v = 0
    std::size_t size(int i) const { return A[i].size(); }
    bool is_square(const TameClass& c) const { return c.v % 2 == 0 && g % 2 == 0 && c.k % 2 == 0; }
};
TameStrata stratify_tame_classes(const std::vector<TameClass>& cls, long n, long g);
TameStrata tame_strata(const Field& F, const std::vector<Elem>& gens, long n);

// Valuation of the discriminant of F(sqrt u)/F, p = 2.
long disc_val_quadratic(const Field& F, ElemView u);

bool is_pth_power(const Field& F, ElemView a);
bool is_square(const Field& F, ElemView a);
// Square root of a square, refined by Newton iteration.
Elem square_root(const Field& F, ElemView a);

}  // namespace lmass
