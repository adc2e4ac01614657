#include "lmass/norms.hpp"

namespace lmass {

SquareClasses::SquareClasses(FieldPtr F) : B_(std::move(F)) {
    if (B_.field().p() != 2) throw ValidationError("SquareClasses: residue characteristic must be 2");
}

bool SquareClasses::is_square(ElemView a) const {
    for (auto x : coords(a))
        if (x) return false;
    return true;
}

const FpMatrix& SquareClasses::pairing() const {
    std::call_once(once_, [this] {
        const std::size_t n = dim();
        const FieldPtr& F = field_ptr();
        H_ = FpMatrix(2, n, n);
        for (std::size_t j = 0; j < n; ++j) {
            // (x, r_j) = 1 exactly on the norm group of F(sqrt r_j), a hyperplane.
            NormSolver S(QuadField::extend(F, B_.reps()[j]));
            FpMatrix K = kernel(S.norm_span().transpose());
            if (K.cols() != 1) throw PrecisionError("SquareClasses: norm group is not a hyperplane");
            for (std::size_t i = 0; i < n; ++i) H_(i, j) = K(i, 0);
        }
    });
    return H_;
}

FpVec SquareClasses::pair_row(const FpVec& a) const {
    const FpMatrix& H = pairing();
    FpVec r(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < dim(); ++j) r[j] ^= H(i, j);
    }
    return r;
}

int SquareClasses::hilbert(const FpVec& a, const FpVec& b) const {
    FpVec r = pair_row(a);
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < dim(); ++j) s ^= (r[j] & b[j]);
    return s ? -1 : 1;
}

int SquareClasses::hilbert(ElemView a, ElemView b) const { return hilbert(coords(a), coords(b)); }

long SquareClasses::level(const FpVec& v) const {
    if (v[0]) return -1;
    long c = 2 * field().e() + 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i]) c = std::min(c, B_.levels()[i]);
    return c;
}

long SquareClasses::disc_val(const FpVec& v) const {
    const long e = field().e();
    const long c = level(v);
    if (c < 0) return 2 * e + 1;
    if (c >= 2 * e) return 0;
    return 2 * e + 1 - c;
}

FpVec SquareClasses::class_at(std::size_t k) const {
    FpVec v(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) v[i] = (k >> i) & 1U;
    return v;
}

// ---------------------------------------------------------------------------

NormSolver::NormSolver(std::shared_ptr<const QuadField> L)
    : L_(std::move(L)), BE_(L_->parent_ptr()), BL_(L_) {
    std::vector<FpVec> cols;
    for (const auto& r : BL_.reps()) cols.push_back(BE_.coords(L_->norm(r)));
    A_ = FpMatrix::from_columns(static_cast<std::uint64_t>(L_->p()), BE_.dim(), cols);
    rref_ = rref_decomp(A_);
}

bool NormSolver::member(ElemView d) const { return lmass::solve(rref_, BE_.coords(d)).has_value(); }

std::optional<Elem> NormSolver::solve(ElemView d) const {
    auto x = lmass::solve(rref_, BE_.coords(d));
    if (!x) return std::nullopt;
    Elem w = BL_.element(*x);
    const Field& E = *L_->parent_ptr();
    Elem ratio = E.div(L_->norm(w), d);
    for (auto c : BE_.coords(ratio))
        if (c) throw PrecisionError("solve_norm_equation: solution failed verification");
    return w;
}

std::optional<Elem> NormSolver::solve_exact(ElemView d) const {
    auto w = solve(d);
    if (!w) return std::nullopt;
    const Field& E = *L_->parent_ptr();
    Elem y = square_root(E, E.div(L_->norm(*w), d));
    return L_->div(*w, L_->embed(y));
}

NormSolution solve_norm_equation(std::shared_ptr<const QuadField> L, ElemView d) {
    NormSolver S(std::move(L));
    NormSolution r;
    r.omega = S.solve(d);
    r.member = r.omega.has_value();
    return r;
}

// ---------------------------------------------------------------------------

int hilbert2(const Field& F, ElemView a, ElemView b) {
    if (F.is_exact_zero(a) || F.is_exact_zero(b)) throw ValidationError("hilbert2: arguments must be nonzero");
    if (F.p() != 2) {
        // Tame symbol: ((-1)^{v(a)v(b)} a^{v(b)} / b^{v(a)}) reduced, as a Legendre symbol.
        const long va = F.valuation(a), vb = F.valuation(b);
        Elem t = F.div(F.pow(a, vb), F.pow(b, va));
        if (posmod(va * vb, 2)) t = F.neg(t);
        return F.residue_field().is_square(F.residue(t)) ? 1 : -1;
    }
    if (is_square(F, b)) return 1;
    NormSolver S(QuadField::extend(F.shared_from_this(), b));
    return S.member(a) ? 1 : -1;
}

bool galois_tower_norm(const NormSolver& EF, const SquareClasses& SE, ElemView alpha, ElemView omega) {
    auto beta = EF.solve_exact(alpha);
    if (!beta) return false;
    return SE.hilbert(*beta, omega) == 1;
}

}  // namespace lmass
