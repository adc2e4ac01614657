#include "lmass/unit_groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lmass {

long top_floor(const Field& F) { return floordiv(F.p() * F.e(), F.p() - 1); }
bool top_integral(const Field& F) { return F.e() % (F.p() - 1) == 0; }
long top_ceil(const Field& F) { return ceildiv(F.p() * F.e(), F.p() - 1); }

namespace {

// residue of a / pi^k
RVec res_shift(const Field& F, ElemView a, long k) { return F.residue(F.shift(a, -k)); }

Elem one_plus(const Field& F, long i, ElemView b) { return F.add(F.one(), F.shift(b, i)); }

// The unit whose p-th power realises the top-level correction: (1 + pi^{e/(p-1)} y)^p.
long top_shift(const Field& F) { return F.e() / (F.p() - 1); }

RVec top_target(const Field& F, ElemView m) {
    Elem t = F.div(F.sub(m, F.one()), F.from_int(Int(F.p())));
    return res_shift(F, t, top_shift(F));
}

}  // namespace

RVec phi_map(const Field& F, const RVec& y) {
    const ResidueField& rf = F.residue_field();
    Elem c = F.div(F.pow(F.uniformizer(), F.e()), F.from_int(Int(F.p())));
    RVec cr = F.residue(c);
    return rf.add(y, rf.mul(cr, rf.frobenius(y)));
}

FpMatrix phi_matrix(const Field& F) {
    const std::size_t f = static_cast<std::size_t>(F.f());
    const ResidueField& rf = F.residue_field();
    Elem c = F.div(F.pow(F.uniformizer(), F.e()), F.from_int(Int(F.p())));
    RVec cr = F.residue(c);
    std::vector<FpVec> cols;
    for (std::size_t j = 0; j < f; ++j) {
        RVec y(f, 0);
        y[j] = 1;
        cols.push_back(rf.add(y, rf.mul(cr, rf.frobenius(y))));
    }
    return FpMatrix::from_columns(static_cast<std::uint64_t>(F.p()), f, cols);
}

MuInfo contains_mu_p(const Field& F) {
    MuInfo r;
    if (!top_integral(F)) {
        r.image_rank = static_cast<std::size_t>(F.f());
        return r;
    }
    r.image_rank = rank(phi_matrix(F));
    r.contains = r.image_rank < static_cast<std::size_t>(F.f());
    return r;
}

CAlphaResult c_alpha(const Field& F, ElemView alpha) {
    const long p = F.p();
    const ResidueField& rf = F.residue_field();
    const long v = F.valuation(alpha);
    if (v == kInfVal) throw ValidationError("c_alpha: zero element");
    if (posmod(v, p) != 0) return {-1, F.one()};
    Elem lambda = F.pow(F.uniformizer(), v / p);
    Elem m = F.shift(alpha, -v);
    {
        RVec y = rf.pth_root(F.residue(m));
        Elem z = F.lift(y);
        lambda = F.mul(lambda, z);
        m = F.div(m, F.pow(z, p));
    }
    const long T = top_floor(F);
    const bool integral = top_integral(F);
    for (long i = 1; i <= T; ++i) {
        if (integral && i == T) break;
        Elem d = F.sub(m, F.one());
        if (i % p != 0) {
            if (!F.is_zero_mod(d, i + 1)) return {i, lambda};
            continue;
        }
        RVec y = rf.pth_root(res_shift(F, d, i));
        if (rf.is_zero(y)) continue;
        Elem z = one_plus(F, i / p, F.lift(y));
        lambda = F.mul(lambda, z);
        m = F.div(m, F.pow(z, p));
    }
    if (integral) {
        Elem d = F.sub(m, F.one());
        if (!F.is_zero_mod(d, T + 1)) {
            auto sol = solve(phi_matrix(F), top_target(F, m));
            if (!sol) return {T, lambda};
            Elem z = one_plus(F, top_shift(F), F.lift(*sol));
            lambda = F.mul(lambda, z);
        }
    }
    return {kInfVal, lambda};
}

Int quotient_size(const Field& F, long c) {
    const long p = F.p();
    if (c < 0) return Int(1);
    if (c <= top_ceil(F)) {
        long k = c - 1 - floordiv(c - 1, p);
        return Int(p) * ipow(F.q(), static_cast<unsigned long>(k));
    }
    Int r = Int(p) * ipow(F.q(), static_cast<unsigned long>(F.e()));
    if (contains_mu_p(F).contains) r *= p;
    return r;
}

Int w_size(const Field& F, long i) {
    const long p = F.p();
    if (i == -1) return Int(p);
    if (i < 0) return Int(1);
    const bool integral = top_integral(F);
    const long T = top_floor(F);
    bool below = integral ? i < T : i <= T;
    if (below) return (i % p != 0) ? F.q() : Int(1);
    if (integral && i == T && contains_mu_p(F).contains) return Int(p);
    return Int(1);
}

// ---------------------------------------------------------------------------
// UnitClassBasis

UnitClassBasis::UnitClassBasis(FieldPtr Fp) : F_(std::move(Fp)) {
    const Field& F = *F_;
    const long p = F.p();
    const std::size_t f = static_cast<std::size_t>(F.f());
    mu_ = contains_mu_p(F);
    FpMatrix phi = phi_matrix(F);
    phi_ = rref_decomp(phi);

    reps_.push_back(F.uniformizer());
    levels_.push_back(-1);
    const long top = top_ceil(F);
    level_units_.assign(static_cast<std::size_t>(std::max(top, 1L)), {});
    for (long i = 1; i < top; ++i) {
        if (i % p == 0) continue;
        for (std::size_t j = 0; j < f; ++j) {
            Elem r = one_plus(F, i, F.residue_basis()[j]);
            level_units_[i].push_back(r);
            reps_.push_back(r);
            levels_.push_back(i);
        }
    }
    if (mu_.contains) {
        for (std::size_t j = 0; j < f; ++j) {
            RVec y(f, 0);
            y[j] = 1;
            if (!solve(phi_, y)) {
                top_unit_ = y;
                break;
            }
        }
        Elem u = F.mul_int(F.shift(F.lift(top_unit_), top_shift(F)), Int(p));
        reps_.push_back(F.add(F.one(), u));
        levels_.push_back(top_floor(F));
    }
}

FpVec UnitClassBasis::coords(ElemView a) const {
    const Field& F = *F_;
    const long p = F.p();
    const ResidueField& rf = F.residue_field();
    FpVec out(reps_.size(), 0);
    const long v = F.valuation(a);
    if (v == kInfVal) throw ValidationError("coords: zero element");
    out[0] = static_cast<std::uint64_t>(posmod(v, p));
    Elem m = F.shift(a, -v);
    {
        Elem z = F.lift(rf.pth_root(F.residue(m)));
        m = F.div(m, F.pow(z, p));
    }
    const long top = top_ceil(F);
    std::size_t idx = 1;
    for (long i = 1; i < top; ++i) {
        Elem d = F.sub(m, F.one());
        RVec r = res_shift(F, d, i);
        if (i % p != 0) {
            Elem div = F.one();
            for (std::size_t j = 0; j < r.size(); ++j) {
                out[idx + j] = r[j];
                if (r[j]) div = F.mul(div, F.pow(level_units_[i][j], static_cast<long>(r[j])));
            }
            idx += r.size();
            m = F.div(m, div);
        } else if (!rf.is_zero(r)) {
            Elem z = one_plus(F, i / p, F.lift(rf.pth_root(r)));
            m = F.div(m, F.pow(z, p));
        }
    }
    if (mu_.contains) {
        RVec t = top_target(F, m);
        for (std::uint64_t lam = 0; lam < static_cast<std::uint64_t>(p); ++lam) {
            RVec s = rf.sub(t, rf.mul(rf.scalar(lam), top_unit_));
            if (solve(phi_, s)) {
                out[idx] = lam;
                break;
            }
        }
    }
    return out;
}

Elem UnitClassBasis::element(const FpVec& v) const {
    const Field& F = *F_;
    Elem r = F.one();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) r = F.mul(r, F.pow(reps_[i], static_cast<long>(v[i])));
    return r;
}

bool UnitClassBasis::in_level(const FpVec& v, long c) const {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] && levels_[i] < c) return false;
    return true;
}

FpMatrix UnitClassBasis::level_subspace(long c) const {
    std::vector<FpVec> cols;
    for (std::size_t i = 0; i < reps_.size(); ++i) {
        if (levels_[i] < c) continue;
        FpVec e(reps_.size(), 0);
        e[i] = 1;
        cols.push_back(std::move(e));
    }
    return FpMatrix::from_columns(static_cast<std::uint64_t>(F_->p()), reps_.size(), cols);
}

// ---------------------------------------------------------------------------
// Profiles

Int FiltrationProfile::size_at(long t) const {
    if (t < 0) return group_order;
    if (static_cast<std::size_t>(t) >= sizes.size()) return Int(1);
    return sizes[static_cast<std::size_t>(t)];
}

namespace {

void set_val_flags(const Field& F, const std::vector<Elem>& gens, FiltrationProfile& pr) {
    for (const auto& g : gens) {
        long v = F.valuation(g);
        if (v == kInfVal) throw ValidationError("generator is zero");
        if (posmod(v, 2)) pr.vals_div2 = false;
        if (posmod(v, 4)) pr.vals_div4 = false;
        if (posmod(v, pr.n)) pr.vals_divn = false;
    }
}

std::vector<TameClass> tame_closure(const TameGroup& G, const std::vector<TameClass>& gens) {
    std::set<std::pair<long, long>> seen{{0, 0}};
    std::vector<TameClass> out{{0, 0}};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (const auto& g : gens) {
            TameClass c{posmod(out[head].v + g.v, G.n), posmod(out[head].k + g.k, std::max(G.g, 1L))};
            if (seen.insert({c.v, c.k}).second) out.push_back(c);
        }
    }
    return out;
}

}  // namespace

FiltrationProfile filtration_profile(const UnitClassBasis& B, const std::vector<Elem>& gens) {
    const Field& F = B.field();
    const std::uint64_t p = static_cast<std::uint64_t>(F.p());
    FiltrationProfile pr;
    pr.n = F.p();
    pr.mu_p_in_F = B.mu_p();
    set_val_flags(F, gens, pr);
    std::vector<FpVec> cols;
    for (const auto& g : gens) cols.push_back(B.coords(g));
    FpMatrix S = FpMatrix::from_columns(p, B.dim(), cols);
    std::size_t r = rank(S);
    pr.group_order = ipow(Int(F.p()), r);
    const long tmax = top_floor(F) + 1;
    for (long t = 0; t <= tmax; ++t) {
        FpMatrix I = colspan_intersect(S, B.level_subspace(t));
        pr.sizes.push_back(ipow(Int(F.p()), I.cols()));
    }
    return pr;
}

TameGroup tame_group(const Field& F, long n) {
    TameGroup G;
    G.n = n;
    Int qm1 = F.q() - 1;
    G.g = static_cast<long>(mpz_gcd_ui(nullptr, qm1.get_mpz_t(), static_cast<unsigned long>(n)));
    if (G.g == 1) return G;
    const ResidueField& rf = F.residue_field();
    Int ex = qm1 / G.g;
    // primes dividing g (g divides 4 or is prime)
    std::vector<long> primes;
    for (long r = 2; r <= G.g; ++r)
        if (G.g % r == 0 && is_prime(r)) primes.push_back(r);
    for (std::uint64_t idx = 1;; ++idx) {
        RVec z = rf.element(idx);
        if (rf.is_zero(z)) continue;
        RVec w = rf.pow(z, ex);
        bool ok = true;
        for (long r : primes)
            if (rf.pow(w, Int(G.g / r)) == rf.one()) ok = false;
        if (ok) {
            G.zeta_res = z;
            break;
        }
    }
    return G;
}

TameClass TameGroup::classify(const Field& F, ElemView a) const {
    TameClass c;
    long v = F.valuation(a);
    if (v == kInfVal) throw ValidationError("generator is zero");
    c.v = posmod(v, n);
    if (g == 1) return c;
    const ResidueField& rf = F.residue_field();
    Int ex = (F.q() - 1) / g;
    RVec w = rf.pow(F.residue(F.shift(a, -v)), ex);
    RVec zeta = rf.pow(zeta_res, ex);
    RVec acc = rf.one();
    for (long k = 0; k < g; ++k) {
        if (acc == w) {
            c.k = k;
            return c;
        }
        acc = rf.mul(acc, zeta);
    }
    throw std::logic_error("tame class: residue character not found");
}

Elem TameGroup::element(const Field& F, TameClass c) const {
    Elem r = F.pow(F.uniformizer(), c.v);
    if (g > 1 && c.k) r = F.mul(r, F.lift(F.residue_field().pow(zeta_res, Int(c.k))));
    return r;
}

FiltrationProfile filtration_profile(const Field& F, const std::vector<Elem>& gens, long n) {
    const long p = F.p();
    if (n == p) return filtration_profile(UnitClassBasis(F.shared_from_this()), gens);
    if (n == 4 && p == 2) {
        FiltrationProfile pr = filtration_profile(UnitClassBasis(F.shared_from_this()), gens);
        pr.n = 4;
        pr.vals_div2 = pr.vals_div4 = pr.vals_divn = true;
        set_val_flags(F, gens, pr);
        return pr;
    }
    if (n % p == 0 || !((n == 4) || is_prime(n))) throw ValidationError("filtration_profile: unsupported n");
    FiltrationProfile pr;
    pr.n = n;
    set_val_flags(F, gens, pr);
    TameGroup G = tame_group(F, n);
    std::vector<TameClass> cls;
    for (const auto& g : gens) cls.push_back(G.classify(F, g));
    auto H = tame_closure(G, cls);
    pr.group_order = Int(static_cast<unsigned long>(H.size()));
    long units = std::count_if(H.begin(), H.end(), [](const TameClass& c) { return c.v == 0; });
    pr.sizes = {Int(units)};
    return pr;
}

// ---------------------------------------------------------------------------
// Stratified generating sets

bool is_square(const Field& F, ElemView a) {
    long v = F.valuation(a);
    if (posmod(v, 2)) return false;
    if (F.p() == 2) return c_alpha(F, a).level == kInfVal;
    return F.residue_field().is_square(F.residue(F.shift(a, -v)));
}

namespace {

StratifiedGenSet stratify_wild(const Field& F, const std::vector<Elem>& gens) {
    UnitClassBasis B(F.shared_from_this());
    const std::uint64_t p = static_cast<std::uint64_t>(F.p());
    StratifiedGenSet S;
    S.n = F.p();
    std::vector<FpVec> vecs;
    for (const auto& g : gens) vecs.push_back(B.coords(g));
    FpMatrix M = FpMatrix::from_columns(p, B.dim(), vecs);
    // Row-reduce the generators (as rows) so that at most one has a valuation coordinate.
    RrefDecomp d = rref_decomp(M.transpose());
    std::vector<FpVec> rows;
    for (std::size_t r = 0; r < d.rank(); ++r) {
        FpVec row(B.dim());
        for (std::size_t j = 0; j < B.dim(); ++j) row[j] = d.rref(r, j);
        rows.push_back(std::move(row));
    }
    for (const auto& row : rows) {
        Elem e = B.element(row);
        int slot = row[0] ? 1 : 0;
        S.A[slot].push_back(e);
        S.square[slot].push_back(false);
    }
    S.subgroup_trivial = rows.empty();
    S.subgroup_in_squares = true;
    for (const auto& g : gens)
        if (!is_square(F, g)) S.subgroup_in_squares = false;
    return S;
}

StratifiedGenSet stratify_tame(const Field& F, const std::vector<Elem>& gens, long n) {
    TameGroup G = tame_group(F, n);
    std::vector<TameClass> cls;
    for (const auto& g : gens) cls.push_back(G.classify(F, g));
    TameStrata T = stratify_tame_classes(cls, n, G.g);
    StratifiedGenSet S;
    S.n = n;
    for (int i = 0; i < 3; ++i)
        for (const auto& c : T.A[i]) {
            Elem e = G.element(F, c);
            S.square[i].push_back(G.g % 2 == 0 ? T.is_square(c) : is_square(F, e));
            S.A[i].push_back(std::move(e));
        }
    S.subgroup_trivial = T.subgroup_trivial;
    S.subgroup_in_squares = true;
    for (const auto& g : gens)
        if (!is_square(F, g)) S.subgroup_in_squares = false;
    return S;
}

}  // namespace

TameStrata stratify_tame_classes(const std::vector<TameClass>& cls, long n, long g0) {
    TameGroup G;
    G.n = n;
    G.g = g0;
    auto H = tame_closure(G, cls);
    const long g = std::max(g0, 1L);
    TameStrata S;
    S.n = n;
    S.g = g0;
    auto order_k = [&](long k) { return g / std::gcd(g, k); };
    std::vector<TameClass> H0;
    for (const auto& h : H)
        if (h.v == 0) H0.push_back(h);
    // generator of the cyclic unit part: maximal order, then minimal k
    std::optional<TameClass> h0;
    for (const auto& h : H0) {
        if (h.k == 0) continue;
        if (!h0 || order_k(h.k) > order_k(h0->k) || (order_k(h.k) == order_k(h0->k) && h.k < h0->k)) h0 = h;
    }
    std::optional<TameClass> x;
    for (const auto& h : H)
        if (h.v == 1 && (!x || h.k < x->k)) x = h;
    if (x) {
        S.A[1].push_back(*x);
        if (h0) S.A[0].push_back(*h0);
    } else {
        std::optional<TameClass> y;
        bool y_absorbs = false;
        if (n == 4) {
            for (const auto& h : H) {
                if (h.v != 2) continue;
                long k2 = posmod(2 * h.k, g);
                bool absorbs = std::all_of(H0.begin(), H0.end(), [&](const TameClass& c) { return c.k == 0 || c.k == k2; });
                if (!y || (absorbs && !y_absorbs) || (absorbs == y_absorbs && h.k < y->k)) {
                    y = h;
                    y_absorbs = absorbs;
                }
            }
        }
        if (y) {
            S.A[2].push_back(*y);
            if (!y_absorbs && h0) S.A[0].push_back(*h0);
        } else if (h0) {
            S.A[0].push_back(*h0);
        }
    }
    S.subgroup_trivial = H.size() == 1;
    S.subgroup_in_squares = std::all_of(H.begin(), H.end(), [&](const TameClass& c) { return S.is_square(c); });
    S.vals_div = std::all_of(H.begin(), H.end(), [](const TameClass& c) { return c.v == 0; });
    return S;
}

TameStrata tame_strata(const Field& F, const std::vector<Elem>& gens, long n) {
    if (n % F.p() == 0) throw ValidationError("tame_strata: n must be prime to p");
    TameGroup G = tame_group(F, n);
    std::vector<TameClass> cls;
    for (const auto& g : gens) cls.push_back(G.classify(F, g));
    return stratify_tame_classes(cls, n, G.g);
}

StratifiedGenSet stratified_gens(const Field& F, const std::vector<Elem>& gens, long n) {
    const long p = F.p();
    if (n == p) return stratify_wild(F, gens);
    if (n % p != 0 && (is_prime(n) || n == 4)) return stratify_tame(F, gens, n);
    throw ValidationError("stratified_gens: unsupported n");
}

// ---------------------------------------------------------------------------

long disc_val_quadratic(const Field& F, ElemView u) {
    if (F.p() != 2) throw ValidationError("disc_val_quadratic: residue characteristic must be 2");
    long v = F.valuation(u);
    if (v == kInfVal) throw ValidationError("disc_val_quadratic: zero element");
    if (posmod(v, 2)) return 2 * F.e() + 1;
    CAlphaResult c = c_alpha(F, F.shift(u, -v));
    if (c.level == kInfVal) throw ValidationError("disc_val_quadratic: element is a square");
    if (c.level == 2 * F.e()) return 0;
    return 2 * F.e() + 1 - c.level;
}

bool is_pth_power(const Field& F, ElemView a) { return c_alpha(F, a).level == kInfVal; }

Elem square_root(const Field& F, ElemView a) {
    if (F.is_exact_zero(a)) return F.zero();
    long v = F.valuation(a);
    if (posmod(v, 2)) throw ValidationError("square_root: odd valuation");
    Elem u = F.shift(a, -v);
    Elem s0;
    if (F.p() == 2) {
        CAlphaResult c = c_alpha(F, u);
        if (c.level != kInfVal) throw ValidationError("square_root: not a square");
        s0 = c.lambda;
    } else {
        const ResidueField& rf = F.residue_field();
        RVec r = F.residue(u);
        if (!rf.is_square(r)) throw ValidationError("square_root: not a square");
        // exhaustive over F_q is fine for the residue sizes this is used with
        RVec root;
        for (std::uint64_t i = 1;; ++i) {
            RVec t = rf.element(i);
            if (rf.mul(t, t) == r) {
                root = t;
                break;
            }
        }
        s0 = F.lift(root);
    }
    Elem s = s0;
    Elem two = F.from_int(Int(2));
    for (int it = 0; it < 64; ++it) {
        Elem corr = F.div(F.sub(F.mul(s, s), u), F.mul(two, s));
        if (F.val_info(corr).v >= F.abs_prec(u)) break;
        s = F.sub(s, corr);
        if (!F.val_info(corr).exact) break;
    }
    return F.shift(s, v / 2);
}

}  // namespace lmass
