#include "lmass/padic.hpp"

#include "lmass/fp_matrix.hpp"
#include "lmass/unit_groups.hpp"

#include <algorithm>
#include <sstream>

namespace lmass {

long min_precision(long p, long e) { return floordiv(p * e, p - 1) + 2 * e + 8; }

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p (low degree first) for the irreducibility test.

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    std::uint64_t lead_inv = fp::inv(m.back(), p);
    while (a.size() >= m.size()) {
        std::uint64_t c = fp::mul(a.back(), lead_inv, p);
        std::size_t off = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[off + i] = fp::sub(a[off + i], fp::mul(c, m[i], p), p);
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = fp::add(r[i + j], fp::mul(a[i], b[j], p), p);
    return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly a, std::uint64_t k, const Poly& m, std::uint64_t p) {
    Poly r{1};
    while (k) {
        if (k & 1) r = poly_mulmod(r, a, m, p);
        a = poly_mulmod(a, a, m, p);
        k >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// X^(p^k) mod m
Poly frob_iter(const Poly& m, std::uint64_t p, long k) {
    Poly x{0, 1};
    x = poly_mod(x, m, p);
    for (long i = 0; i < k; ++i) x = poly_powmod(x, p, m, p);
    return x;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<Int>& poly, long p) {
    Poly g;
    for (const Int& c : poly) {
        Int r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
        g.push_back(r.get_ui());
    }
    trim(g);
    if (g.size() < 2) return false;
    const long n = static_cast<long>(g.size()) - 1;
    if (n == 1) return true;
    const std::uint64_t up = static_cast<std::uint64_t>(p);
    // Rabin: X^(p^n) = X mod g, and gcd(X^(p^(n/r)) - X, g) = 1 for primes r | n.
    Poly xn = frob_iter(g, up, n);
    Poly x = poly_mod(Poly{0, 1}, g, up);
    Poly diff = xn;
    diff.resize(std::max(diff.size(), x.size()), 0);
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = fp::sub(diff[i], x[i], up);
    trim(diff);
    if (!diff.empty()) return false;
    long m = n;
    for (long r = 2; r <= m; ++r) {
        if (m % r) continue;
        while (m % r == 0) m /= r;
        Poly h = frob_iter(g, up, n / r);
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = fp::sub(h[1], 1, up);
        trim(h);
        Poly d = poly_gcd(g, h, up);
        if (d.size() > 1) return false;
    }
    return true;
}

LocalFieldDesc field_construct(long p, long e, long f, long prec, long seed) {
    if (!is_prime(p)) throw ValidationError("field_construct: p must be prime");
    if (e < 1 || f < 1) throw ValidationError("field_construct: e and f must be positive");
    if (seed < 0) throw ValidationError("field_construct: seed must be nonnegative");
    const long pmin = min_precision(p, e);
    if (prec == 0) prec = pmin;
    if (prec < pmin) throw ValidationError("field_construct: precision below the minimum " + std::to_string(pmin));

    LocalFieldDesc d;
    d.p = p;
    d.e = e;
    d.f = f;
    d.prec = prec;
    d.seed = seed;
    if (f == 1) {
        d.unram_poly = {Int(-1), Int(1)};  // u = 1
    } else {
        Int q = ipow(Int(p), static_cast<unsigned long>(f));
        bool found = false;
        for (Int idx = 0; idx < q && !found; ++idx) {
            std::vector<Int> g(f + 1);
            Int t = idx;
            for (long i = 0; i < f; ++i) {
                Int r;
                mpz_fdiv_qr_ui(t.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
                g[i] = r;
            }
            g[f] = 1;
            if (is_irreducible_mod_p(g, p)) {
                d.unram_poly = g;
                found = true;
            }
        }
        if (!found) throw ValidationError("field_construct: no irreducible polynomial found");
    }
    // seed-th entry of 1, -1, 2, -2, ... skipping multiples of p
    long k = 0, mag = 1;
    Int w;
    while (true) {
        if (mag % p != 0) {
            if (k == seed) { w = mag; break; }
            ++k;
            if (k == seed) { w = -mag; break; }
            ++k;
        }
        ++mag;
    }
    d.eis_unit = w;
    d.eis_poly.assign(e + 1, Int(0));
    d.eis_poly[0] = -Int(p) * w;
    d.eis_poly[e] = 1;
    return d;
}

std::shared_ptr<const BaseField> make_field(long p, long e, long f, long prec, long seed) {
    return BaseField::make(field_construct(p, e, f, prec, seed));
}

// ---------------------------------------------------------------------------
// Field: shared helpers

Elem Field::zero() const { return Elem(width_, BaseElem{}); }

Elem Field::from_int(const Int& n) const {
    Elem r = zero();
    r[0] = base().b_from_int(n);
    return r;
}

Elem Field::from_rat(const Rat& r) const {
    if (r.get_den() == 1) return from_int(r.get_num());
    return div(from_int(r.get_num()), from_int(r.get_den()));
}

Elem Field::pow(ElemView a, long k) const {
    if (k < 0) return pow(inv(a), -k);
    Elem r = one();
    Elem b(a.begin(), a.end());
    while (k) {
        if (k & 1) r = mul(r, b);
        k >>= 1;
        if (k) b = mul(b, b);
    }
    return r;
}

Elem Field::shift(ElemView a, long k) const {
    if (k == 0) return Elem(a.begin(), a.end());
    return k > 0 ? mul(a, pow(pi_, k)) : mul(a, pow(pi_inv_, -k));
}

long Field::valuation(ElemView a) const {
    ValInfo vi = val_info(a);
    if (!vi.exact) throw PrecisionError("valuation: precision exhausted (" + describe() + ")");
    return vi.v;
}

bool Field::is_zero_mod(ElemView a, long k) const {
    ValInfo vi = val_info(a);
    if (vi.exact || vi.v >= k) return vi.v >= k;
    throw PrecisionError("is_zero_mod: precision exhausted (" + describe() + ")");
}

bool Field::is_exact_zero(ElemView a) const {
    return std::all_of(a.begin(), a.end(), [](const BaseElem& b) { return b.kind == BaseElem::Kind::Zero; });
}

Elem Field::unit_part(ElemView a) const {
    long v = valuation(a);
    if (v == kInfVal) throw ValidationError("unit_part: zero element");
    return shift(a, -v);
}

void Field::init_common() {
    q_ = ipow(Int(p_), static_cast<unsigned long>(f_));
    rbasis_.clear();
    for (long i = 0; i < f_; ++i) {
        RVec r(f_, 0);
        r[i] = 1;
        rbasis_.push_back(lift(r));
    }
    std::vector<std::vector<RVec>> table(f_, std::vector<RVec>(f_));
    for (long i = 0; i < f_; ++i)
        for (long j = 0; j < f_; ++j) table[i][j] = residue(mul(rbasis_[i], rbasis_[j]));
    rf_ = ResidueField(static_cast<std::uint64_t>(p_), static_cast<std::size_t>(f_), std::move(table), residue(one()));
    pi_inv_ = inv(pi_);
}

// ---------------------------------------------------------------------------
// BaseField

std::shared_ptr<const BaseField> BaseField::make(const LocalFieldDesc& d) {
    auto F = std::shared_ptr<BaseField>(new BaseField(d));
    F->init_common();
    return F;
}

BaseField::BaseField(LocalFieldDesc d) : desc_(std::move(d)) {
    p_ = desc_.p;
    e_ = desc_.e;
    f_ = desc_.f;
    width_ = 1;
    if (desc_.prec < 1) throw ValidationError("BaseField: precision must be positive");
    N_ = ceildiv(desc_.prec, e_) + 2;
    ppow_.resize(N_ + 2);
    ppow_[0] = 1;
    for (long k = 1; k < N_ + 2; ++k) ppow_[k] = ppow_[k - 1] * p_;
    mod_ = ppow_[N_];
    Int w = desc_.eis_unit;
    if (mpz_divisible_ui_p(w.get_mpz_t(), static_cast<unsigned long>(p_)))
        throw ValidationError("BaseField: Eisenstein unit divisible by p");
    mpz_invert(w_inv_.get_mpz_t(), w.get_mpz_t(), mod_.get_mpz_t());
    pi_ = Elem{BaseElem{BaseElem::Kind::Unit, 1, desc_.prec, Coeffs(e_ * f_, Int(0))}};
    pi_[0].a[0] = 1;
}

const Int& BaseField::ppow(long k) const { return ppow_.at(static_cast<std::size_t>(k)); }

Int BaseField::wpow(long s) const {
    Int r;
    if (s >= 0) {
        Int w = desc_.eis_unit;
        mpz_powm_ui(r.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(s), mod_.get_mpz_t());
    } else {
        mpz_powm_ui(r.get_mpz_t(), w_inv_.get_mpz_t(), static_cast<unsigned long>(-s), mod_.get_mpz_t());
    }
    return r;
}

long BaseField::coeff_val(const Coeffs& a) const {
    long best = kInfVal;
    Int tmp;
    for (long i = 0; i < e_; ++i)
        for (long j = 0; j < f_; ++j) {
            const Int& c = a[i * f_ + j];
            if (c == 0) continue;
            long vp;
            if (p_ == 2) {
                vp = static_cast<long>(mpz_scan1(c.get_mpz_t(), 0));
            } else {
                Int pp = p_;
                vp = static_cast<long>(mpz_remove(tmp.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t()));
            }
            best = std::min(best, e_ * vp + i);
        }
    return best;
}

void BaseField::reduce(Coeffs& a, long rprec) const {
    for (long i = 0; i < e_; ++i) {
        long k = ceildiv(rprec - i, e_);
        for (long j = 0; j < f_; ++j) {
            Int& c = a[i * f_ + j];
            if (k <= 0) {
                c = 0;
            } else {
                mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), ppow(std::min(k, N_)).get_mpz_t());
            }
        }
    }
}

BaseField::Coeffs BaseField::mul_pi_pow(const Coeffs& a, long k) const {
    Coeffs b(e_ * f_, Int(0));
    for (long i = 0; i < e_; ++i) {
        long target = i + k;
        long s = floordiv(target, e_);
        long t = target - s * e_;
        Int factor = wpow(s);
        for (long j = 0; j < f_; ++j) {
            const Int& c = a[i * f_ + j];
            if (c == 0) continue;
            Int v;
            if (s >= 0) {
                v = c * ppow(std::min(s, N_ + 1)) * factor;
            } else {
                mpz_divexact(v.get_mpz_t(), c.get_mpz_t(), ppow(-s).get_mpz_t());
                v *= factor;
            }
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod_.get_mpz_t());
            b[t * f_ + j] = v;
        }
    }
    return b;
}

BaseField::Coeffs BaseField::coeff_mul(const Coeffs& x, const Coeffs& y) const {
    const long E2 = 2 * e_ - 1, F2 = 2 * f_ - 1;
    std::vector<Int> T(E2 * F2, Int(0));
    for (long i1 = 0; i1 < e_; ++i1)
        for (long j1 = 0; j1 < f_; ++j1) {
            const Int& a = x[i1 * f_ + j1];
            if (a == 0) continue;
            for (long i2 = 0; i2 < e_; ++i2)
                for (long j2 = 0; j2 < f_; ++j2) {
                    const Int& b = y[i2 * f_ + j2];
                    if (b == 0) continue;
                    mpz_addmul(T[(i1 + i2) * F2 + j1 + j2].get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                }
        }
    const auto& g = desc_.unram_poly;
    for (long i = 0; i < E2; ++i) {
        Int* row = &T[i * F2];
        for (long k = F2 - 1; k >= f_; --k) {
            if (row[k] == 0) continue;
            mpz_fdiv_r(row[k].get_mpz_t(), row[k].get_mpz_t(), mod_.get_mpz_t());
            for (long j = 0; j < f_; ++j)
                if (g[j] != 0) mpz_submul(row[k - f_ + j].get_mpz_t(), row[k].get_mpz_t(), g[j].get_mpz_t());
            row[k] = 0;
        }
    }
    Coeffs r(e_ * f_, Int(0));
    Int pw = Int(p_) * desc_.eis_unit;
    for (long i = 0; i < E2; ++i)
        for (long j = 0; j < f_; ++j) {
            Int& c = T[i * F2 + j];
            if (c == 0) continue;
            if (i < e_) {
                r[i * f_ + j] += c;
            } else {
                mpz_addmul(r[(i - e_) * f_ + j].get_mpz_t(), c.get_mpz_t(), pw.get_mpz_t());
            }
        }
    for (auto& c : r) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod_.get_mpz_t());
    return r;
}

BaseElem BaseField::normalize(long shift, long rprec, Coeffs a) const {
    reduce(a, rprec);
    long v = coeff_val(a);
    if (v >= rprec) return BaseElem{BaseElem::Kind::Indet, shift + rprec, 0, {}};
    if (v > 0) {
        a = mul_pi_pow(a, -v);
        rprec -= v;
        shift += v;
        reduce(a, rprec);
    }
    return BaseElem{BaseElem::Kind::Unit, shift, rprec, std::move(a)};
}

BaseElem BaseField::b_from_int(const Int& n) const {
    if (n == 0) return BaseElem{};
    Int m = n;
    long k = 0;
    Int pp = p_;
    k = static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t()));
    Coeffs a(e_ * f_, Int(0));
    mpz_fdiv_r(a[0].get_mpz_t(), m.get_mpz_t(), mod_.get_mpz_t());
    reduce(a, desc_.prec);
    return BaseElem{BaseElem::Kind::Unit, e_ * k, desc_.prec, std::move(a)};
}

BaseElem BaseField::b_neg(const BaseElem& x) const {
    if (x.kind != BaseElem::Kind::Unit) return x;
    BaseElem r = x;
    for (auto& c : r.a)
        if (c != 0) c = mod_ - c;
    reduce(r.a, r.rprec);
    return r;
}

BaseElem BaseField::b_add(const BaseElem& x, const BaseElem& y) const {
    using K = BaseElem::Kind;
    if (x.kind == K::Zero) return y;
    if (y.kind == K::Zero) return x;
    if (x.kind == K::Indet && y.kind == K::Indet) return BaseElem{K::Indet, std::min(x.shift, y.shift), 0, {}};
    if (x.kind == K::Indet || y.kind == K::Indet) {
        const BaseElem& ind = x.kind == K::Indet ? x : y;
        const BaseElem& u = x.kind == K::Indet ? y : x;
        if (ind.shift <= u.shift) return BaseElem{K::Indet, ind.shift, 0, {}};
        BaseElem r = u;
        r.rprec = std::min(u.rprec, ind.shift - u.shift);
        reduce(r.a, r.rprec);
        return r;
    }
    long v = std::min(x.shift, y.shift);
    long rx = x.rprec + (x.shift - v), ry = y.rprec + (y.shift - v);
    long R = std::min(rx, ry);
    Coeffs ax = x.shift == v ? x.a : mul_pi_pow(x.a, x.shift - v);
    const Coeffs ay = y.shift == v ? y.a : mul_pi_pow(y.a, y.shift - v);
    for (std::size_t i = 0; i < ax.size(); ++i) {
        ax[i] += ay[i];
        if (ax[i] >= mod_) ax[i] -= mod_;
    }
    return normalize(v, R, std::move(ax));
}

BaseElem BaseField::b_mul(const BaseElem& x, const BaseElem& y) const {
    using K = BaseElem::Kind;
    if (x.kind == K::Zero || y.kind == K::Zero) return BaseElem{};
    if (x.kind == K::Indet || y.kind == K::Indet) {
        long s = x.shift + y.shift;
        return BaseElem{K::Indet, s, 0, {}};
    }
    long R = std::min(x.rprec, y.rprec);
    Coeffs c = coeff_mul(x.a, y.a);
    reduce(c, R);
    return BaseElem{K::Unit, x.shift + y.shift, R, std::move(c)};
}

BaseElem BaseField::b_inv(const BaseElem& x) const {
    using K = BaseElem::Kind;
    if (x.kind == K::Zero) throw ValidationError("division by zero");
    if (x.kind == K::Indet) throw PrecisionError("inverse of an element with unknown valuation");
    RVec r(f_);
    for (long j = 0; j < f_; ++j) {
        Int t;
        mpz_fdiv_r_ui(t.get_mpz_t(), x.a[j].get_mpz_t(), static_cast<unsigned long>(p_));
        r[j] = t.get_ui();
    }
    RVec ri = rf_.inv(r);
    Coeffs y(e_ * f_, Int(0));
    for (long j = 0; j < f_; ++j) y[j] = ri[j];
    // Newton: y <- y (2 - x y), doubling the number of correct digits.
    long correct = 1;
    while (correct < x.rprec) {
        Coeffs xy = coeff_mul(x.a, y);
        for (auto& c : xy) c = -c;
        xy[0] += 2;
        for (auto& c : xy) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod_.get_mpz_t());
        y = coeff_mul(y, xy);
        correct *= 2;
    }
    reduce(y, x.rprec);
    return BaseElem{K::Unit, -x.shift, x.rprec, std::move(y)};
}

Elem BaseField::zero() const { return Elem{BaseElem{}}; }

Elem BaseField::from_int(const Int& n) const { return Elem{b_from_int(n)}; }

Elem BaseField::unram_generator() const {
    if (f_ == 1) {
        Int r = -desc_.unram_poly[0];
        return from_int(r);
    }
    Coeffs a(e_ * f_, Int(0));
    a[1] = 1;
    return Elem{normalize(0, desc_.prec, std::move(a))};
}

Elem BaseField::add(ElemView a, ElemView b) const { return Elem{b_add(a[0], b[0])}; }
Elem BaseField::neg(ElemView a) const { return Elem{b_neg(a[0])}; }
Elem BaseField::mul(ElemView a, ElemView b) const { return Elem{b_mul(a[0], b[0])}; }
Elem BaseField::inv(ElemView a) const { return Elem{b_inv(a[0])}; }

Elem BaseField::shift(ElemView a, long k) const {
    BaseElem r = a[0];
    if (r.kind != BaseElem::Kind::Zero) r.shift += k;
    return Elem{std::move(r)};
}

Field::ValInfo BaseField::val_info(ElemView a) const {
    const BaseElem& x = a[0];
    switch (x.kind) {
        case BaseElem::Kind::Zero: return {kInfVal, true};
        case BaseElem::Kind::Indet: return {x.shift, false};
        default: return {x.shift, true};
    }
}

long BaseField::abs_prec(ElemView a) const {
    const BaseElem& x = a[0];
    switch (x.kind) {
        case BaseElem::Kind::Zero: return kInfVal;
        case BaseElem::Kind::Indet: return x.shift;
        default: return x.shift + x.rprec;
    }
}

RVec BaseField::residue(ElemView a) const {
    const BaseElem& x = a[0];
    RVec r(f_, 0);
    switch (x.kind) {
        case BaseElem::Kind::Zero: return r;
        case BaseElem::Kind::Indet:
            if (x.shift >= 1) return r;
            throw PrecisionError("residue: precision exhausted");
        default: break;
    }
    if (x.shift < 0) throw ValidationError("residue of a non-integral element");
    if (x.shift > 0) return r;
    for (long j = 0; j < f_; ++j) {
        Int t;
        mpz_fdiv_r_ui(t.get_mpz_t(), x.a[j].get_mpz_t(), static_cast<unsigned long>(p_));
        r[j] = t.get_ui();
    }
    return r;
}

Elem BaseField::lift(const RVec& r) const {
    Coeffs a(e_ * f_, Int(0));
    bool nz = false;
    for (long j = 0; j < f_; ++j) {
        a[j] = static_cast<unsigned long>(r[j] % static_cast<std::uint64_t>(p_));
        nz = nz || a[j] != 0;
    }
    if (!nz) return zero();
    return Elem{normalize(0, desc_.prec, std::move(a))};
}

std::string BaseField::to_string(ElemView av) const {
    const BaseElem& x = av[0];
    if (x.kind == BaseElem::Kind::Zero) return "0";
    if (x.kind == BaseElem::Kind::Indet) return "O(pi^" + std::to_string(x.shift) + ")";
    std::ostringstream os;
    bool first = true;
    for (long i = 0; i < e_; ++i)
        for (long j = 0; j < f_; ++j) {
            const Int& c = x.a[i * f_ + j];
            if (c == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << c.get_str();
            if (j == 1) os << "*u";
            if (j > 1) os << "*u^" << j;
            long k = i + x.shift;
            if (k == 1) os << "*pi";
            if (k != 0 && k != 1) os << "*pi^" << k;
        }
    if (first) os << "0";
    os << " + O(pi^" << x.shift + x.rprec << ")";
    return os.str();
}

std::string BaseField::describe() const {
    std::ostringstream os;
    os << "Q_" << p_ << "(e=" << e_ << ",f=" << f_ << ",prec=" << desc_.prec << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// QuadField

namespace {
Elem concat(Elem a, const Elem& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}
}  // namespace

std::shared_ptr<const QuadField> QuadField::from_minpoly(FieldPtr parent, ElemView t, ElemView n, Kind kind,
                                                         ElemView d, ElemView sx, ElemView sy) {
    auto E = std::shared_ptr<QuadField>(new QuadField());
    const Field& P = *parent;
    E->parent_ = std::move(parent);
    E->kind_ = kind;
    E->t_.assign(t.begin(), t.end());
    E->n_.assign(n.begin(), n.end());
    E->d_.assign(d.begin(), d.end());
    if (kind == Kind::Ramified) {
        if (P.valuation(n) != 1 || P.val_info(t).v < 1)
            throw ValidationError("from_minpoly: polynomial is not Eisenstein");
    } else {
        if (P.valuation(n) != 0 || P.val_info(t).v < 0)
            throw ValidationError("from_minpoly: polynomial is not integral with unit constant term");
        const ResidueField& rf = P.residue_field();
        RVec tb = rf.neg(P.residue(t)), nb = P.residue(n);
        // X^2 + tb X + nb irreducible over F_q
        bool irreducible;
        if (P.p() == 2) {
            if (rf.is_zero(tb)) {
                irreducible = false;
            } else {
                RVec z = rf.mul(nb, rf.inv(rf.mul(tb, tb)));
                RVec tr = z, acc = z;
                for (long i = 1; i < static_cast<long>(rf.f()); ++i) {
                    acc = rf.mul(acc, acc);
                    tr = rf.add(tr, acc);
                }
                // absolute trace lands in F_2 = span(one)
                irreducible = !rf.is_zero(tr);
            }
        } else {
            RVec disc = rf.sub(rf.mul(tb, tb), rf.scalar(4));
            disc = rf.sub(rf.mul(tb, tb), rf.mul(rf.scalar(4), nb));
            irreducible = !rf.is_zero(disc) && !rf.is_square(disc);
        }
        if (!irreducible) throw ValidationError("from_minpoly: residue polynomial is reducible");
    }
    E->init();
    E->sqrt_d_ = E->make(sx, sy);
    return E;
}

std::shared_ptr<const QuadField> QuadField::extend(FieldPtr parent, ElemView d) {
    const Field& P = *parent;
    if (P.is_exact_zero(d)) throw ValidationError("quad_extend: d must be nonzero");
    {
        // Enough precision for every membership test in the extension.
        long e_ext = 2 * P.e();
        long avail = P.base().prec() * (P.e() / P.base().e());
        if (avail < min_precision(P.p(), e_ext) / 2)
            throw ValidationError("quad_extend: insufficient base precision");
    }
    const long v = P.valuation(d);
    Elem zero = P.zero();
    if (posmod(v, 2) == 1) {
        long k = (v - 1) / 2;
        if (v < 0) k = floordiv(v - 1, 2);
        Elem u = P.shift(d, -(2 * k));  // valuation 1
        Elem n = P.neg(u);
        Elem y = P.pow(P.uniformizer(), k);
        return from_minpoly(parent, zero, n, Kind::Ramified, d, zero, y);
    }
    const long h = v / 2;
    Elem pih = P.pow(P.uniformizer(), h);
    Elem u = P.shift(d, -v);
    if (P.p() != 2) {
        if (P.residue_field().is_square(P.residue(u))) throw ValidationError("quad_extend: d is a square");
        return from_minpoly(parent, zero, P.neg(u), Kind::Unramified, d, zero, pih);
    }
    CAlphaResult ca = c_alpha(P, u);
    if (ca.level == kInfVal) throw ValidationError("quad_extend: d is a square");
    const long c = ca.level;
    Elem lam = ca.lambda;
    Elem u1 = P.div(u, P.mul(lam, lam));
    Elem one = P.one();
    Elem base = P.mul(pih, lam);
    if (c % 2 == 1) {
        long k = (c - 1) / 2;
        Elem w = P.shift(P.sub(u1, one), -c);
        Elem t = P.neg(P.shift(P.from_int(2), -k));
        Elem n = P.neg(P.shift(w, 1));
        return from_minpoly(parent, t, n, Kind::Ramified, d, base, P.shift(base, k));
    }
    // c = 2e: unramified, theta = (sqrt(u1) - 1) / 2
    Elem w = P.div(P.sub(u1, one), P.from_int(4));
    Elem t = P.from_int(-1);
    Elem n = P.neg(w);
    return from_minpoly(parent, t, n, Kind::Unramified, d, base, P.mul_int(base, 2));
}

void QuadField::init() {
    const Field& P = *parent_;
    p_ = P.p();
    e_ = P.e() * (ramified() ? 2 : 1);
    f_ = P.f() * (ramified() ? 1 : 2);
    width_ = 2 * P.width();
    Elem z = P.zero(), o = P.one();
    theta_ = make(z, o);
    pi_ = ramified() ? theta_ : embed(P.uniformizer());
    init_common();
}

Elem QuadField::make(ElemView x, ElemView y) const {
    Elem r(x.begin(), x.end());
    r.insert(r.end(), y.begin(), y.end());
    return r;
}

Elem QuadField::embed(ElemView a) const { return make(a, parent_->zero()); }

Elem QuadField::from_int(const Int& n) const { return embed(parent_->from_int(n)); }

Elem QuadField::conj(ElemView a) const {
    const Field& P = *parent_;
    auto x = x_part(a), y = y_part(a);
    return make(P.add(x, P.mul(y, t_)), P.neg(y));
}

Elem QuadField::norm(ElemView a) const {
    const Field& P = *parent_;
    auto x = x_part(a), y = y_part(a);
    // N(x + y theta) = x^2 + t x y + n y^2
    Elem xy = P.mul(x, y);
    return P.add(P.add(P.mul(x, x), P.mul(t_, xy)), P.mul(n_, P.mul(y, y)));
}

Elem QuadField::trace(ElemView a) const {
    const Field& P = *parent_;
    auto x = x_part(a), y = y_part(a);
    return P.add(P.add(x, x), P.mul(t_, y));
}

Elem QuadField::add(ElemView a, ElemView b) const {
    const Field& P = *parent_;
    return concat(P.add(x_part(a), x_part(b)), P.add(y_part(a), y_part(b)));
}

Elem QuadField::neg(ElemView a) const {
    const Field& P = *parent_;
    return concat(P.neg(x_part(a)), P.neg(y_part(a)));
}

Elem QuadField::mul(ElemView a, ElemView b) const {
    const Field& P = *parent_;
    auto x1 = x_part(a), y1 = y_part(a), x2 = x_part(b), y2 = y_part(b);
    if (P.is_exact_zero(y1) && P.is_exact_zero(y2)) return embed(P.mul(x1, x2));
    if (P.is_exact_zero(y2)) return concat(P.mul(x1, x2), P.mul(y1, x2));
    if (P.is_exact_zero(y1)) return concat(P.mul(x1, x2), P.mul(x1, y2));
    Elem yy = P.mul(y1, y2);
    Elem xr = P.sub(P.mul(x1, x2), P.mul(n_, yy));
    Elem yr = P.add(P.add(P.mul(x1, y2), P.mul(x2, y1)), P.mul(t_, yy));
    return concat(std::move(xr), yr);
}

Elem QuadField::inv(ElemView a) const {
    const Field& P = *parent_;
    if (is_exact_zero(a)) throw ValidationError("division by zero");
    if (P.is_exact_zero(y_part(a))) return embed(P.inv(x_part(a)));
    Elem ni = P.inv(norm(a));
    Elem c = conj(a);
    return concat(P.mul(x_part(c), ni), P.mul(y_part(c), ni));
}

Field::ValInfo QuadField::val_info(ElemView a) const {
    const Field& P = *parent_;
    ValInfo vx = P.val_info(x_part(a)), vy = P.val_info(y_part(a));
    if (ramified()) {
        if (vx.v != kInfVal) vx.v *= 2;
        if (vy.v != kInfVal) vy.v = 2 * vy.v + 1;
    }
    long m = std::min(vx.v, vy.v);
    bool exact = (vx.exact && vx.v == m) || (vy.exact && vy.v == m);
    return {m, exact};
}

long QuadField::abs_prec(ElemView a) const {
    const Field& P = *parent_;
    long px = P.abs_prec(x_part(a)), py = P.abs_prec(y_part(a));
    if (ramified()) {
        if (px != kInfVal) px *= 2;
        if (py != kInfVal) py = 2 * py + 1;
    }
    return std::min(px, py);
}

RVec QuadField::residue(ElemView a) const {
    const Field& P = *parent_;
    ValInfo vi = val_info(a);
    if (vi.exact && vi.v < 0) throw ValidationError("residue of a non-integral element");
    if (!vi.exact && vi.v < 1 && vi.v < 0) throw PrecisionError("residue: precision exhausted");
    if (ramified()) return P.residue(x_part(a));
    RVec r = P.residue(x_part(a)), s = P.residue(y_part(a));
    r.insert(r.end(), s.begin(), s.end());
    return r;
}

Elem QuadField::lift(const RVec& r) const {
    const Field& P = *parent_;
    if (ramified()) return embed(P.lift(r));
    const std::size_t fp = static_cast<std::size_t>(P.f());
    RVec r0(r.begin(), r.begin() + fp), r1(r.begin() + fp, r.end());
    return make(P.lift(r0), P.lift(r1));
}

std::string QuadField::to_string(ElemView a) const {
    const Field& P = *parent_;
    return "(" + P.to_string(x_part(a)) + ") + (" + P.to_string(y_part(a)) + ")*theta";
}

std::string QuadField::describe() const {
    return parent_->describe() + "(" + (ramified() ? "ram" : "unram") + " quad)";
}

}  // namespace lmass
