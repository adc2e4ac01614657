#include "lmass/mass_prime.hpp"

#include "lmass/errors.hpp"

namespace lmass {

void MassReport::add(std::string symbol, std::string group, const Rat& v) {
    premass += v;
    breakdown.push_back({std::move(symbol), std::move(group), v});
}

Rat MassReport::mass(const Int& q) const {
    Rat r = premass * Rat(q - 1, q);
    r.canonicalize();
    return r;
}

Rat MassReport::symbol_total(const std::string& symbol) const {
    Rat r = 0;
    for (const auto& x : breakdown)
        if (x.symbol == symbol) r += x.value;
    return r;
}

namespace {

Rat R(const Int& n) { return Rat(n); }

}  // namespace

ABPair helper_AB(long p, const Int& q, long t) {
    if (t < 2) throw ValidationError("helper_AB: t must be at least 2");
    ABPair r;
    const Rat Q = R(q);
    if (p == 2) {
        long h = t / 2;
        r.A = qpow(q, 1 - h) * (qpow(q, h) - 1) / (Q - 1);
        r.B = 0;
    } else {
        long fp = floordiv(t, p);
        r.A = qpow(q, -p * (p - 2)) * (qpow(q, (p - 1) * (p - 2)) - 1) / (qpow(q, p - 2) - 1) *
              (qpow(q, -(p - 1) * (p - 1) * fp) - 1) / (qpow(q, -(p - 1) * (p - 1)) - 1);
        r.B = qpow(q, -fp) * (qpow(q, -(p - 2) * (t + 1)) - qpow(q, -(p - 2) * (fp * p + 2))) /
              (qpow(q, -(p - 2)) - 1);
    }
    r.A.canonicalize();
    r.B.canonicalize();
    return r;
}

Rat cp_level_sum(long p, const Int& q, long t) {
    Rat s = 0;
    for (long c = 1; c <= t; ++c)
        if (posmod(c, p) != 1) s += qpow(q, -(p - 2) * c - floordiv(c - 2, p));
    return s;
}

bool identity_check(long p, const Int& q, long t) {
    ABPair ab = helper_AB(p, q, t);
    Rat rhs = 0;
    if (t >= p) rhs += ab.A;
    long r = posmod(t, p);
    if (r != 0 && r != 1) rhs += ab.B;
    return rhs == cp_level_sum(p, q, t);
}

Int count_Cp(const Field& F, long m, const FiltrationProfile* profile) {
    const long p = F.p();
    if (m <= 0 || m % (p - 1) != 0) return 0;
    const long c = m / (p - 1);
    const Int& q = F.q();
    const long e = F.e();
    const long T = top_floor(F);
    const bool integral = top_integral(F);
    const bool mu = profile ? profile->mu_p_in_F : contains_mu_p(F).contains;
    if (integral && mu && c == T + 1) {
        if (!profile) return Int(p) * ipow(q, e);
        if (profile->size_at(T) != 1) return 0;
        return Int(p) * ipow(q, e) / profile->group_order;
    }
    if (c < 2 || c > top_ceil(F) || posmod(c, p) == 1) return 0;
    const unsigned long k = static_cast<unsigned long>(c - 2 - floordiv(c - 2, p));
    if (!profile) return Int(p) * (q - 1) / (p - 1) * ipow(q, k);
    Int num = Int(p) * ipow(q, k) * (q * profile->size_at(c) - profile->size_at(c - 1));
    Int den = Int(p - 1) * profile->group_order;
    if (num % den != 0) throw std::logic_error("count_Cp: non-integral count");
    return num / den;
}

Rat premass_Cp_wild(const Field& F, const FiltrationProfile* profile) {
    const long p = F.p();
    const Int& q = F.q();
    const long e = F.e();
    const long tc = top_ceil(F);
    const bool mu = contains_mu_p(F).contains;
    Rat r = 0;
    if (!profile) {
        ABPair ab = helper_AB(p, q, std::max(tc, 2L));
        Rat inner = 0;
        if (e >= p - 1) inner += ab.A;
        if (e % (p - 1) != 0) inner += ab.B;
        r = Rat(q - 1, Int(p - 1)) * qpow(q, -2) * inner;
        if (mu) r += qpow(q, -(p - 1) * (e + 1));
    } else {
        const Rat ord = R(profile->group_order);
        if (mu && profile->size_at(top_floor(F)) == 1) r += qpow(q, -(p - 1) * (e + 1)) / ord;
        Rat s = 0;
        for (long c = 2; c <= tc; ++c) {
            if (posmod(c, p) == 1) continue;
            s += R(q * profile->size_at(c) - profile->size_at(c - 1)) * qpow(q, -((p - 2) * c + floordiv(c - 2, p)));
        }
        r += s * qpow(q, -2) / (Rat(p - 1) * ord);
    }
    r.canonicalize();
    return r;
}

Rat premass_Cp_series(const Field& F, const FiltrationProfile* profile) {
    const long p = F.p();
    Rat r = 0;
    for (long c = 1; c <= top_floor(F) + 1; ++c) {
        long m = (p - 1) * c;
        Int n = count_Cp(F, m, profile);
        if (n != 0) r += Rat(n) / Rat(p) * qpow(F.q(), -m);
    }
    r.canonicalize();
    return r;
}

Rat closed_form_alpha(const Field& F, ElemView alpha) {
    const long p = F.p();
    const Int& q = F.q();
    const long e = F.e();
    const long v = F.valuation(alpha);
    if (posmod(v, p) != 0) return premass_Cp_wild(F) / Rat(p);
    const long ca = c_alpha(F, alpha).level;
    if (ca == kInfVal) return premass_Cp_wild(F);
    const bool mu = contains_mu_p(F).contains;
    const long tc = top_ceil(F);
    // c < pe/(p-1) and c < pe/(p-1) - 1 without fractions
    const bool below_T = (p - 1) * ca < p * e;
    const bool below_T1 = (p - 1) * (ca + 1) < p * e;
    const Rat k1 = Rat(q - 1, Int(p - 1)) * qpow(q, -2);
    const Rat k2 = Rat(q - 1) / (Rat(p) * R(q * q) * Rat(p - 1));
    Rat r = 0;
    if (ca >= p) r += k1 * helper_AB(p, q, ca).A;
    if (posmod(ca, p) != 0 && posmod(ca, p) != 1) r += k1 * helper_AB(p, q, ca).B;
    if (below_T)
        r += Rat(q - p, Int(p - 1)) / Rat(p) * qpow(q, -2 - (p - 2) * (ca + 1) - floordiv(ca, p));
    if (below_T1) {
        Rat t4 = 0;
        if (e >= p - 1) t4 += helper_AB(p, q, tc).A;
        if (ca >= p - 1) t4 -= helper_AB(p, q, ca + 1).A;
        r += k2 * t4;
        if (e % (p - 1) != 0) r += k2 * helper_AB(p, q, tc).B;
        if (posmod(ca, p) != p - 1 && posmod(ca, p) != 0) r -= k2 * helper_AB(p, q, ca + 1).B;
    }
    if (below_T && mu) r += qpow(q, -(p - 1) * (e + 1)) / Rat(p);
    r.canonicalize();
    return r;
}

namespace {

void add_full_symbols(MassReport& rep, long ell, const Int& q) {
    const std::string unr = "(" + std::to_string(ell) + ")";
    const std::string tot = "(1^" + std::to_string(ell) + ")";
    if (ell <= 7) {
        for (const auto& s : all_symbols(ell)) {
            std::string name = s.to_string();
            if (name == unr || name == tot) continue;
            rep.add(name, "all", symbol_premass(s, q));
        }
    } else {
        Rat epi = Rat(ell - 1, ell);
        for (long d = 1; d <= ell - 2; ++d) epi += disc_layer_premass(ell, d, q);
        epi.canonicalize();
        rep.add("(epi)", "all", epi);
    }
}

}  // namespace

Rat premass_tame_total_ramified(long ell, const Int& q, const TameStrata& S) {
    const bool q1 = mpz_fdiv_ui(q.get_mpz_t(), static_cast<unsigned long>(ell)) == 1;
    Rat v = 0;
    if (!q1 || S.subgroup_trivial) v = qpow(q, -(ell - 1));
    else if (S.A[0].empty() && S.A[1].size() == 1) v = qpow(q, -(ell - 1)) / Rat(ell);
    v.canonicalize();
    return v;
}

MassReport premass_ell_tame(long ell, const Int& q, const TameStrata& S) {
    MassReport rep;
    add_full_symbols(rep, ell, q);
    rep.add("(" + std::to_string(ell) + ")", "C" + std::to_string(ell), S.vals_div ? Rat(1, ell) : Rat(0));
    const bool q1 = mpz_fdiv_ui(q.get_mpz_t(), static_cast<unsigned long>(ell)) == 1;
    rep.add("(1^" + std::to_string(ell) + ")", q1 ? "C" + std::to_string(ell) : "other",
            premass_tame_total_ramified(ell, q, S));
    rep.premass.canonicalize();
    return rep;
}

MassReport premass_ell_total(const Field& F, long ell, const std::vector<Elem>& gens) {
    if (ell < 2 || !is_prime(ell)) throw ValidationError("premass_ell_total: degree must be prime");
    const long p = F.p();
    const Int& q = F.q();
    if (ell != p) return premass_ell_tame(ell, q, tame_strata(F, gens, ell));
    MassReport rep;
    add_full_symbols(rep, ell, q);
    bool vals_div = true;
    for (const auto& g : gens)
        if (posmod(F.valuation(g), ell) != 0) vals_div = false;
    rep.add("(" + std::to_string(ell) + ")", "C" + std::to_string(ell), vals_div ? Rat(1, ell) : Rat(0));
    UnitClassBasis B(F.shared_from_this());
    FiltrationProfile pr = filtration_profile(B, gens);
    Rat full = premass_Cp_wild(F);
    Rat cons = pr.trivial() ? full : premass_Cp_wild(F, &pr);
    const std::string tot = "(1^" + std::to_string(ell) + ")";
    rep.add(tot, "C" + std::to_string(p), cons);
    if (p > 2) rep.add(tot, "other", qpow(q, -(p - 1)) - full);
    rep.premass.canonicalize();
    return rep;
}

}  // namespace lmass
