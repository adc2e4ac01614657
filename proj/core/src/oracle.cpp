#include "lmass/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lmass {

bool EnumeratedExtension::all_norms() const {
    return std::all_of(norm_flags.begin(), norm_flags.end(), [](bool b) { return b; });
}

std::vector<EnumeratedExtension> enum_Cp_characters(const Field& F, const std::vector<Elem>& gens) {
    const long p = F.p();
    UnitClassBasis B(F.shared_from_this());
    const std::size_t n = B.dim();
    double bits = static_cast<double>(n) * std::log2(static_cast<double>(p));
    if (bits > 20) throw GuardExceeded("enum_Cp_characters: more than 2^20 characters");
    std::vector<FpVec> gc;
    for (const auto& g : gens) gc.push_back(B.coords(g));
    const std::uint64_t P = static_cast<std::uint64_t>(p);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= P;

    std::vector<EnumeratedExtension> out;
    FpVec chi(n, 0);
    for (std::uint64_t k = 1; k < total; ++k) {
        std::uint64_t x = k;
        for (std::size_t i = 0; i < n; ++i) {
            chi[i] = x % P;
            x /= P;
        }
        // one character per line: first nonzero entry equal to 1
        std::size_t first = 0;
        while (chi[first] == 0) ++first;
        if (chi[first] != 1) continue;
        long cond = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (chi[i]) cond = std::max(cond, B.levels()[i] + 1);
        EnumeratedExtension X;
        X.disc_val = (p - 1) * cond;
        X.group = "C" + std::to_string(p);
        X.weight = Rat(1, p);
        X.descriptor = "chi=";
        for (auto c : chi) X.descriptor += std::to_string(c);
        for (const auto& a : gc) {
            std::uint64_t s = 0;
            for (std::size_t i = 0; i < n; ++i) s = (s + chi[i] * a[i]) % P;
            X.norm_flags.push_back(s == 0);
        }
        out.push_back(std::move(X));
    }
    return out;
}

std::map<long, Int> count_by_disc(const std::vector<EnumeratedExtension>& xs, bool constrained) {
    std::map<long, Int> m;
    for (const auto& x : xs)
        if (!constrained || x.all_norms()) m[x.disc_val] += 1;
    return m;
}

Rat oracle_premass(const std::vector<EnumeratedExtension>& xs, const Int& q, bool constrained) {
    Rat r = 0;
    for (const auto& x : xs)
        if (x.disc_val > 0 && (!constrained || x.all_norms())) r += x.weight * qpow(q, -x.disc_val);
    r.canonicalize();
    return r;
}

QuarticCountMap enum_quartic_towers(FieldPtr Fp, const std::vector<Elem>& gens) {
    const Field& F = *Fp;
    if (F.p() != 2) throw ValidationError("enum_quartic_towers: residue characteristic must be 2");
    if (F.degree() > 3) throw GuardExceeded("enum_quartic_towers: limited to [F:Q2] <= 3");
    SquareClasses SF(Fp);
    std::map<std::tuple<std::string, std::string, long>, Rat> acc;
    auto bump = [&](const std::string& s, const std::string& g, long m, const Rat& w) { acc[{s, g, m}] += w; };

    std::vector<FpVec> gc;
    for (const auto& g : gens) gc.push_back(SF.coords(g));

    // products of two ramified quadratics
    {
        std::vector<std::size_t> ram;
        for (std::size_t k = 1; k < SF.size(); ++k)
            if (SF.disc_val(SF.class_at(k)) > 0) ram.push_back(k);
        for (std::size_t i = 0; i < ram.size(); ++i)
            for (std::size_t j = i; j < ram.size(); ++j) {
                FpVec d1 = SF.class_at(ram[i]), d2 = SF.class_at(ram[j]);
                // norm group of L1 x L2 is N1 N2, the span of both hyperplanes
                FpMatrix K1 = kernel(FpMatrix::from_columns(2, SF.dim(), {SF.pair_row(d1)}).transpose());
                FpMatrix K2 = kernel(FpMatrix::from_columns(2, SF.dim(), {SF.pair_row(d2)}).transpose());
                FpMatrix K = K1.hcat(K2);
                bool ok = std::all_of(gc.begin(), gc.end(), [&](const FpVec& a) { return in_colspan(K, a); });
                if (!ok) continue;
                long m = SF.disc_val(d1) + SF.disc_val(d2);
                bump("(1^21^2)", i == j ? "C2" : "V4", m, 1);
            }
    }

    // quadratic towers L = E(sqrt w)
    for (std::size_t k = 1; k < SF.size(); ++k) {
        FpVec dv = SF.class_at(k);
        Elem d = SF.element(dv);
        const long m1 = SF.disc_val(dv);
        auto E = QuadField::extend(Fp, d);
        NormSolver EF(E);
        SquareClasses SE(E);
        for (std::size_t w = 1; w < SE.size(); ++w) {
            FpVec wv = SE.class_at(w);
            Elem omega = SE.element(wv);
            const bool invariant = SE.coords(E->conj(omega)) == wv;
            std::string group;
            Rat weight;
            if (invariant) {
                Elem N = E->norm(omega);
                if (SF.is_square(N)) {
                    group = "V4";
                    weight = Rat(1, 3);
                } else {
                    group = "C4";
                    weight = 1;
                }
            } else {
                group = "D4";
                weight = Rat(1, 2);
            }
            const long m2 = SE.disc_val(wv);
            const long m = 2 * m1 + E->f() / F.f() * m2;
            const long eL = E->e() / F.e() * (m2 > 0 ? 2 : 1);
            std::string sym = eL == 4 ? "(1^4)" : eL == 2 ? "(2^2)" : "(4)";
            bool ok = true;
            for (const auto& a : gens) {
                if (!ok) break;
                ok = group == "D4" ? EF.member(a) : galois_tower_norm(EF, SE, a, omega);
            }
            if (ok) bump(sym, group, m, weight);
        }
    }
    QuarticCountMap out;
    for (auto& [key, v] : acc) {
        v.canonicalize();
        if (v.get_den() != 1) throw std::logic_error("enum_quartic_towers: fractional count");
        if (v != 0) out[key] = v.get_num();
    }
    return out;
}

std::vector<EnumeratedExtension> enum_tame(const Field& F, long e, const std::vector<Elem>& gens) {
    const long p = F.p();
    if (e < 1 || e % p == 0) throw ValidationError("enum_tame: degree must be prime to p");
    const Int& q = F.q();
    const ResidueField& rf = F.residue_field();
    const Int qm1 = q - 1;
    const long g = static_cast<long>(std::gcd(static_cast<unsigned long>(e), qm1.get_ui()));
    if (q > Int(1) << 24) throw GuardExceeded("enum_tame: residue field too large");
    // a primitive root of F_q
    RVec zeta;
    for (std::uint64_t i = 1;; ++i) {
        RVec z = rf.element(i);
        if (rf.is_zero(z)) continue;
        bool prim = true;
        Int m = qm1;
        for (Int r = 2; r * r <= m; ++r) {
            if (m % r != 0) continue;
            while (m % r == 0) m /= r;
            if (rf.pow(z, qm1 / r) == rf.one()) prim = false;
        }
        if (m > 1 && rf.pow(z, qm1 / m) == rf.one()) prim = false;
        if (prim) {
            zeta = z;
            break;
        }
    }
    const Elem sign = F.from_int(Int(e % 2 == 1 ? 1 : -1));  // (-1)^{e+1}
    std::vector<EnumeratedExtension> out;
    RVec zj = rf.one();
    for (long j = 0; j < g; ++j) {
        EnumeratedExtension X;
        X.descriptor = "j=" + std::to_string(j);
        X.disc_val = e - 1;
        X.group = (q % e == 1) ? "C" + std::to_string(e) : "other";
        X.weight = Rat(1, g);
        // norm group {u^e ((-1)^{e+1} zeta^j pi)^m}
        Elem base = F.mul(F.mul(sign, F.lift(zj)), F.uniformizer());
        for (const auto& a : gens) {
            long v = F.valuation(a);
            Elem u = F.div(a, F.pow(base, v));
            X.norm_flags.push_back(rf.is_nth_power(F.residue(u), static_cast<unsigned long>(e)));
        }
        out.push_back(std::move(X));
        zj = rf.mul(zj, zeta);
    }
    return out;
}

}  // namespace lmass
