#pragma once

#include "lmass/padic.hpp"
#include "lmass/symbols.hpp"
#include "lmass/unit_groups.hpp"

#include <string>
#include <vector>

namespace lmass {

struct MassPart {
    std::string symbol;
    std::string group;  // C2, C4, V4, D4, Cp as "C3" etc., or "all"
    Rat value;
};

struct MassReport {
    Rat premass = 0;
    std::vector<MassPart> breakdown;

    void add(std::string symbol, std::string group, const Rat& v);
    // (q - 1)/q times the pre-mass.
    Rat mass(const Int& q) const;
    Rat symbol_total(const std::string& symbol) const;
};

struct ABPair {
    Rat A, B;
};
// Helper functions of the C_p mass sums; t >= 2, q any positive integer.
ABPair helper_AB(long p, const Int& q, long t);
// sum_{1 <= c <= t, c != 1 mod p} q^{-(p-2)c - floor((c-2)/p)}
Rat cp_level_sum(long p, const Int& q, long t);
// cp_level_sum(t) == 1_{t>=p} A(t) + 1_{t != 0,1 mod p} B(t)
bool identity_check(long p, const Int& q, long t);

// Number of C_p extensions (p the residue characteristic) with v(disc) = m,
// restricted to those whose norm group contains A when a profile (n = p) is given.
Int count_Cp(const Field& F, long m, const FiltrationProfile* profile = nullptr);
// Closed forms for the pre-mass of totally ramified C_p extensions.
Rat premass_Cp_wild(const Field& F, const FiltrationProfile* profile = nullptr);
// The same pre-mass as the weighted sum of count_Cp.
Rat premass_Cp_series(const Field& F, const FiltrationProfile* profile = nullptr);
// Pre-mass of C_p extensions with alpha a norm, by the single-generator closed form.
Rat closed_form_alpha(const Field& F, ElemView alpha);

// Totally ramified degree-ell pre-mass for ell different from p.
Rat premass_tame_total_ramified(long ell, const Int& q, const TameStrata& S);
// Full degree-ell report for ell different from p, from the tame class data alone.
MassReport premass_ell_tame(long ell, const Int& q, const TameStrata& S);
// Degree-ell pre-mass with A in the norm group, per symbol.
MassReport premass_ell_total(const Field& F, long ell, const std::vector<Elem>& gens);

}  // namespace lmass
