#pragma once

#include "lmass/mass_quartic.hpp"
#include "lmass/norms.hpp"
#include "lmass/padic.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace lmass {

// Brute-force ground truth, built from characters and explicit towers rather than
// from the counting formulas.

struct EnumeratedExtension {
    std::string descriptor;
    long disc_val = 0;
    std::string group;
    std::vector<bool> norm_flags;  // one per generator
    Rat weight = 1;                // 1 / #Aut

    bool all_norms() const;
};

// Cyclic degree-p extensions, p the residue characteristic, one per line of characters
// of F^x / F^{xp}. Guarded at p^dim <= 2^20.
std::vector<EnumeratedExtension> enum_Cp_characters(const Field& F, const std::vector<Elem>& gens);

// Number of listed extensions per discriminant valuation, optionally only those with every flag set.
std::map<long, Int> count_by_disc(const std::vector<EnumeratedExtension>& xs, bool constrained);
// Sum of weight * q^{-disc} over totally ramified members.
Rat oracle_premass(const std::vector<EnumeratedExtension>& xs, const Int& q, bool constrained);

// Quartic fields with a quadratic subfield over a 2-adic F ([F:Q2] <= 3), and products of
// two ramified quadratics. Keys are (symbol, group, v(disc)); only A-constrained ones counted.
using QuarticCountMap = std::map<std::tuple<std::string, std::string, long>, Int>;
QuarticCountMap enum_quartic_towers(FieldPtr F, const std::vector<Elem>& gens);

// Totally ramified degree-e extensions for e prime to p: F(e-th root of zeta^j pi), j < gcd(e, q-1).
std::vector<EnumeratedExtension> enum_tame(const Field& F, long e, const std::vector<Elem>& gens);

}  // namespace lmass
