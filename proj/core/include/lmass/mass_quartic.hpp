#pragma once

#include "lmass/mass_prime.hpp"
#include "lmass/norms.hpp"
#include "lmass/omega.hpp"

#include <string>
#include <vector>

namespace lmass {

// Counting helpers for 2-adic quartics; q is the residue field size and e = e_F.
// Number of products L1 x L2 of distinct ramified quadratics with v(disc) = m.
Int quartic_Nneq(const Int& q, long e, long m);
// Number of ramified quadratic extensions of a ramified quadratic E/F with v_E(disc) = m2.
Int quartic_NC2(const Int& q, long e, long m2);
// C4 extensions E(sqrt w)/F over a C4-extendable E with v_F(disc E) = m1.
Int quartic_NC4(const Int& q, long e, long m1, long m2);
// V4 extensions E(sqrt w)/F over E with v_F(disc E) = m1.
Int quartic_NV4(const Int& q, long e, long m1, long m2);

enum class NecAlgo { Brute, Subspace, Auto };
NecAlgo parse_nec_algo(const std::string& s);

// Sizes of N_E^A and of its intersections with U^(c) F^{x2} / F^{x2}.
struct NecSizes {
    long e = 1;
    std::vector<Int> by_level;  // c = 0 .. 2e+1
    Int total = 0;
    // c <= 0 is the unit layer; c > 2e+1 keeps only the trivial class.
    Int at(long c) const;
};

// Generators of the image of gens in F^x / F^{x4}: fourth powers and repeated classes dropped.
std::vector<Elem> g4_set(const Field& F, const std::vector<Elem>& gens);

// Algorithm used by nec_sizes for a given field and generator set.
NecAlgo resolve_nec_algo(const Field& F, std::size_t g4_size, NecAlgo requested);

// N_E^A for the fixed omega of a C4-extendable E. omega may be null when gens is empty.
NecSizes nec_sizes(const SquareClasses& SF, const OmegaChoice* omega, const std::vector<Elem>& gens, NecAlgo algo);

// Trivial A: every class of F^x / F^{x2}.
NecSizes nec_sizes_trivial(const SquareClasses& SF);

// Number of C4 quartics over F through a ramified C4-extendable E with v_F(disc E) = m1,
// whose norm group contains A, with v_E(disc of the top step) = m2.
Int counts_12E_C4(long e, long m1, const NecSizes& N, long m2);

// Count of extensions per symbol, Galois closure group and v_F(disc).
struct QuarticCount {
    std::string symbol;
    std::string group;
    long m = 0;
    Int count = 0;
};

struct QuarticReport {
    MassReport report;
    std::vector<QuarticCount> counts;
};

// (4), (22) and the epimorphic symbols, for every p.
MassReport premass4_common(const Int& q, bool vals_div2, bool vals_div4);
// (1^21^2), (2^2), (1^4) for p odd from the tame class data of A mod squares and mod fourth powers.
MassReport premass4_tame(const Int& q, const TameStrata& s2, const TameStrata& s4);
// Whole quartic pre-mass, p odd.
MassReport premass4_tame(const Field& F, const std::vector<Elem>& gens);
// Whole quartic pre-mass, p = 2, with per-group counts.
QuarticReport premass4_wild(FieldPtr F, const std::vector<Elem>& gens, NecAlgo algo = NecAlgo::Auto);
// Either of the above.
MassReport premass4(FieldPtr F, const std::vector<Elem>& gens, NecAlgo algo = NecAlgo::Auto);

}  // namespace lmass
