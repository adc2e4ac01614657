#pragma once

#include "lmass/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lmass {

struct SymbolPart {
    long e = 1, f = 1;
    bool operator==(const SymbolPart&) const = default;
};

// Multiset of (e_i, f_i), kept sorted by e descending then f ascending.
struct SplittingSymbol {
    std::vector<SymbolPart> parts;

    SplittingSymbol() = default;
    explicit SplittingSymbol(std::vector<SymbolPart> p);

    long degree() const;
    long d_sigma() const;  // sum f_i (e_i - 1)
    Int aut() const;       // prod f_i times the permutations of equal parts
    bool predictable() const;  // gcd of the e_i is 1
    bool epimorphic() const;   // predictable and gcd of the f_i is 1

    // Written as in "(1^21^2)", "(112)", "(2^2)"; e = 1 exponents omitted.
    std::string to_string() const;
    // Accepts the same notation with single-digit f and e.
    static SplittingSymbol parse(std::string_view s);

    bool operator==(const SplittingSymbol&) const = default;
};

// All degree-n symbols in a fixed order (by d_sigma, then lexicographically on parts).
std::vector<SplittingSymbol> all_symbols(long n);

// Partitions of d into at most m parts.
Int partition_count(long d, long m);

Rat symbol_premass(const SplittingSymbol& s, const Int& q);
// Total pre-mass of the symbols with d_sigma = d: Part(d, n - d) / q^d.
Rat disc_layer_premass(long n, long d, const Int& q);
// Sum over all degree-n symbols.
Rat full_premass(long n, const Int& q);

// Norm group of a predictable symbol is {x : g | v(x)}; returns g.
long norm_group_pred(const SplittingSymbol& s);

}  // namespace lmass
