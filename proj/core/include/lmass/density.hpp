#pragma once

#include "lmass/mass_prime.hpp"
#include "lmass/mass_quartic.hpp"
#include "lmass/padic.hpp"

#include <string>
#include <vector>

namespace lmass {

enum class Place { Real, Complex };

// Mass of the degree-n etale algebras over R or C whose norm group contains A.
Rat archimedean_mass(long n, bool all_positive, Place place);

// Q_p and the generators embedded in it; valuations come from the factorization.
struct LocalProfile {
    std::shared_ptr<const BaseField> F;
    std::vector<Elem> gens;
    std::vector<long> vals;
};
long padic_valuation(const Rat& r, long p);
LocalProfile local_profile_at_prime(const std::vector<Rat>& gens, long p, long n);

// Whether the n-th power local-global principle can fail over Q (it never does).
bool is_power_pathological(long n);

struct PrimeFactor {
    long p = 0;
    Rat mass;  // (p-1)/p * pre-mass with A
    Rat full;  // the same with A trivial
};

struct DensityInterval {
    Rat coeff_lo, coeff_hi;
    Rat prop_lo, prop_hi;
    Rat arch;
    std::vector<PrimeFactor> per_prime;
};

struct GlobalSpec {
    long n = 3;
    std::vector<Rat> gens;
    long prime_bound = 10000;
};

// Constant with |log m_p| <= C / p^2 at every prime p > n not dividing a generator.
long tail_constant(long n);

// Local mass factor at p, exact.
Rat local_mass_factor(long n, long p, const std::vector<Rat>& gens);

// Euler product over p <= B with the tail p > B bounded by exp(+-C/B).
DensityInterval euler_density(const GlobalSpec& spec);

// x rounded down (up = false) or up to the given number of decimals.
std::string decimal_string(const Rat& x, int digits, bool up);

}  // namespace lmass
