#pragma once

// Randomized invariants shared by the unit tests and the acceptance run.

#include "lmass/density.hpp"
#include "lmass/mass_prime.hpp"
#include "lmass/mass_quartic.hpp"
#include "support.hpp"

#include <sstream>
#include <string>

namespace lmass::testing {

struct PropertyResult {
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void record(bool ok, const std::string& what) {
        ++cases;
        if (ok) return;
        if (failures++ == 0) first_failure = what;
    }
    bool ok() const { return failures == 0; }
};

struct LocalCase {
    FieldShape shape;
    long n;

    std::string label() const {
        std::ostringstream s;
        s << "p=" << shape.p << " e=" << shape.e << " f=" << shape.f << " n=" << n;
        return s.str();
    }
};

// Degree 4 over bases the quartic code handles quickly, otherwise a prime degree.
inline LocalCase random_case(Rng& rng) {
    static const std::vector<FieldShape> quartic_ok = {{2, 1, 1}, {2, 2, 1}, {2, 1, 2}, {3, 1, 1},
                                                       {5, 1, 1}, {7, 1, 1}, {3, 1, 2}};
    if (rng() % 3 == 0) return {quartic_ok[rng() % quartic_ok.size()], 4};
    return {small_shapes()[rng() % small_shapes().size()], std::vector<long>{2, 3, 5}[rng() % 3]};
}

inline std::shared_ptr<const BaseField> field_for(const LocalCase& c, long scale = 1) {
    long prec = scale * (c.n == 4 && c.shape.p == 2 ? 3 : 1) * min_precision(c.shape.p, c.shape.e);
    return make_field(c.shape.p, c.shape.e, c.shape.f, prec);
}

inline Rat local_premass(const LocalCase& c, const std::shared_ptr<const BaseField>& F, const std::vector<Elem>& gens) {
    if (c.n == 4) return premass4(F, gens).premass;
    return premass_ell_total(*F, c.n, gens).premass;
}

inline std::vector<Rat> random_rationals(Rng& rng, long max_count) {
    static const std::vector<long> small = {-1, 2, 3, 5, 6, 7, -2, 10, 11, 13, -3, 15, 21};
    std::vector<Rat> g;
    for (long k = pick(rng, 0, max_count); k > 0; --k) {
        Rat r(small[rng() % small.size()], rng() % 4 ? 1 : pick(rng, 2, 5));
        r.canonicalize();
        g.push_back(r);
    }
    return g;
}

// One more generator can only shrink the mass, and it stays positive.
inline PropertyResult prop_monotone(int cases, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r;
    for (int i = 0; i < cases; ++i) {
        LocalCase c = random_case(rng);
        auto F = field_for(c);
        auto gens = random_gens(*F, rng, 2);
        Rat before = local_premass(c, F, gens);
        gens.push_back(random_element(*F, rng));
        Rat after = local_premass(c, F, gens);
        r.record(after <= before && after > 0, c.label());
    }
    return r;
}

// n-th powers as generators leave the unconstrained mass.
inline PropertyResult prop_trivial_reduction(int cases, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r;
    for (int i = 0; i < cases; ++i) {
        LocalCase c = random_case(rng);
        auto F = field_for(c);
        std::vector<Elem> gens;
        for (long k = pick(rng, 0, 2); k > 0; --k) gens.push_back(F->pow(random_element(*F, rng), c.n));
        r.record(local_premass(c, F, gens) == full_premass(c.n, F->q()), c.label());
    }
    return r;
}

// Multiplying a generator by an n-th power, or adding one, changes nothing.
inline PropertyResult prop_absorption(int cases, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r;
    for (int i = 0; i < cases; ++i) {
        LocalCase c = random_case(rng);
        auto F = field_for(c);
        auto gens = random_gens(*F, rng, 2);
        if (gens.empty()) gens.push_back(random_element(*F, rng));
        auto moved = gens;
        moved[0] = F->mul(moved[0], F->pow(random_element(*F, rng, 1), c.n));
        moved.push_back(F->pow(random_element(*F, rng), c.n));
        r.record(local_premass(c, F, gens) == local_premass(c, F, moved), c.label());
    }
    return r;
}

// The same generators at twice the working precision give the same exact answer.
inline PropertyResult prop_precision(int cases, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r;
    for (int i = 0; i < cases; ++i) {
        LocalCase c = random_case(rng);
        auto F1 = field_for(c), F2 = field_for(c, 2);
        const std::uint64_t s = rng();
        Rng r1(s), r2(s);
        auto g1 = random_gens(*F1, r1, 2);
        auto g2 = random_gens(*F2, r2, 2);
        r.record(local_premass(c, F1, g1) == local_premass(c, F2, g2), c.label());
    }
    return r;
}

// Doubling the prime bound gives an interval inside the previous one.
inline PropertyResult prop_bound_nesting(int cases, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r;
    for (int i = 0; i < cases; ++i) {
        GlobalSpec s;
        s.n = pick(rng, 3, 5);
        s.gens = random_rationals(rng, 2);
        s.prime_bound = pick(rng, 40, 150);
        DensityInterval a = euler_density(s);
        s.prime_bound *= 2;
        DensityInterval b = euler_density(s);
        bool ok = a.coeff_lo <= b.coeff_lo && b.coeff_hi <= a.coeff_hi && a.prop_lo <= b.prop_lo &&
                  b.prop_hi <= a.prop_hi && b.coeff_lo <= b.coeff_hi;
        r.record(ok, "n=" + std::to_string(s.n) + " B=" + std::to_string(s.prime_bound / 2));
    }
    return r;
}

}  // namespace lmass::testing
