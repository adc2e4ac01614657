#pragma once

#include "lmass/padic.hpp"
#include "lmass/rational.hpp"

#include <random>
#include <vector>

namespace lmass::testing {

using Rng = std::mt19937_64;

inline long pick(Rng& rng, long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); }

struct FieldShape {
    long p, e, f;
};

// Small fields on which every routine runs quickly.
inline const std::vector<FieldShape>& small_shapes() {
    static const std::vector<FieldShape> s = {{2, 1, 1}, {2, 2, 1}, {2, 1, 2}, {3, 1, 1}, {3, 2, 1},
                                              {3, 1, 2}, {5, 1, 1}, {7, 1, 1}, {5, 2, 1}, {11, 1, 1}};
    return s;
}

// A unit: a nonzero residue lift plus pi times small integer combinations of powers of u.
inline Elem random_unit(const BaseField& F, Rng& rng) {
    const ResidueField& rf = F.residue_field();
    std::uint64_t q = rf.q().get_ui();
    Elem x = F.lift(rf.element(1 + rng() % (q - 1)));
    Elem upow = F.uniformizer();
    for (long j = 0; j < F.f(); ++j) {
        Elem pipow = upow;
        for (long i = 0; i < 2; ++i) {
            x = F.add(x, F.mul_int(pipow, Int(pick(rng, -6, 6))));
            pipow = F.mul(pipow, F.uniformizer());
        }
        upow = F.mul(upow, F.unram_generator());
    }
    return x;
}

inline Elem random_element(const BaseField& F, Rng& rng, long vmax = 3) {
    return F.shift(random_unit(F, rng), pick(rng, -1, vmax));
}

inline std::vector<Elem> random_gens(const BaseField& F, Rng& rng, long max_count) {
    std::vector<Elem> g;
    long k = pick(rng, 0, max_count);
    for (long i = 0; i < k; ++i) g.push_back(random_element(F, rng));
    return g;
}

// Classical quadratic Hilbert symbol over Q_p for rationals, from Legendre symbols.
inline int legendre(const Int& a, long p) {
    Int r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    Int t;
    mpz_powm_ui(t.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2), Int(p).get_mpz_t());
    return t == 1 ? 1 : -1;
}

inline int hilbert_Qp(Int a, Int b, long p) {
    long va = 0, vb = 0;
    while (a % p == 0) a /= p, ++va;
    while (b % p == 0) b /= p, ++vb;
    if (p != 2) {
        int s = ((va * vb) % 2 && (p % 4 == 3)) ? -1 : 1;
        if (vb % 2) s *= legendre(a, p);
        if (va % 2) s *= legendre(b, p);
        return s;
    }
    auto m8 = [](const Int& x) {
        Int r = x % 8;
        if (r < 0) r += 8;
        return r.get_si();
    };
    long u = m8(a), v = m8(b);
    long eps_u = ((u - 1) / 2) % 2, eps_v = ((v - 1) / 2) % 2;
    long om_u = ((u * u - 1) / 8) % 2, om_v = ((v * v - 1) / 8) % 2;
    long ex = eps_u * eps_v + va * om_v + vb * om_u;
    return ex % 2 ? -1 : 1;
}

}  // namespace lmass::testing
