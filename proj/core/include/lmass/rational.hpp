#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace lmass {

using Int = mpz_class;
using Rat = mpq_class;

inline Int ipow(const Int& b, unsigned long k) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), k);
    return r;
}

// q^k for any integer k, exactly.
inline Rat qpow(const Int& q, long k) {
    if (k >= 0) return Rat(ipow(q, static_cast<unsigned long>(k)));
    Rat r(Int(1), ipow(q, static_cast<unsigned long>(-k)));
    r.canonicalize();
    return r;
}

inline Rat qpow(long q, long k) { return qpow(Int(q), k); }

// Floor division that rounds toward negative infinity.
inline long floordiv(long a, long b) {
    long d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

inline long ceildiv(long a, long b) { return -floordiv(-a, b); }

inline long posmod(long a, long b) {
    long r = a % b;
    return r < 0 ? r + b : r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

}  // namespace lmass
