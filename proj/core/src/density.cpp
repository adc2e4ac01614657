#include "lmass/density.hpp"

#include "lmass/errors.hpp"
#include "lmass/symbols.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace lmass {

namespace {

Int factorial(long n) {
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

std::vector<long> primes_upto(long B) {
    std::vector<bool> sieve(static_cast<std::size_t>(B + 1), true);
    std::vector<long> out;
    for (long i = 2; i <= B; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (long j = i * i; j <= B; j += i) sieve[j] = false;
    }
    return out;
}

long mod_of(const Int& x, long p) {
    Int r = x % p;
    if (r < 0) r += p;
    return static_cast<long>(r.get_si());
}

long powmod(long a, long k, long p) {
    long r = 1 % p;
    a %= p;
    while (k) {
        if (k & 1) r = r * a % p;
        a = a * a % p;
        k >>= 1;
    }
    return r;
}

long primitive_root(long p) {
    if (p == 2) return 1;
    std::vector<long> fac;
    long m = p - 1;
    for (long r = 2; r * r <= m; ++r)
        if (m % r == 0) {
            fac.push_back(r);
            while (m % r == 0) m /= r;
        }
    if (m > 1) fac.push_back(m);
    for (long z = 2;; ++z) {
        bool ok = true;
        for (long r : fac)
            if (powmod(z, (p - 1) / r, p) == 1) ok = false;
        if (ok) return z;
    }
}

// Classes of the generators in Q_p^x / Q_p^{xn} for n prime to p, from residues alone.
std::vector<TameClass> rational_tame_classes(const std::vector<Rat>& gens, long p, long n, long g) {
    std::vector<TameClass> out;
    long zg = g > 1 ? powmod(primitive_root(p), (p - 1) / g, p) : 1;
    for (const auto& a : gens) {
        TameClass c;
        long v = padic_valuation(a, p);
        c.v = posmod(v, n);
        if (g > 1) {
            Rat u = a / qpow(Int(p), v);
            long r = mod_of(u.get_num(), p) * powmod(mod_of(u.get_den(), p), p - 2, p) % p;
            long w = powmod(r, (p - 1) / g, p);
            long acc = 1;
            c.k = -1;
            for (long k = 0; k < g; ++k, acc = acc * zg % p)
                if (acc == w) c.k = k;
            if (c.k < 0) throw std::logic_error("rational_tame_classes: no discrete log");
        }
        out.push_back(c);
    }
    return out;
}

bool is_nth_power_rational(const Rat& a, long n) {
    if (a == 0) return false;
    auto root = [&](const Int& x, Int& r) { return mpz_root(r.get_mpz_t(), x.get_mpz_t(), n) != 0; };
    Int r;
    Int num = a.get_num();
    if (num < 0) {
        if (n % 2 == 0) return false;
        num = -num;
    }
    return root(num, r) && root(a.get_den(), r);
}

Rat local_premass(long n, long p, const std::vector<Rat>& gens) {
    const Int q = p;
    if (n % p != 0) {
        if (n == 4) {
            bool d2 = true, d4 = true;
            for (const auto& a : gens) {
                long v = padic_valuation(a, p);
                if (posmod(v, 2)) d2 = false;
                if (posmod(v, 4)) d4 = false;
            }
            MassReport rep = premass4_common(q, d2, d4);
            long g2 = std::gcd(2L, p - 1), g4 = std::gcd(4L, p - 1);
            MassReport t = premass4_tame(q, stratify_tame_classes(rational_tame_classes(gens, p, 2, g2), 2, g2),
                                         stratify_tame_classes(rational_tame_classes(gens, p, 4, g4), 4, g4));
            Rat r = rep.premass + t.premass;
            r.canonicalize();
            return r;
        }
        long g = std::gcd(n, p - 1);
        return premass_ell_tame(n, q, stratify_tame_classes(rational_tame_classes(gens, p, n, g), n, g)).premass;
    }
    LocalProfile L = local_profile_at_prime(gens, p, n);
    if (n == 4) return premass4(L.F, L.gens).premass;
    return premass_ell_total(*L.F, n, L.gens).premass;
}

}  // namespace

Rat archimedean_mass(long n, bool all_positive, Place place) {
    if (n < 1) throw ValidationError("archimedean_mass: n must be positive");
    if (place == Place::Complex) return Rat(Int(1), factorial(n));
    long top = all_positive ? n / 2 : (n + 1) / 2 - 1;
    Rat r = 0;
    for (long s = 0; s <= top; ++s) r += Rat(Int(1), factorial(s) * factorial(n - 2 * s) * ipow(Int(2), s));
    r.canonicalize();
    return r;
}

long padic_valuation(const Rat& r, long p) {
    if (r == 0) throw ValidationError("zero generator");
    long v = 0;
    Int x = r.get_num();
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    x = r.get_den();
    while (x % p == 0) {
        x /= p;
        --v;
    }
    return v;
}

LocalProfile local_profile_at_prime(const std::vector<Rat>& gens, long p, long n) {
    if (!is_prime(p)) throw ValidationError("local_profile_at_prime: p must be prime");
    LocalProfile L;
    long vmax = 0;
    for (const auto& a : gens) {
        long v = padic_valuation(a, p);
        L.vals.push_back(v);
        vmax = std::max(vmax, std::abs(v));
    }
    long prec = min_precision(p, 1);
    if (n == 4 && p == 2) prec *= 3;
    L.F = make_field(p, 1, 1, prec + vmax);
    for (const auto& a : gens) L.gens.push_back(L.F->from_rat(a));
    return L;
}

bool is_power_pathological(long n) {
    // Needs 8 | n, and then 2 would have to split in Q(mu_{2^r}); it ramifies instead.
    (void)n;
    return false;
}

long tail_constant(long n) {
    Int best = 0;
    for (long d = 0; d < n; ++d) best = std::max(best, partition_count(d, n - d));
    return 4 * (n - 1) * best.get_si();
}

Rat local_mass_factor(long n, long p, const std::vector<Rat>& gens) {
    Rat m = Rat(p - 1, p) * local_premass(n, p, gens);
    m.canonicalize();
    return m;
}

DensityInterval euler_density(const GlobalSpec& spec) {
    const long n = spec.n;
    if (n < 3 || n > 5) throw ValidationError("euler_density: n must be 3, 4 or 5");
    const long B = spec.prime_bound;
    const long C = tail_constant(n);
    long need = n;
    bool all_pos = true, all_powers = true;
    for (const auto& a : spec.gens) {
        if (a == 0) throw ValidationError("zero generator");
        if (a < 0) all_pos = false;
        if (!is_nth_power_rational(a, n)) all_powers = false;
        for (const Int& x : {Int(abs(a.get_num())), Int(a.get_den())}) {
            Int y = x;
            // a prime factor above B is rejected below, so trial division can stop at B
            for (long r = 2; r <= B && Int(r) * r <= y; ++r)
                while (y % r == 0) {
                    y /= r;
                    need = std::max(need, r);
                }
            if (y > 1) need = y.fits_slong_p() ? std::max(need, y.get_si()) : std::numeric_limits<long>::max() - 1;
        }
    }
    if (B < need + 1) throw ValidationError("euler_density: prime bound below max(n, generator primes) + 1");
    if (B <= C) throw ValidationError("euler_density: prime bound must exceed the tail constant " + std::to_string(C));

    DensityInterval D;
    D.arch = archimedean_mass(n, all_pos, Place::Real);
    const Rat arch_full = archimedean_mass(n, true, Place::Real);
    Rat prod = Rat(1, 2) * D.arch, ratio = D.arch / arch_full;
    const std::vector<Rat> none;
    for (long p : primes_upto(B)) {
        PrimeFactor f;
        f.p = p;
        f.full = local_mass_factor(n, p, none);
        f.mass = spec.gens.empty() ? f.full : local_mass_factor(n, p, spec.gens);
        prod *= f.mass;
        ratio *= f.mass / f.full;
        D.per_prime.push_back(std::move(f));
    }
    prod.canonicalize();
    ratio.canonicalize();
    // exp(-x) >= 1 - x and exp(x) <= 1/(1 - x) for 0 <= x < 1
    const Rat x(C, B);
    D.coeff_lo = prod * (1 - x);
    D.coeff_hi = prod / (1 - x);
    if (spec.gens.empty() || all_powers) {
        D.prop_lo = D.prop_hi = ratio;
    } else {
        D.prop_lo = ratio * (1 - x);
        D.prop_hi = ratio;
    }
    D.coeff_lo.canonicalize();
    D.coeff_hi.canonicalize();
    D.prop_lo.canonicalize();
    D.prop_hi.canonicalize();
    return D;
}

std::string decimal_string(const Rat& x, int digits, bool up) {
    Int scale = ipow(Int(10), static_cast<unsigned long>(digits));
    Int num = x.get_num() * scale, r;
    if (up)
        mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    else
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    bool neg = r < 0;
    if (neg) r = -r;
    std::string s = r.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return neg ? "-" + s : s;
}

}  // namespace lmass
