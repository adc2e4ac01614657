#include "lmass/density.hpp"
#include "lmass/errors.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lmass;
using namespace lmass::testing;

namespace {

// zeta(3) to well below 1e-9 from partial sums plus the integral tail bounds.
double zeta3() {
    double s = 0;
    const long N = 100000;
    for (long k = N; k >= 1; --k) s += 1.0 / (double(k) * k * k);
    return s + 1.0 / (2.0 * double(N) * N);
}

Rat field_route(long n, long p, const std::vector<Rat>& gens) {
    LocalProfile L = local_profile_at_prime(gens, p, n);
    auto F = L.F;
    Rat pm = n == 4 ? premass4(F, L.gens).premass : premass_ell_total(*F, n, L.gens).premass;
    Rat r = Rat(p - 1, p) * pm;
    r.canonicalize();
    return r;
}

}  // namespace

TEST(Density, ArchimedeanMasses) {
    EXPECT_EQ(archimedean_mass(4, false, Place::Complex), Rat(1, 24));
    EXPECT_EQ(archimedean_mass(4, true, Place::Real), Rat(5, 12));
    EXPECT_EQ(archimedean_mass(4, false, Place::Real), Rat(7, 24));
    EXPECT_EQ(archimedean_mass(3, true, Place::Real), Rat(2, 3));
    EXPECT_EQ(archimedean_mass(3, false, Place::Real), Rat(2, 3));
    EXPECT_THROW(archimedean_mass(0, true, Place::Real), ValidationError);
}

TEST(Density, LocalProfiles) {
    EXPECT_EQ(padic_valuation(Rat(-3, 4), 2), -2);
    EXPECT_EQ(padic_valuation(Rat(50), 5), 2);
    LocalProfile L = local_profile_at_prime({Rat(12), Rat(-3, 4)}, 2, 4);
    EXPECT_EQ(L.vals, (std::vector<long>{2, -2}));
    EXPECT_EQ(L.F->valuation(L.gens[0]), 2);
    EXPECT_THROW(local_profile_at_prime({Rat(3)}, 6, 3), ValidationError);
}

TEST(Density, PowersNeverPathological) {
    for (long n : {3L, 8L, 24L}) EXPECT_FALSE(is_power_pathological(n));
}

TEST(Density, CubicTrivialEnclosesKnownConstant) {
    GlobalSpec s;
    s.n = 3;
    DensityInterval D = euler_density(s);
    double target = 1.0 / (3.0 * zeta3());
    EXPECT_LE(D.coeff_lo.get_d(), target);
    EXPECT_GE(D.coeff_hi.get_d(), target);
    EXPECT_LE(Rat(D.coeff_hi - D.coeff_lo), Rat(1, 1000));
    EXPECT_EQ(D.prop_lo, 1);
    EXPECT_EQ(D.prop_hi, 1);
}

TEST(Density, FifthPowerGeneratorIsExact) {
    GlobalSpec s;
    s.n = 5;
    s.gens = {Rat(32)};
    s.prime_bound = 100;
    DensityInterval D = euler_density(s);
    EXPECT_EQ(D.prop_lo, 1);
    EXPECT_EQ(D.prop_hi, 1);
}

TEST(Density, Guards) {
    GlobalSpec s;
    s.n = 4;
    s.prime_bound = 20;
    EXPECT_THROW(euler_density(s), ValidationError);  // below the tail constant
    s.prime_bound = 100;
    s.gens = {Rat(101)};
    EXPECT_THROW(euler_density(s), ValidationError);
    s.gens = {Rat(0)};
    EXPECT_THROW(euler_density(s), ValidationError);
    s.n = 6;
    s.gens = {};
    EXPECT_THROW(euler_density(s), ValidationError);
}

TEST(Density, DecimalRounding) {
    EXPECT_EQ(decimal_string(Rat(1, 3), 4, false), "0.3333");
    EXPECT_EQ(decimal_string(Rat(1, 3), 4, true), "0.3334");
    EXPECT_EQ(decimal_string(Rat(1, 2), 3, true), "0.500");
}

TEST(Density, FastPathMatchesFieldRoute) {
    const std::vector<std::vector<Rat>> sets = {{}, {Rat(-1)}, {Rat(2)}, {Rat(3), Rat(-5)}, {Rat(7, 3)}, {Rat(12)}};
    for (long n : {3L, 4L, 5L})
        for (long p : {7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L})
            for (const auto& g : sets) EXPECT_EQ(local_mass_factor(n, p, g), field_route(n, p, g)) << n << " " << p;
}

TEST(Density, LocalFactorsAtWildPrimes) {
    EXPECT_EQ(local_mass_factor(3, 2, {}), Rat(7, 8));
    EXPECT_EQ(local_mass_factor(4, 2, {}), Rat(17, 16));
    EXPECT_EQ(local_mass_factor(3, 3, {}), Rat(2, 3) * (1 + Rat(1, 3) + Rat(1, 9)));
}
