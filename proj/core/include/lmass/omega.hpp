#pragma once

#include "lmass/norms.hpp"
#include "lmass/padic.hpp"

#include <optional>

namespace lmass {

// Intermediate values of the small-discriminant construction over a 2-adic F,
// for E = F(rho) with rho^2 = a rho + b, d = a^2 + 4b, v(a) = m1/2, v(b) = 1.
struct OmegaRun {
    QuadPtr E;
    long m1 = 0;
    Elem d, a, b;
    Elem omega, lambda, omega1, omega2, lambda2, r2, s2, qv, nv, out;
    // N(omega) = lambda^2 mod p_F^{2e+1-m1}
    bool norm_close = false;
    // v_E(omega - lambda) >= m1 - 1
    bool omega_close = false;
    // omega2 = lambda2 mod p_E^{m1}
    bool omega2_close = false;
    // v_F(s2) = m1/2
    bool s2_val = false;
    // out = 1 mod p_E^{4e+3-3m1}
    bool out_close = false;
    // N(out) in d F^{x2}
    bool c4 = false;
    long m2 = -1;  // v_E of the discriminant of E(sqrt out)/E

    bool invariants_hold() const { return norm_close && omega_close && omega2_close && s2_val && out_close && c4; }
};

// E = F(sqrt d) ramified with v_F(disc) = m1 even, 2 <= m1 <= e, and -1 a norm from E.
OmegaRun omega_small_disc(FieldPtr F, ElemView d);

// (-1, d)_F = 1
bool c4_extendable(const SquareClasses& SF, ElemView d);

struct OmegaChoice {
    QuadPtr E;
    Elem omega;
    long m1 = 0;  // v_F(disc E/F), 0 when unramified
    long m2 = 0;  // v_E(disc E(sqrt omega)/E), the minimum over the C4 family
    bool from_small_disc = false;
};

// Fixed omega of minimal discriminant for a C4-extendable E = F(sqrt d):
// the small-discriminant construction when it applies, otherwise a norm-equation
// solution moved along F^x/F^{x2} to the first class of least discriminant.
std::optional<OmegaChoice> choose_omega(const SquareClasses& SF, ElemView d);

struct ConductorScan {
    long min_m2 = -1;
    std::size_t classes = 0;     // classes t visited
    std::size_t at_minimum = 0;  // how many reached min_m2
    FpVec first_min;
};
// v_E of the discriminant of E(sqrt(omega0 t)) over every t in F^x / F^{x2}.
ConductorScan conductor_scan(const QuadField& E, ElemView omega0, const SquareClasses& SF);

}  // namespace lmass
