#include "lmass/omega.hpp"

namespace lmass {

namespace {

Elem pi_pow(const Field& F, long k) { return F.shift(F.one(), k); }

bool val_at_least(const Field& F, ElemView x, long k) { return F.is_exact_zero(x) || F.is_zero_mod(x, k); }

}  // namespace

bool c4_extendable(const SquareClasses& SF, ElemView d) {
    const Field& F = SF.field();
    return SF.hilbert(F.from_int(Int(-1)), d) == 1;
}

OmegaRun omega_small_disc(FieldPtr Fp, ElemView d0) {
    const Field& F = *Fp;
    if (F.p() != 2) throw ValidationError("omega_small_disc: residue characteristic must be 2");
    const long e = F.e();
    OmegaRun R;
    R.m1 = disc_val_quadratic(F, d0);
    const long m1 = R.m1;
    if (m1 % 2 != 0 || m1 < 2 || m1 > e) throw ValidationError("omega_small_disc: needs even 2 <= m1 <= e");
    {
        SquareClasses SF(Fp);
        if (!c4_extendable(SF, d0)) throw ValidationError("omega_small_disc: E is not C4-extendable");
    }
    // d = a^2 + 4b with v(a) = m1/2, v(b) = 1
    R.d = F.shift(d0, m1 - F.valuation(d0));
    Elem u = F.shift(R.d, -m1);
    CAlphaResult ca = c_alpha(F, u);
    if (ca.level != 2 * e + 1 - m1) throw PrecisionError("omega_small_disc: unexpected level");
    R.a = F.shift(ca.lambda, m1 / 2);
    R.b = F.div(F.sub(R.d, F.mul(R.a, R.a)), F.from_int(Int(4)));
    if (F.valuation(R.b) != 1) throw PrecisionError("omega_small_disc: v(b) != 1");

    // rho = (a + sqrt d)/2, rho^2 - a rho - b = 0, sqrt d = 2 rho - a
    Elem zero = F.zero();
    R.E = QuadField::from_minpoly(Fp, R.a, F.neg(R.b), QuadField::Kind::Ramified, R.d, F.neg(R.a),
                                  F.from_int(Int(2)));
    const QuadField& E = *R.E;
    const Elem& rho = E.theta();

    NormSolver S(R.E);
    auto w = S.solve(R.d);
    if (!w) throw ValidationError("omega_small_disc: d is not a norm from E");
    Elem omega = *w;
    long vw = E.valuation(omega);
    if (vw % 2 != 0) throw PrecisionError("omega_small_disc: odd valuation");
    omega = E.div(omega, E.embed(pi_pow(F, vw / 2)));
    R.omega = omega;

    Elem Nw = E.norm(omega);
    Elem x = square_root(F, F.div(Nw, R.d));
    R.lambda = F.mul(R.a, x);
    R.norm_close = val_at_least(F, F.sub(Nw, F.mul(R.lambda, R.lambda)), 2 * e + 1 - m1);

    Elem diff = E.sub(omega, E.embed(R.lambda));
    R.omega_close = val_at_least(E, diff, m1 - 1);
    if (val_at_least(E, diff, m1))
        R.omega1 = omega;
    else
        R.omega1 = E.div(E.mul(omega, E.embed(R.b)), E.mul(rho, rho));

    Elem s1(E.y_part(R.omega1).begin(), E.y_part(R.omega1).end());
    if (F.valuation(s1) == m1 / 2) {
        R.omega2 = R.omega1;
        R.lambda2 = R.lambda;
    } else {
        Elem one_rho = E.add(E.one(), rho);
        R.omega2 = E.mul(R.omega1, E.mul(one_rho, one_rho));
        R.lambda2 = F.mul(R.lambda, F.sub(F.add(F.one(), R.a), R.b));
    }
    R.omega2_close = val_at_least(E, E.sub(R.omega2, E.embed(R.lambda2)), m1);
    R.r2.assign(E.x_part(R.omega2).begin(), E.x_part(R.omega2).end());
    R.s2.assign(E.y_part(R.omega2).begin(), E.y_part(R.omega2).end());
    R.s2_val = F.valuation(R.s2) == m1 / 2;

    R.qv = F.div(F.sub(R.r2, R.lambda2), R.s2);
    R.nv = F.div(F.add(F.mul(R.qv, R.qv), R.b), R.r2);
    Elem qr = E.add(E.embed(R.qv), rho);
    R.out = E.div(E.mul(R.omega2, E.embed(R.nv)), E.mul(qr, qr));
    R.out_close = val_at_least(E, E.sub(R.out, E.one()), 4 * e + 3 - 3 * m1);
    R.c4 = is_square(F, F.div(E.norm(R.out), R.d));
    R.m2 = disc_val_quadratic(E, R.out);
    (void)zero;
    return R;
}

ConductorScan conductor_scan(const QuadField& E, ElemView omega0, const SquareClasses& SF) {
    ConductorScan C;
    for (std::size_t k = 0; k < SF.size(); ++k) {
        FpVec t = SF.class_at(k);
        long m2 = disc_val_quadratic(E, E.mul(omega0, E.embed(SF.element(t))));
        ++C.classes;
        if (C.min_m2 < 0 || m2 < C.min_m2) {
            C.min_m2 = m2;
            C.at_minimum = 1;
            C.first_min = t;
        } else if (m2 == C.min_m2) {
            ++C.at_minimum;
        }
    }
    return C;
}

std::optional<OmegaChoice> choose_omega(const SquareClasses& SF, ElemView d) {
    const Field& F = SF.field();
    const long e = F.e();
    if (!c4_extendable(SF, d)) return std::nullopt;
    OmegaChoice C;
    C.m1 = disc_val_quadratic(F, d);
    if (C.m1 % 2 == 0 && C.m1 >= 2 && C.m1 <= e) {
        OmegaRun R = omega_small_disc(SF.field_ptr(), d);
        if (!R.invariants_hold() || R.m2 != 3 * C.m1 - 2)
            throw PrecisionError("choose_omega: small-discriminant construction failed its checks");
        C.E = R.E;
        C.omega = R.out;
        C.m2 = R.m2;
        C.from_small_disc = true;
        return C;
    }
    C.E = QuadField::extend(SF.field_ptr(), d);
    NormSolver S(C.E);
    auto w = S.solve(d);
    if (!w) throw PrecisionError("choose_omega: extendable E without a norm solution");
    // least possible discriminant: 0 for unramified E, m1 + 2e otherwise
    const long target = C.m1 == 0 ? 0 : C.m1 + 2 * e;
    const QuadField& E = *C.E;
    long best = -1;
    for (std::size_t k = 0; k < SF.size(); ++k) {
        FpVec t = SF.class_at(k);
        Elem cand = E.mul(*w, E.embed(SF.element(t)));
        long m2 = disc_val_quadratic(E, cand);
        if (best < 0 || m2 < best) {
            best = m2;
            C.omega = cand;
        }
        if (m2 == target) break;
    }
    C.m2 = best;
    return C;
}

}  // namespace lmass
