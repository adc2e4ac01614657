#include "lmass/mass_quartic.hpp"

#include <algorithm>

namespace lmass {

namespace {

Int qp(const Int& q, long k) { return k < 0 ? Int(0) : ipow(q, static_cast<unsigned long>(k)); }

Int to_int(const Rat& r, const char* what) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() != 1) throw std::logic_error(std::string(what) + ": non-integral count");
    return c.get_num();
}

void merge(MassReport& into, const MassReport& from) {
    for (const auto& part : from.breakdown) into.add(part.symbol, part.group, part.value);
}

}  // namespace

// ---------------------------------------------------------------------------
// Counting helpers

Int quartic_Nneq(const Int& q, long e, long m) {
    const Int ind4 = (m % 4 == 0) ? (q - 1) * qp(q, m / 4 - 1) : Int(0);
    if (m % 2 == 0 && m >= 4 && m <= 2 * e) return 2 * (q - 1) * (q - 1) * qp(q, m / 2 - 2) * (m / 2 - 1) - ind4;
    if (m % 2 == 0 && m >= 2 * e + 2 && m <= 4 * e)
        return 2 * (q - 1) * (q - 1) * qp(q, m / 2 - 2) * (2 * e - m / 2 + 1) - ind4;
    if (m % 2 == 1 && m >= 2 * e + 3 && m <= 4 * e + 1) return 4 * (q - 1) * qp(q, (m - 1) / 2 - 1);
    if (m == 4 * e + 2) return qp(q, e) * (2 * qp(q, e) - 1);
    return 0;
}

Int quartic_NC2(const Int& q, long e, long m2) {
    if (m2 % 2 == 0 && m2 >= 2 && m2 <= 4 * e) return 2 * (q - 1) * qp(q, m2 / 2 - 1);
    if (m2 == 4 * e + 1) return 2 * qp(q, 2 * e);
    return 0;
}

Int quartic_NC4(const Int& q, long e, long m1, long m2) {
    if (m1 % 2 == 0 && m1 >= 2 && m1 <= e) {
        if (m2 == 3 * m1 - 2) return qp(q, m1 - 1);
        if (m2 % 2 == 0 && m2 >= 3 * m1 && m2 <= 4 * e - m1)
            return qp(q, floordiv(m1 + m2, 4)) - qp(q, floordiv(m1 + m2 - 2, 4));
        if (m2 == 4 * e - m1 + 2) return qp(q, e);
        return 0;
    }
    if (m1 == 2 * e + 1 || (m1 % 2 == 0 && m1 > e && m1 <= 2 * e)) return m2 == m1 + 2 * e ? 2 * qp(q, e) : Int(0);
    return 0;
}

Int quartic_NV4(const Int& q, long e, long m1, long m2) {
    if (!(m1 == 2 * e + 1 || (m1 % 2 == 0 && m1 >= 2 && m1 <= 2 * e))) return 0;
    if (m2 % 2 == 0 && m2 >= 2 && m2 < m1) return 2 * (q - 1) * qp(q, m2 / 2 - 1);
    if (m2 == m1 && m1 % 2 == 0) return (q - 2) * qp(q, m1 / 2 - 1);
    if (m2 > m1 && m2 <= 4 * e - m1 && posmod(m1 - m2, 4) == 0) return (q - 1) * qp(q, (m1 + m2) / 4 - 1);
    if (m2 > m1 && m1 + m2 == 4 * e + 2) return qp(q, e);
    return 0;
}

NecAlgo parse_nec_algo(const std::string& s) {
    if (s == "brute") return NecAlgo::Brute;
    if (s == "subspace") return NecAlgo::Subspace;
    if (s == "auto") return NecAlgo::Auto;
    throw ValidationError("unknown algorithm '" + s + "' (expected brute, subspace or auto)");
}

// ---------------------------------------------------------------------------
// N_E^A

Int NecSizes::at(long c) const {
    if (c <= 0) return by_level.front();
    if (static_cast<std::size_t>(c) >= by_level.size()) return by_level.back();
    return by_level[static_cast<std::size_t>(c)];
}

std::vector<Elem> g4_set(const Field& F, const std::vector<Elem>& gens) {
    auto fourth = [&](ElemView a) {
        if (!is_square(F, a)) return false;
        Elem r = square_root(F, a);
        return is_square(F, r) || is_square(F, F.neg(r));
    };
    std::vector<Elem> out;
    for (const auto& g : gens) {
        if (fourth(g)) continue;
        bool dup = false;
        for (const auto& h : out)
            if (fourth(F.div(g, h))) dup = true;
        if (!dup) out.push_back(g);
    }
    return out;
}

NecAlgo resolve_nec_algo(const Field& F, std::size_t g4_size, NecAlgo requested) {
    NecAlgo a = requested;
    if (a == NecAlgo::Auto) a = static_cast<long>(g4_size) < F.degree() ? NecAlgo::Subspace : NecAlgo::Brute;
    if (a == NecAlgo::Brute && (F.degree() > 12 || F.q() > Int(1) << 32))
        throw GuardExceeded("brute-force N_E enumeration is limited to [F:Q2] <= 12");
    if (a == NecAlgo::Subspace && g4_size > 24) throw GuardExceeded("subspace N_E: more than 24 generators");
    return a;
}

NecSizes nec_sizes_trivial(const SquareClasses& SF) {
    const long e = SF.field().e();
    NecSizes N;
    N.e = e;
    N.total = Int(1) << SF.dim();
    for (long c = 0; c <= 2 * e + 1; ++c) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < SF.dim(); ++i)
            if (SF.basis().levels()[i] >= c) ++k;
        N.by_level.push_back(Int(1) << k);
    }
    return N;
}

NecSizes nec_sizes(const SquareClasses& SF, const OmegaChoice* omega, const std::vector<Elem>& gens, NecAlgo algo) {
    const Field& F = SF.field();
    const long e = F.e();
    std::vector<Elem> G4 = g4_set(F, gens);
    if (G4.empty()) return nec_sizes_trivial(SF);
    if (!omega) throw ValidationError("nec_sizes: omega required for nontrivial generators");
    algo = resolve_nec_algo(F, G4.size(), algo);

    // split G4 by membership in the norm group of E(sqrt omega)
    NormSolver EF(omega->E);
    SquareClasses SE(omega->E);
    std::vector<FpVec> in_rows, out_rows;
    for (const auto& a : G4) {
        FpVec h = SF.pair_row(SF.coords(a));
        if (galois_tower_norm(EF, SE, a, omega->omega))
            in_rows.push_back(std::move(h));
        else
            out_rows.push_back(std::move(h));
    }
    const std::size_t n = SF.dim();
    auto dot = [&](const FpVec& h, const FpVec& t) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < n; ++i) s ^= (h[i] & t[i]);
        return s;
    };

    NecSizes N;
    N.e = e;
    N.by_level.assign(static_cast<std::size_t>(2 * e + 2), Int(0));
    if (algo == NecAlgo::Brute) {
        for (std::size_t k = 0; k < SF.size(); ++k) {
            FpVec t = SF.class_at(k);
            bool ok = true;
            for (const auto& h : in_rows)
                if (dot(h, t) != 0) ok = false;
            for (const auto& h : out_rows)
                if (ok && dot(h, t) != 1) ok = false;
            if (!ok) continue;
            N.total += 1;
            long lv = SF.level(t);
            for (long c = 0; c <= std::min(lv, 2 * e + 1); ++c) N.by_level[static_cast<std::size_t>(c)] += 1;
        }
        return N;
    }

    // Subspace: intersect the level subspace with the kernels of the "in" functionals,
    // then count the points where every "out" functional is 1 by inclusion-exclusion.
    auto rows_matrix = [&](const std::vector<const FpVec*>& rows) {
        FpMatrix R(2, rows.size(), n);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) R(i, j) = (*rows[i])[j];
        return R;
    };
    std::vector<const FpVec*> in_ptrs;
    for (const auto& h : in_rows) in_ptrs.push_back(&h);
    FpMatrix Kin = in_ptrs.empty() ? FpMatrix::identity(2, n) : kernel(rows_matrix(in_ptrs));

    auto count_in = [&](const FpMatrix& V) {
        FpMatrix I = colspan_intersect(V, Kin);
        const std::size_t k = rank(I);
        I = column_basis(I);
        Int total = 0;
        const std::size_t no = out_rows.size();
        for (std::size_t S = 0; S < (std::size_t{1} << no); ++S) {
            std::vector<const FpVec*> rows;
            for (std::size_t j = 0; j < no; ++j)
                if ((S >> j) & 1U) rows.push_back(&out_rows[j]);
            std::size_t r = rows.empty() || k == 0 ? 0 : rank(rows_matrix(rows) * I);
            Int term = Int(1) << (k - r);
            if (rows.size() % 2) total -= term;
            else total += term;
        }
        return total;
    };
    N.total = count_in(FpMatrix::identity(2, n));
    for (long c = 0; c <= 2 * e + 1; ++c) {
        FpMatrix V = SF.basis().level_subspace(c);
        // with no basis vector left only the trivial class remains
        N.by_level[static_cast<std::size_t>(c)] = V.cols() == 0 ? Int(out_rows.empty() ? 1 : 0) : count_in(V);
    }
    return N;
}

Int counts_12E_C4(long e, long m1, const NecSizes& N, long m2) {
    Rat r = 0;
    if (m1 > e) {
        if (m2 == m1 + 2 * e) r = Rat(N.total) / 2;
        return to_int(r, "counts_12E_C4");
    }
    auto c = [&](long x) { return 2 * e - 2 * floordiv(m1 + x, 4); };
    if (m2 == 3 * m1 - 2)
        r = Rat(N.at(c(m2))) / 2;
    else if (m2 % 2 == 0 && m2 >= 3 * m1 && m2 <= 4 * e - m1 + 1)
        r = Rat(N.at(c(m2)) - N.at(c(m2 - 2))) / 2;
    else if (m2 == 4 * e - m1 + 2)
        r = Rat(N.total - N.at(c(m2 - 2))) / 2;
    return to_int(r, "counts_12E_C4");
}

// ---------------------------------------------------------------------------
// Tame and common parts

MassReport premass4_common(const Int& q, bool vals_div2, bool vals_div4) {
    MassReport rep;
    for (const auto& s : all_symbols(4))
        if (s.epimorphic()) rep.add(s.to_string(), "all", symbol_premass(s, q));
    rep.add("(4)", "C4", vals_div4 ? Rat(1, 4) : Rat(0));
    rep.add("(22)", "C2", vals_div2 ? Rat(1, 8) : Rat(0));
    return rep;
}

MassReport premass4_tame(const Int& q, const TameStrata& s2, const TameStrata& s4) {
    if (q % 2 == 0) throw ValidationError("premass4_tame: the (1^21^2), (2^2), (1^4) branches need odd residue characteristic");
    MassReport rep;
    const Rat q2 = qpow(q, -2), q3 = qpow(q, -3);
    Rat v;
    if (s2.subgroup_trivial) v = q2 / 2;
    else if (s2.size(0) == 0 && s2.size(1) == 1) v = Rat(3) * q2 / 8;
    else v = q2 / 4;
    rep.add("(1^21^2)", "all", v);

    auto sq = [&](const TameClass& c) { return s4.is_square(c); };
    const bool a0_sq = std::all_of(s4.A[0].begin(), s4.A[0].end(), sq);
    bool a2_ratios = true;
    for (const auto& x : s4.A[2])
        for (const auto& y : s4.A[2])
            if (!sq(TameClass{x.v - y.v, posmod(x.k - y.k, std::max(s4.g, 1L))})) a2_ratios = false;
    if (a0_sq && s4.A[1].empty() && s4.A[2].empty()) v = q2 / 2;
    else if (a0_sq && s4.A[1].empty() && a2_ratios) v = q2 / 4;
    else v = 0;
    rep.add("(2^2)", "all", v);

    if (mpz_fdiv_ui(q.get_mpz_t(), 4) == 1) {
        if (s4.subgroup_trivial) v = q3;
        else if (s4.A[0].empty() && s4.A[1].empty() && s4.A[2].size() == 1 && sq(s4.A[2][0])) v = q3 / 2;
        else if (s4.A[0].empty() && s4.A[2].empty() && s4.A[1].size() == 1) v = q3 / 4;
        else v = 0;
    } else {
        if (s4.subgroup_in_squares) v = q3;
        else if (s4.A[0].empty() && s4.A[2].empty() && s4.A[1].size() == 1) v = q3 / 2;
        else v = 0;
    }
    rep.add("(1^4)", "all", v);
    return rep;
}

namespace {

void val_flags(const Field& F, const std::vector<Elem>& gens, bool& div2, bool& div4) {
    div2 = div4 = true;
    for (const auto& g : gens) {
        long v = F.valuation(g);
        if (v == kInfVal) throw ValidationError("generator is zero");
        if (posmod(v, 2)) div2 = false;
        if (posmod(v, 4)) div4 = false;
    }
}

}  // namespace

MassReport premass4_tame(const Field& F, const std::vector<Elem>& gens) {
    if (F.p() == 2) throw ValidationError("premass4_tame: residue characteristic 2 needs the 2-adic route");
    bool d2, d4;
    val_flags(F, gens, d2, d4);
    MassReport rep = premass4_common(F.q(), d2, d4);
    merge(rep, premass4_tame(F.q(), tame_strata(F, gens, 2), tame_strata(F, gens, 4)));
    rep.premass.canonicalize();
    return rep;
}

// ---------------------------------------------------------------------------
// 2-adic

namespace {

struct WildCtx {
    FieldPtr F;
    const SquareClasses& SF;
    Int q;
    long e;
};

// #Et_{(1^4), m}^{V4, A} from the profile of A mod squares.
Int v4_14_count(const WildCtx& W, const FiltrationProfile& pr, const std::vector<Int>& cnt, long m) {
    const Int& q = W.q;
    if (m % 2 != 0) return 0;
    Rat r = 0;
    for (long m1 = 1; m1 < static_cast<long>(cnt.size()); ++m1) {
        if ((m - m1) % 2 != 0) continue;
        long m2 = (m - m1) / 2;
        if (m1 >= m2 || m2 >= static_cast<long>(cnt.size())) continue;
        r += Rat(cnt[m1] * cnt[m2]) / 2;
    }
    if (m % 3 == 0) {
        long t = m / 3;
        Int g = pr.group_order;
        Rat b = Rat(2) / (Rat(3) * Rat(g * g)) * Rat(qp(q, t - 2)) * Rat(q * pr.size_at(t) - pr.size_at(t - 1)) *
                Rat(q * pr.size_at(t) - 2 * pr.size_at(t - 1));
        if (t >= 2) r += b;
    }
    return to_int(r, "V4 (1^4) count");
}

}  // namespace

QuarticReport premass4_wild(FieldPtr Fp, const std::vector<Elem>& gens, NecAlgo algo) {
    const Field& F = *Fp;
    if (F.p() != 2) throw ValidationError("premass4_wild: residue characteristic must be 2");
    SquareClasses SF(Fp);
    WildCtx W{Fp, SF, F.q(), F.e()};
    const Int& q = W.q;
    const long e = W.e;
    QuarticReport out;
    MassReport& rep = out.report;
    bool d2, d4;
    val_flags(F, gens, d2, d4);
    merge(rep, premass4_common(q, d2, d4));

    FiltrationProfile pr = filtration_profile(SF.basis(), gens);
    FiltrationProfile pr0 = filtration_profile(SF.basis(), {});
    const long mmax = 2 * e + 1;
    std::vector<Int> cntA(static_cast<std::size_t>(mmax + 1), 0), cnt0 = cntA;
    for (long m1 = 1; m1 <= mmax; ++m1) {
        cntA[m1] = count_Cp(F, m1, &pr);
        cnt0[m1] = count_Cp(F, m1);
    }
    auto emit = [&](const char* sym, const char* grp, long m, const Int& c) {
        if (c != 0) out.counts.push_back({sym, grp, m, c});
    };

    // (1^21^2)
    {
        Rat same = 0, diff = 0;
        for (long m1 = 1; m1 <= mmax; ++m1) {
            emit("(1^21^2)", "C2", 2 * m1, cntA[m1]);
            same += Rat(cntA[m1]) * qpow(q, -2 * m1) / 8;
        }
        for (long m = 4; m <= 4 * e + 2; ++m) {
            Int c = quartic_Nneq(q, e, m);
            emit("(1^21^2)", "V4", m, c);
            diff += Rat(c) * qpow(q, -m) / 4;
        }
        rep.add("(1^21^2)", "C2", same);
        rep.add("(1^21^2)", "V4", diff);
    }

    // (2^2)
    {
        Rat d4m = 0, v4m = 0, c4m = 0;
        if (d2) {
            for (long m = 4; m <= 4 * e + 2; ++m) {
                Int c = 0;
                if (m % 4 == 0 && m <= 4 * e) c = (q - 1) * ((q + 1) * qp(q, m / 2 - 2) - qp(q, m / 4 - 1));
                if (m == 4 * e + 2) c = qp(q, e) * (qp(q, e) - 1);
                emit("(2^2)", "D4", m, c);
            }
            d4m = (qpow(q, -2) - qpow(q, -2 * e - 2) - Rat(1) / Rat(q * q + q + 1) * (qpow(q, -1) - qpow(q, -3 * e - 1)) +
                   qpow(q, -3 * e - 2) * Rat(qp(q, e) - 1)) /
                  2;
            for (long m1 = 1; m1 <= mmax; ++m1) emit("(2^2)", "V4", 2 * m1, to_int(Rat(cntA[m1]) / 2, "V4 (2^2) count"));
            {
                Rat s = pr.size_at(2 * e) == 1 ? qpow(q, -3 * e - 2) : Rat(0);
                for (long c = 1; c <= e; ++c)
                    s += qpow(q, -3 * c - 1) * Rat(q * pr.size_at(2 * c) - pr.size_at(2 * c - 1));
                v4m = s / (Rat(4) * Rat(pr.group_order));
            }
            // C4 through the unramified quadratic
            std::size_t top = 0;
            for (std::size_t i = 0; i < SF.dim(); ++i)
                if (SF.basis().levels()[i] == 2 * e) top = i;
            FpVec uv(SF.dim(), 0);
            uv[top] = 1;
            Elem dur = SF.element(uv);
            std::vector<Elem> G4 = g4_set(F, gens);
            std::optional<OmegaChoice> ch;
            if (!G4.empty()) ch = choose_omega(SF, dur);
            NecSizes N = nec_sizes(SF, ch ? &*ch : nullptr, gens, algo);
            for (long c = 1; c <= e; ++c) {
                Int cnt = to_int(Rat(N.at(2 * e - 2 * c) - N.at(2 * e - 2 * c + 2)) / 2, "C4 (2^2) count");
                emit("(2^2)", "C4", 4 * c, cnt);
                c4m += Rat(cnt) * qpow(q, -4 * c) / 4;
            }
            Int top_cnt = to_int(Rat(N.total - N.at(0)) / 2, "C4 (2^2) count");
            emit("(2^2)", "C4", 4 * e + 2, top_cnt);
            c4m += Rat(top_cnt) * qpow(q, -4 * e - 2) / 4;
        }
        rep.add("(2^2)", "D4", d4m);
        rep.add("(2^2)", "V4", v4m);
        rep.add("(2^2)", "C4", c4m);
    }

    // (1^4)
    {
        // ramified quadratics: in Et^A, and C4-extendable
        std::vector<Int> extA(static_cast<std::size_t>(mmax + 1), 0), ext0 = extA;
        struct RamE {
            Elem d;
            long m1;
        };
        std::vector<RamE> ext_in_A;
        std::vector<FpVec> gen_coords;
        for (const auto& g : gens) gen_coords.push_back(SF.coords(g));
        const Elem minus_one = F.from_int(Int(-1));
        const FpVec mo = SF.coords(minus_one);
        for (std::size_t k = 1; k < SF.size(); ++k) {
            FpVec v = SF.class_at(k);
            long m1 = SF.disc_val(v);
            if (m1 == 0) continue;
            if (SF.hilbert(mo, v) != 1) continue;
            ext0[m1] += 1;
            bool inA = std::all_of(gen_coords.begin(), gen_coords.end(), [&](const FpVec& a) { return SF.hilbert(a, v) == 1; });
            if (!inA) continue;
            extA[m1] += 1;
            ext_in_A.push_back({SF.element(v), m1});
        }
        std::vector<Elem> G4 = g4_set(F, gens);
        std::vector<NecSizes> sizes;
        for (const auto& E : ext_in_A) {
            if (G4.empty()) {
                sizes.push_back(nec_sizes_trivial(SF));
                continue;
            }
            auto ch = choose_omega(SF, E.d);
            sizes.push_back(nec_sizes(SF, &*ch, gens, algo));
        }

        Rat D[2] = {0, 0}, V[2] = {0, 0}, C[2] = {0, 0};  // [0] unconstrained, [1] constrained
        const long mtop = 8 * e + 3;
        for (long m = 1; m <= mtop; ++m) {
            for (int k = 0; k < 2; ++k) {
                const std::vector<Int>& cnt = k ? cntA : cnt0;
                const std::vector<Int>& ext = k ? extA : ext0;
                Rat dd = 0;
                Int cc = 0;
                for (long m1 = 1; m1 <= mmax; ++m1) {
                    long m2 = m - 2 * m1;
                    if (m2 <= 0) continue;
                    dd += Rat(cnt[m1] * (quartic_NC2(q, e, m2) - quartic_NV4(q, e, m1, m2)) -
                              ext[m1] * quartic_NC4(q, e, m1, m2)) /
                          2;
                    if (!k) cc += ext[m1] * quartic_NC4(q, e, m1, m2);
                }
                if (k) {
                    for (std::size_t i = 0; i < ext_in_A.size(); ++i) {
                        long m2 = m - 2 * ext_in_A[i].m1;
                        if (m2 > 0) cc += counts_12E_C4(e, ext_in_A[i].m1, sizes[i], m2);
                    }
                }
                Int dc = to_int(dd, "D4 (1^4) count");
                Int vc = v4_14_count(W, k ? pr : pr0, cnt, m);
                D[k] += Rat(dc) * qpow(q, -m) / 2;
                V[k] += Rat(vc) * qpow(q, -m) / 4;
                C[k] += Rat(cc) * qpow(q, -m) / 4;
                if (k) {
                    emit("(1^4)", "D4", m, dc);
                    emit("(1^4)", "V4", m, vc);
                    emit("(1^4)", "C4", m, cc);
                }
            }
        }
        Rat rest = qpow(q, -3) - D[0] - V[0] - C[0];
        rep.add("(1^4)", "C4", C[1]);
        rep.add("(1^4)", "V4", V[1]);
        rep.add("(1^4)", "D4", D[1]);
        rep.add("(1^4)", "A4S4", rest);
    }
    rep.premass.canonicalize();
    return out;
}

MassReport premass4(FieldPtr F, const std::vector<Elem>& gens, NecAlgo algo) {
    if (F->p() == 2) return premass4_wild(std::move(F), gens, algo).report;
    return premass4_tame(*F, gens);
}

}  // namespace lmass
