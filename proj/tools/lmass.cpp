#include "checks.hpp"

#include "lmass/density.hpp"
#include "lmass/element_parser.hpp"
#include "lmass/errors.hpp"
#include "lmass/mass_prime.hpp"
#include "lmass/mass_quartic.hpp"
#include "lmass/symbols.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <numeric>

using json = nlohmann::ordered_json;
using namespace lmass;

namespace {

json int_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

json rat_json(const Rat& r) { return json{{"num", int_json(r.get_num())}, {"den", int_json(r.get_den())}}; }

struct FieldArgs {
    long p = 2, e = 1, f = 1, prec = 0;
    std::string gens;
};

void add_field_options(CLI::App* cmd, FieldArgs& a) {
    cmd->add_option("--p", a.p, "residue characteristic")->required();
    cmd->add_option("--e", a.e, "ramification index over Q_p");
    cmd->add_option("--f", a.f, "inertia degree over Q_p");
    cmd->add_option("--prec", a.prec, "absolute precision (0 = default)");
    cmd->add_option("--gens", a.gens, "comma-separated elements in pi and u");
}

struct Row {
    std::string symbol, group;
    long disc_val;
    std::string count;
};

// Rows of (symbol, group, v(disc), count). Enumerated families give integer counts;
// the remaining parts give their weighted count value * q^d.
std::vector<Row> count_rows(FieldPtr F, long n, const std::vector<Elem>& gens, const MassReport& rep,
                            const QuarticReport* quartic) {
    std::vector<Row> rows;
    const Int& q = F->q();
    const long p = F->p();
    std::vector<std::string> covered;
    if (quartic) {
        for (const auto& c : quartic->counts)
            if (c.count != 0) rows.push_back({c.symbol, c.group, c.m, c.count.get_str()});
        covered = {"(1^21^2)", "(2^2)", "(1^4)"};
    } else if (n == p) {
        const std::string sym = "(1^" + std::to_string(p) + ")";
        FiltrationProfile pr = filtration_profile(*F, gens, p);
        for (long c = 1; c <= top_ceil(*F) + 1; ++c) {
            Int k = count_Cp(*F, (p - 1) * c, &pr);
            if (k != 0) rows.push_back({sym, "C" + std::to_string(p), (p - 1) * c, k.get_str()});
        }
        // the non-cyclic part has no per-discriminant split; it stays in the JSON breakdown
        covered = {sym};
    } else if (n % p != 0 && is_prime(n)) {
        const std::string sym = "(1^" + std::to_string(n) + ")";
        long g = static_cast<long>(mpz_gcd_ui(nullptr, Int(q - 1).get_mpz_t(), static_cast<unsigned long>(n)));
        for (const auto& part : rep.breakdown)
            if (part.symbol == sym && part.value != 0) {
                Rat k = part.value * qpow(q, n - 1) * g;
                rows.push_back({sym, part.group, n - 1, k.get_str()});
            }
        covered = {sym};
    }
    for (const auto& part : rep.breakdown) {
        if (std::find(covered.begin(), covered.end(), part.symbol) != covered.end() || part.value == 0) continue;
        long d = SplittingSymbol::parse(part.symbol).d_sigma();
        Rat w = part.value * qpow(q, d);
        rows.push_back({part.symbol, part.group, d, w.get_str()});
    }
    return rows;
}

void print_csv(const std::vector<Row>& rows) {
    std::cout << "symbol,group,disc_val,count\n";
    for (const auto& r : rows) std::cout << r.symbol << "," << r.group << "," << r.disc_val << "," << r.count << "\n";
}

struct Computed {
    FieldPtr F;
    std::vector<Elem> gens;
    MassReport rep;
    std::optional<QuarticReport> quartic;
};

Computed compute(const FieldArgs& a, long n, NecAlgo algo) {
    if (!is_prime(a.p)) throw ValidationError("--p must be prime");
    if (a.e < 1 || a.f < 1) throw ValidationError("--e and --f must be positive");
    long prec = a.prec;
    if (prec == 0 && n == 4 && a.p == 2) prec = 3 * min_precision(2, a.e);
    auto B = make_field(a.p, a.e, a.f, prec);
    Computed c;
    c.F = B;
    for (const auto& s : split_list(a.gens)) c.gens.push_back(parse_element(*B, s));
    if (n == 4) {
        if (a.p == 2) {
            c.quartic = premass4_wild(B, c.gens, algo);
            c.rep = c.quartic->report;
        } else {
            c.rep = premass4_tame(*B, c.gens);
        }
    } else if (n >= 2 && is_prime(n)) {
        c.rep = premass_ell_total(*B, n, c.gens);
    } else {
        throw ValidationError("--n must be a prime or 4");
    }
    return c;
}

int run_mass(const FieldArgs& a, long n, const std::string& symbol, const std::string& algo, const std::string& fmt) {
    Computed c = compute(a, n, parse_nec_algo(algo));
    MassReport rep = c.rep;
    if (!symbol.empty()) {
        std::string s = SplittingSymbol::parse(symbol).to_string();
        if (SplittingSymbol::parse(symbol).degree() != n) throw ValidationError("--symbol has the wrong degree");
        MassReport only;
        for (const auto& part : rep.breakdown)
            if (part.symbol == s) only.add(part.symbol, part.group, part.value);
        only.premass.canonicalize();
        rep = only;
    }
    if (fmt == "csv") {
        auto rows = count_rows(c.F, n, c.gens, rep, c.quartic ? &*c.quartic : nullptr);
        if (!symbol.empty()) {
            std::string s = SplittingSymbol::parse(symbol).to_string();
            std::erase_if(rows, [&](const Row& r) { return r.symbol != s; });
        }
        print_csv(rows);
        return 0;
    }
    json out;
    out["premass"] = rat_json(rep.premass);
    out["mass"] = rat_json(rep.mass(c.F->q()));
    json br = json::array();
    for (const auto& part : rep.breakdown)
        br.push_back({{"symbol", part.symbol}, {"group", part.group}, {"value", part.value.get_str()}});
    out["breakdown"] = br;
    out["field"] = {{"p", a.p}, {"e", a.e}, {"f", a.f}, {"q", int_json(c.F->q())}};
    out["n"] = n;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_tables(const FieldArgs& a, long n, const std::string& group) {
    Computed c = compute(a, n, NecAlgo::Auto);
    auto rows = count_rows(c.F, n, c.gens, c.rep, c.quartic ? &*c.quartic : nullptr);
    if (!group.empty()) {
        std::string g = group == "Cp" ? "C" + std::to_string(a.p) : group;
        std::erase_if(rows, [&](const Row& r) { return r.group != g; });
    }
    print_csv(rows);
    return 0;
}

int run_density(long n, const std::string& gens_text, long B, int digits) {
    GlobalSpec spec;
    spec.n = n;
    spec.prime_bound = B;
    for (const auto& s : split_list(gens_text)) spec.gens.push_back(parse_rational(s));
    DensityInterval D = euler_density(spec);
    auto interval = [&](const Rat& lo, const Rat& hi) {
        return json{{"lo", decimal_string(lo, digits, false)}, {"hi", decimal_string(hi, digits, true)}};
    };
    json out;
    out["coefficient"] = interval(D.coeff_lo, D.coeff_hi);
    out["proportion"] = interval(D.prop_lo, D.prop_hi);
    out["archimedean"] = rat_json(D.arch);
    out["n"] = n;
    out["prime_bound"] = B;
    out["tail_constant"] = tail_constant(n);
    json pp = json::array();
    for (const auto& f : D.per_prime) pp.push_back({{"p", f.p}, {"mass", rat_json(f.mass)}, {"full", rat_json(f.full)}});
    out["per_prime"] = pp;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Masses of p-adic etale algebras with prescribed norms, and the resulting densities"};
    app.require_subcommand(1);

    FieldArgs fa;
    long n = 2;
    std::string symbol, algo = "auto", fmt = "json", group, suite = "all";
    long B = 10000, max_size = 2;
    int digits = 10;

    auto* mass = app.add_subcommand("mass", "pre-mass and mass with the given norms");
    add_field_options(mass, fa);
    mass->add_option("--n", n, "degree")->required();
    mass->add_option("--symbol", symbol, "restrict to one splitting symbol, e.g. (1^21^2)");
    mass->add_option("--algo", algo, "N_E computation for 2-adic quartics")
        ->check(CLI::IsMember({"brute", "subspace", "auto"}));
    mass->add_option("--format", fmt)->check(CLI::IsMember({"json", "csv"}));

    std::string dgens;
    auto* dens = app.add_subcommand("density", "Euler-product density over Q");
    dens->add_option("--n", n, "degree (3, 4 or 5)")->required();
    dens->add_option("--gens", dgens, "comma-separated rationals");
    dens->add_option("--prime-bound", B, "largest prime in the finite product");
    dens->add_option("--digits", digits, "decimals in the printed bounds")->check(CLI::Range(0, 200));
    dens->add_option("--format", fmt)->check(CLI::IsMember({"json"}));

    auto* tables = app.add_subcommand("tables", "counts by symbol, group and discriminant");
    add_field_options(tables, fa);
    tables->add_option("--n", n, "degree")->required();
    tables->add_option("--group", group)->check(CLI::IsMember({"C4", "V4", "D4", "C2", "Cp"}));
    tables->add_option("--format", fmt)->check(CLI::IsMember({"csv"}));

    auto* check = app.add_subcommand("check", "formula versus enumeration checks");
    check->add_option("--suite", suite)->check(CLI::IsMember({"serre", "identity", "oracle", "quartic", "all"}));
    check->add_option("--max-size", max_size, "largest [F:Q_p] used");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*mass) return run_mass(fa, n, symbol, algo, fmt);
        if (*dens) return run_density(n, dgens, B, digits);
        if (*tables) return run_tables(fa, n, group);
        if (*check) return tools::run_checks(std::cout, suite, max_size) == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
