#include "lmass/symbols.hpp"

#include "lmass/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lmass {

SplittingSymbol::SplittingSymbol(std::vector<SymbolPart> p) : parts(std::move(p)) {
    for (const auto& x : parts)
        if (x.e < 1 || x.f < 1) throw ValidationError("symbol parts need e, f >= 1");
    std::sort(parts.begin(), parts.end(), [](const SymbolPart& a, const SymbolPart& b) {
        return a.e != b.e ? a.e > b.e : a.f < b.f;
    });
}

long SplittingSymbol::degree() const {
    long n = 0;
    for (const auto& x : parts) n += x.e * x.f;
    return n;
}

long SplittingSymbol::d_sigma() const {
    long d = 0;
    for (const auto& x : parts) d += x.f * (x.e - 1);
    return d;
}

Int SplittingSymbol::aut() const {
    Int r = 1;
    for (const auto& x : parts) r *= x.f;
    std::size_t i = 0;
    while (i < parts.size()) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        for (std::size_t k = 2; k <= j - i; ++k) r *= static_cast<unsigned long>(k);
        i = j;
    }
    return r;
}

bool SplittingSymbol::predictable() const {
    long g = 0;
    for (const auto& x : parts) g = std::gcd(g, x.e);
    return g == 1;
}

bool SplittingSymbol::epimorphic() const {
    if (!predictable()) return false;
    long g = 0;
    for (const auto& x : parts) g = std::gcd(g, x.f);
    return g == 1;
}

std::string SplittingSymbol::to_string() const {
    std::string s = "(";
    for (const auto& x : parts) {
        s += std::to_string(x.f);
        if (x.e != 1) s += "^" + std::to_string(x.e);
    }
    return s + ")";
}

SplittingSymbol SplittingSymbol::parse(std::string_view s) {
    auto bad = [&] { throw ValidationError("invalid splitting symbol '" + std::string(s) + "'"); };
    if (s.size() < 3 || s.front() != '(' || s.back() != ')') bad();
    std::vector<SymbolPart> parts;
    std::size_t i = 1;
    while (i + 1 < s.size()) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '0') bad();
        SymbolPart x;
        x.f = s[i++] - '0';
        if (s[i] == '^') {
            ++i;
            if (i + 1 >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '0') bad();
            x.e = s[i++] - '0';
        }
        parts.push_back(x);
    }
    if (parts.empty()) bad();
    return SplittingSymbol(std::move(parts));
}

std::vector<SplittingSymbol> all_symbols(long n) {
    // multisets of (e, f) with sum e*f = n, generated in non-increasing order of (e*f, e)
    std::vector<SymbolPart> kinds;
    for (long e = 1; e <= n; ++e)
        for (long f = 1; e * f <= n; ++f) kinds.push_back({e, f});
    std::vector<SplittingSymbol> out;
    std::vector<SymbolPart> cur;
    auto rec = [&](auto&& self, std::size_t from, long left) -> void {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (std::size_t k = from; k < kinds.size(); ++k) {
            long w = kinds[k].e * kinds[k].f;
            if (w > left) continue;
            cur.push_back(kinds[k]);
            self(self, k, left - w);
            cur.pop_back();
        }
    };
    rec(rec, 0, n);
    std::sort(out.begin(), out.end(), [](const SplittingSymbol& a, const SplittingSymbol& b) {
        if (a.d_sigma() != b.d_sigma()) return a.d_sigma() < b.d_sigma();
        return a.to_string() < b.to_string();
    });
    return out;
}

Int partition_count(long d, long m) {
    if (d < 0 || m < 0) return 0;
    // table[j] = partitions of j into parts of size at most m (conjugate count)
    std::vector<Int> t(static_cast<std::size_t>(d) + 1, 0);
    t[0] = 1;
    for (long k = 1; k <= m; ++k)
        for (long j = k; j <= d; ++j) t[j] += t[j - k];
    return t[d];
}

Rat symbol_premass(const SplittingSymbol& s, const Int& q) {
    Rat r = qpow(q, -s.d_sigma()) / Rat(s.aut());
    r.canonicalize();
    return r;
}

Rat disc_layer_premass(long n, long d, const Int& q) {
    Rat r = Rat(partition_count(d, n - d)) * qpow(q, -d);
    r.canonicalize();
    return r;
}

Rat full_premass(long n, const Int& q) {
    Rat r = 0;
    for (long d = 0; d < n; ++d) r += disc_layer_premass(n, d, q);
    return r;
}

long norm_group_pred(const SplittingSymbol& s) {
    if (!s.predictable()) throw ValidationError("symbol " + s.to_string() + " is not predictable");
    long g = 0;
    for (const auto& x : s.parts) g = std::gcd(g, x.f);
    return g;
}

}  // namespace lmass
