#include "lmass/element_parser.hpp"

#include "lmass/errors.hpp"

#include <cctype>
#include <optional>

namespace lmass {

namespace {

// Recursive-descent evaluator over any value type V with the ring operations in Ops.
template <class Ops>
class Parser {
public:
    using V = typename Ops::Value;
    Parser(const Ops& ops, std::string_view s) : ops_(ops), s_(s) {}

    V run() {
        V v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError("element '" + std::string(s_) + "': " + msg + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::optional<Int> integer() {
        skip();
        std::size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (st == pos_) return std::nullopt;
        return Int(std::string(s_.substr(st, pos_ - st)));
    }

    V expr() {
        V v = term();
        for (;;) {
            if (eat('+')) v = ops_.add(v, term());
            else if (eat('-')) v = ops_.sub(v, term());
            else return v;
        }
    }
    V term() {
        V v = unary();
        for (;;) {
            if (eat('*')) v = ops_.mul(v, unary());
            else if (eat('/')) {
                V d = unary();
                if (ops_.is_zero(d)) fail("division by zero");
                v = ops_.div(v, d);
            } else return v;
        }
    }
    V unary() {
        if (eat('-')) return ops_.neg(unary());
        if (eat('+')) return unary();
        return power();
    }
    V power() {
        V b = atom();
        if (!eat('^')) return b;
        bool neg = eat('-');
        auto k = integer();
        if (!k) fail("expected integer exponent");
        if (!k->fits_slong_p() || abs(*k) > 100000) fail("exponent too large");
        long e = k->get_si();
        if (neg) {
            if (ops_.is_zero(b)) fail("zero to a negative power");
            e = -e;
        }
        return ops_.pow(b, e);
    }
    V atom() {
        skip();
        if (eat('(')) {
            V v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (auto k = integer()) return ops_.from_int(*k);
        if (s_.substr(pos_, 2) == "pi") {
            pos_ += 2;
            return ops_.symbol("pi", [&](const std::string& m) { fail(m); });
        }
        if (s_.substr(pos_, 1) == "u") {
            pos_ += 1;
            return ops_.symbol("u", [&](const std::string& m) { fail(m); });
        }
        fail("expected integer, pi, u or '('");
    }

    const Ops& ops_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

struct RatOps {
    using Value = Rat;
    Rat add(const Rat& a, const Rat& b) const { return a + b; }
    Rat sub(const Rat& a, const Rat& b) const { return a - b; }
    Rat mul(const Rat& a, const Rat& b) const { return a * b; }
    Rat div(const Rat& a, const Rat& b) const { return a / b; }
    Rat neg(const Rat& a) const { return -a; }
    bool is_zero(const Rat& a) const { return a == 0; }
    Rat from_int(const Int& n) const { return Rat(n); }
    Rat pow(const Rat& a, long k) const {
        Rat r(ipow(a.get_num(), static_cast<unsigned long>(std::labs(k))), ipow(a.get_den(), static_cast<unsigned long>(std::labs(k))));
        r.canonicalize();
        return k < 0 ? Rat(1) / r : r;
    }
    template <class Fail>
    Rat symbol(const std::string& name, Fail fail) const {
        fail("symbol '" + name + "' is not allowed in a rational");
        return Rat(0);
    }
};

struct ElemOps {
    using Value = Elem;
    const BaseField& F;
    Elem add(const Elem& a, const Elem& b) const { return F.add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return F.sub(a, b); }
    Elem mul(const Elem& a, const Elem& b) const { return F.mul(a, b); }
    Elem div(const Elem& a, const Elem& b) const { return F.div(a, b); }
    Elem neg(const Elem& a) const { return F.neg(a); }
    bool is_zero(const Elem& a) const { return F.is_exact_zero(a); }
    Elem from_int(const Int& n) const { return F.from_int(n); }
    Elem pow(const Elem& a, long k) const { return F.pow(a, k); }
    template <class Fail>
    Elem symbol(const std::string& name, Fail) const {
        if (name == "pi") return F.uniformizer();
        return F.unram_generator();
    }
};

}  // namespace

Elem parse_element(const BaseField& F, std::string_view text) {
    ElemOps ops{F};
    Elem v = Parser<ElemOps>(ops, text).run();
    if (F.is_exact_zero(v)) throw ValidationError("element '" + std::string(text) + "' is zero");
    if (!F.val_info(v).exact) throw ValidationError("element '" + std::string(text) + "' vanishes at working precision");
    return v;
}

Rat parse_rational(std::string_view text) {
    RatOps ops;
    Rat r = Parser<RatOps>(ops, text).run();
    if (r == 0) throw ValidationError("rational '" + std::string(text) + "' is zero");
    return r;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t st = 0;
    while (st <= text.size()) {
        std::size_t e = text.find(',', st);
        if (e == std::string_view::npos) e = text.size();
        std::string item(text.substr(st, e - st));
        auto b = item.find_first_not_of(" \t");
        auto en = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, en - b + 1));
        st = e + 1;
    }
    return out;
}

}  // namespace lmass
