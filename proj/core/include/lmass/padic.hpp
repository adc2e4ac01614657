#pragma once

#include "lmass/errors.hpp"
#include "lmass/rational.hpp"
#include "lmass/residue_field.hpp"

#include <climits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lmass {

inline constexpr long kInfVal = LONG_MAX / 4;

// Smallest working precision (in valuation units) for which every membership
// test used by the library is decided: floor(pe/(p-1)) + 2e + 8.
long min_precision(long p, long e);

bool is_prime(long n);

// One coefficient block over the absolutely presented base field F:
//   x = pi^shift * sum_{i<e, j<f} a[i*f+j] u^j pi^i,
// with the coefficient part a unit known modulo pi^rprec. Zero is exact zero;
// Indet means "zero modulo pi^shift" with nothing known beyond that.
struct BaseElem {
    enum class Kind : unsigned char { Zero, Indet, Unit };
    Kind kind = Kind::Zero;
    long shift = 0;
    long rprec = 0;
    std::vector<Int> a;

    bool operator==(const BaseElem&) const = default;
};

// An element of any field in a tower over the base: 2^depth base blocks.
// For F(theta) the first half holds x and the second y in x + y*theta.
using Elem = std::vector<BaseElem>;
using ElemView = std::span<const BaseElem>;

class BaseField;

class Field : public std::enable_shared_from_this<Field> {
public:
    virtual ~Field() = default;

    long p() const { return p_; }
    long e() const { return e_; }
    long f() const { return f_; }
    const Int& q() const { return q_; }
    long degree() const { return e_ * f_; }  // over Q_p
    std::size_t width() const { return width_; }

    virtual const BaseField& base() const = 0;
    virtual const Field* parent() const { return nullptr; }

    // Construction of elements.
    virtual Elem zero() const;
    Elem one() const { return from_int(Int(1)); }
    virtual Elem from_int(const Int& n) const;
    Elem from_rat(const Rat& r) const;
    const Elem& uniformizer() const { return pi_; }
    const Elem& uniformizer_inv() const { return pi_inv_; }

    // Ring operations.
    virtual Elem add(ElemView a, ElemView b) const = 0;
    virtual Elem neg(ElemView a) const = 0;
    virtual Elem mul(ElemView a, ElemView b) const = 0;
    virtual Elem inv(ElemView a) const = 0;
    Elem sub(ElemView a, ElemView b) const { return add(a, neg(b)); }
    Elem div(ElemView a, ElemView b) const { return mul(a, inv(b)); }
    Elem pow(ElemView a, long k) const;
    Elem mul_int(ElemView a, const Int& n) const { return mul(a, from_int(n)); }
    // a * pi^k for any integer k.
    virtual Elem shift(ElemView a, long k) const;

    // Valuation in this field's normalisation (v(pi) = 1).
    struct ValInfo {
        long v;      // exact valuation, or a lower bound when !exact
        bool exact;  // exact zero has v == kInfVal and exact == true
    };
    virtual ValInfo val_info(ElemView a) const = 0;
    // Throws PrecisionError when undetermined. Exact zero gives kInfVal.
    long valuation(ElemView a) const;
    // a lies in p^k (true for exact zero); throws if undecidable.
    bool is_zero_mod(ElemView a, long k) const;
    bool is_exact_zero(ElemView a) const;
    // Absolute precision: a is known modulo p^abs_prec.
    virtual long abs_prec(ElemView a) const = 0;

    // Residue field of O / p. residue() requires an integral argument.
    const ResidueField& residue_field() const { return rf_; }
    virtual RVec residue(ElemView a) const = 0;
    virtual Elem lift(const RVec& r) const = 0;
    // Lifts of the residue basis B_0.
    const std::vector<Elem>& residue_basis() const { return rbasis_; }

    // Unit part a / pi^v(a).
    Elem unit_part(ElemView a) const;

    virtual std::string to_string(ElemView a) const = 0;
    virtual std::string describe() const = 0;

protected:
    void init_common();

    long p_ = 0, e_ = 1, f_ = 1;
    Int q_;
    std::size_t width_ = 1;
    Elem pi_, pi_inv_;
    ResidueField rf_;
    std::vector<Elem> rbasis_;
};

using FieldPtr = std::shared_ptr<const Field>;

struct LocalFieldDesc {
    long p = 2, e = 1, f = 1;
    std::vector<Int> unram_poly;  // monic, low degree first, length f+1
    std::vector<Int> eis_poly;    // X^e - p*w, low degree first, length e+1
    Int eis_unit = 1;             // w
    long prec = 0;
    long seed = 0;
};

// Absolutely presented field Q_p[u,pi]/(g(u), pi^e - p*w) with w an integer unit.
class BaseField final : public Field {
public:
    static std::shared_ptr<const BaseField> make(const LocalFieldDesc& d);

    const BaseField& base() const override { return *this; }
    const LocalFieldDesc& desc() const { return desc_; }
    long prec() const { return desc_.prec; }

    Elem zero() const override;
    Elem from_int(const Int& n) const override;
    Elem unram_generator() const;  // u

    Elem add(ElemView a, ElemView b) const override;
    Elem neg(ElemView a) const override;
    Elem mul(ElemView a, ElemView b) const override;
    Elem inv(ElemView a) const override;
    Elem shift(ElemView a, long k) const override;
    ValInfo val_info(ElemView a) const override;
    long abs_prec(ElemView a) const override;
    RVec residue(ElemView a) const override;
    Elem lift(const RVec& r) const override;
    std::string to_string(ElemView a) const override;
    std::string describe() const override;

    // Block-level primitives shared with tower fields.
    BaseElem b_add(const BaseElem& x, const BaseElem& y) const;
    BaseElem b_neg(const BaseElem& x) const;
    BaseElem b_mul(const BaseElem& x, const BaseElem& y) const;
    BaseElem b_inv(const BaseElem& x) const;
    BaseElem b_from_int(const Int& n) const;
    BaseElem b_zero() const { return BaseElem{}; }

private:
    explicit BaseField(LocalFieldDesc d);

    using Coeffs = std::vector<Int>;
    BaseElem normalize(long shift, long rprec, Coeffs a) const;
    void reduce(Coeffs& a, long rprec) const;
    long coeff_val(const Coeffs& a) const;
    Coeffs mul_pi_pow(const Coeffs& a, long k) const;  // k may be negative (exact division)
    Coeffs coeff_mul(const Coeffs& x, const Coeffs& y) const;
    const Int& ppow(long k) const;
    Int wpow(long s) const;  // w^s mod p^N, s may be negative

    LocalFieldDesc desc_;
    long N_;  // coefficients are stored modulo p^N
    Int mod_;
    Int w_inv_;
    std::vector<Int> ppow_;
};

// F(theta) with theta^2 = t*theta - n, where (1, theta) is an integral basis:
// theta is a uniformiser (ramified) or generates the residue extension (unramified).
class QuadField final : public Field {
public:
    enum class Kind { Unramified, Ramified };

    // E = F(sqrt d); d must be a non-square.
    static std::shared_ptr<const QuadField> extend(FieldPtr parent, ElemView d);
    // E = F(rho) with rho^2 - t rho + n = 0; sqrt_d expressed in the new basis.
    static std::shared_ptr<const QuadField> from_minpoly(FieldPtr parent, ElemView t, ElemView n, Kind kind,
                                                         ElemView d, ElemView sqrt_d_x, ElemView sqrt_d_y);

    const BaseField& base() const override { return parent_->base(); }
    const Field* parent() const override { return parent_.get(); }
    const FieldPtr& parent_ptr() const { return parent_; }
    Kind kind() const { return kind_; }
    bool ramified() const { return kind_ == Kind::Ramified; }
    const Elem& t() const { return t_; }
    const Elem& n() const { return n_; }
    const Elem& d() const { return d_; }            // in the parent
    const Elem& sqrt_d() const { return sqrt_d_; }  // in this field
    const Elem& theta() const { return theta_; }

    Elem from_int(const Int& n) const override;
    Elem embed(ElemView parent_elem) const;
    Elem make(ElemView x, ElemView y) const;  // x + y theta
    ElemView x_part(ElemView a) const { return a.first(width_ / 2); }
    ElemView y_part(ElemView a) const { return a.subspan(width_ / 2); }

    Elem conj(ElemView a) const;
    Elem norm(ElemView a) const;   // in the parent
    Elem trace(ElemView a) const;  // in the parent

    Elem add(ElemView a, ElemView b) const override;
    Elem neg(ElemView a) const override;
    Elem mul(ElemView a, ElemView b) const override;
    Elem inv(ElemView a) const override;
    ValInfo val_info(ElemView a) const override;
    long abs_prec(ElemView a) const override;
    RVec residue(ElemView a) const override;
    Elem lift(const RVec& r) const override;
    std::string to_string(ElemView a) const override;
    std::string describe() const override;

private:
    QuadField() = default;
    void init();

    FieldPtr parent_;
    Kind kind_ = Kind::Unramified;
    Elem t_, n_, d_, sqrt_d_, theta_;
};

using QuadPtr = std::shared_ptr<const QuadField>;

// Deterministic descriptor: lexicographically first irreducible unram_poly and
// eis_poly X^e - p*w with w the seed-th entry of 1, -1, 2, -2, ... prime to p.
LocalFieldDesc field_construct(long p, long e, long f, long prec, long seed = 0);
std::shared_ptr<const BaseField> make_field(long p, long e, long f, long prec = 0, long seed = 0);

// Irreducibility of a monic polynomial over F_p (low degree first).
bool is_irreducible_mod_p(const std::vector<Int>& poly, long p);

}  // namespace lmass
