#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "perfval/exponent.hpp"

namespace perfval {

/// The two model perfectoid valuation rings.
///
/// char_p: t-adic completion of the perfection of F_p[t], normalized by
///         v(t) = 1.  Written additively, elements are finite digit sums
///         sum c_i * t^(e_i) with e_i in Z[1/p].
/// mixed:  p-adic completion of Z_p[p^(1/p^inf)], normalized by v(p) = 1.
///         The distinguished pseudo-uniformizer is varpi = p^(1/p), so
///         varpi^p = p exactly (unit u = 1 in this model).
enum class Mode { char_p, mixed };

enum class Exactness {
    exact,                 // the finite digit sum is the element on the nose
    exact_below_precision  // equality holds only modulo terms of exponent >= N
};

struct RingDescriptor {
    Mode mode = Mode::char_p;
    long prime = 2;
    Exponent precision = Exponent(1);

    char base_symbol() const { return mode == Mode::char_p ? 't' : 'p'; }
    /// v(varpi): 1 in char_p (varpi = t), 1/p in mixed (varpi = p^(1/p)).
    Exponent varpi_valuation() const {
        return mode == Mode::char_p ? Exponent(1) : Exponent(1, prime);
    }
    void validate() const;

    friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
        return a.mode == b.mode && a.prime == b.prime && a.precision == b.precision;
    }
};

struct Term {
    Exponent exponent;
    long coeff;  // canonical digit in {1, ..., p-1}
};

/// Result of taking the valuation of a truncated element: either an exact
/// value r < N, or the statement that the element vanishes below N.
class ValResult {
public:
    static ValResult exact(Exponent r) { return ValResult(true, std::move(r)); }
    static ValResult below_precision(Exponent n) { return ValResult(false, std::move(n)); }

    bool is_exact() const { return exact_; }
    /// The valuation when exact; throws otherwise.
    const Exponent& value() const {
        if (!exact_) throw PrecisionExhausted("valuation is only known to be >= precision");
        return v_;
    }
    /// The precision cap when not exact.
    const Exponent& bound() const { return v_; }

    friend bool operator==(const ValResult& a, const ValResult& b) {
        return a.exact_ == b.exact_ && a.v_ == b.v_;
    }

private:
    ValResult(bool e, Exponent v) : exact_(e), v_(std::move(v)) {}
    bool exact_;
    Exponent v_;
};

/// An element of one of the model rings, canonically written as a strictly
/// increasing digit sum truncated below the precision cap N.  Values are
/// immutable after construction; every operation is a pure function.
class RingElement {
public:
    RingElement() = default;

    static RingElement zero(const RingDescriptor& d) { return RingElement(d, {}, Exactness::exact); }
    static RingElement one(const RingDescriptor& d) { return monomial(d, Exponent(0), 1); }
    /// c * base^e, canonicalized (c may be any integer).
    static RingElement monomial(const RingDescriptor& d, const Exponent& e, const mpz_class& c);
    /// The distinguished pseudo-uniformizer varpi (t or p^(1/p)).
    static RingElement varpi(const RingDescriptor& d) {
        return monomial(d, d.varpi_valuation(), 1);
    }
    /// varpi^a for rational a >= 0 in Z[1/p] (exponent measured in
    /// varpi-units, i.e. the resulting valuation is a * v(varpi)).
    static RingElement varpi_power(const RingDescriptor& d, const Exponent& a);

    const RingDescriptor& descriptor() const { return desc_; }
    const std::vector<Term>& terms() const { return terms_; }
    Exactness exactness() const { return flag_; }
    bool flagged() const { return flag_ == Exactness::exact_below_precision; }
    bool is_zero() const { return terms_.empty(); }

    ValResult valuation() const;

    std::string str() const;  // canonical element-grammar text

    /// Terms-only equality of the canonical representatives (exactness
    /// metadata is ignored).
    friend bool operator==(const RingElement& a, const RingElement& b);

private:
    RingElement(RingDescriptor d, std::vector<Term> t, Exactness f)
        : desc_(std::move(d)), terms_(std::move(t)), flag_(f) {}

    RingDescriptor desc_;
    std::vector<Term> terms_;
    Exactness flag_ = Exactness::exact;

    friend class ElementBuilder;
};

// -- arithmetic ------------------------------------------------------------

RingElement add(const RingElement& x, const RingElement& y);
RingElement sub(const RingElement& x, const RingElement& y);
RingElement neg(const RingElement& x);
RingElement mul(const RingElement& x, const RingElement& y);
RingElement pow(const RingElement& x, unsigned long n);

inline RingElement operator+(const RingElement& x, const RingElement& y) { return add(x, y); }
inline RingElement operator-(const RingElement& x, const RingElement& y) { return sub(x, y); }
inline RingElement operator-(const RingElement& x) { return neg(x); }
inline RingElement operator*(const RingElement& x, const RingElement& y) { return mul(x, y); }

/// Inverse of a unit (v(x) = 0), computed below the precision cap.
RingElement invert_unit(const RingElement& x);

/// Exact division in the valuation ring; legal iff v(x) >= v(y).  With
/// exact inputs the quotient carries every digit below N; if either input
/// is only known below N the quotient is emitted below N - v(y), which is
/// all the input data determines, so that divide(x,y)*y == x below N.
RingElement divide(const RingElement& x, const RingElement& y);

/// x^p on V/pV.  char_p: the exact exponent-scaling map e -> p*e.  mixed:
/// computed modulo p, i.e. on representatives with exponents < min(N, 1).
RingElement frobenius(const RingElement& x);

/// char_p: the exact inverse of Frobenius (the ring is perfect).  mixed:
/// the p-th root of x mod p, determined on residue classes mod varpi via
/// the digitwise identification V/pV with the char-p model truncated at
/// exponent 1; requires N >= 1.
RingElement pth_root(const RingElement& x);

// -- truncation helpers ----------------------------------------------------

/// Representative of x in the quotient by terms of exponent >= cap.  The
/// exactness flag is inherited; the drop is quotient semantics, not loss.
RingElement truncate_below(const RingElement& x, const Exponent& cap);

/// Representative of x mod p: drops exponents >= min(N, 1) (in mixed mode
/// pV = {v >= 1}); in char_p mode this is x truncated at min(N, 1).
RingElement reduce_mod_p(const RingElement& x);

/// Multiplies every exponent by the rational factor (used for the tilting
/// and Frobenius-restriction identifications).  Factor must be positive.
RingElement scale_exponents(const RingElement& x, const Exponent& factor);

/// Equality of the represented classes modulo exponents >= cap.
bool equals_below(const RingElement& a, const RingElement& b, const Exponent& cap);

// -- parsing / printing ----------------------------------------------------

/// Parses the element grammar
///   expr := term ("+" term)* | "0"
///   term := INT "*" BASE "^" "(" RAT ")" | INT
///   BASE := "t" | "p"      RAT := INT "/" INT | INT
/// (whitespace insignificant) and canonicalizes.  The base symbol must
/// match the descriptor's mode.
RingElement parse_element(const std::string& text, const RingDescriptor& desc);

inline std::string to_string(const RingElement& x) { return x.str(); }

// -- internal builder (shared with the other modules) -----------------------

/// Accumulates (exponent, integer) pairs and emits the canonical digit
/// expansion truncated below an explicit cap.  Mixed-mode carries move a
/// unit from exponent e to exponent e+1; char_p coefficients reduce mod p
/// with no carry.
class ElementBuilder {
public:
    ElementBuilder(const RingDescriptor& d, Exponent cap)
        : desc_(d), cap_(std::move(cap)) {}

    void accumulate(const Exponent& e, const mpz_class& c) {
        if (c == 0) return;
        acc_[e] += c;
    }
    void mark_inexact() { inexact_ = true; }

    RingElement build();

private:
    RingDescriptor desc_;
    Exponent cap_;
    std::map<Exponent, mpz_class> acc_;
    bool inexact_ = false;
};

}  // namespace perfval
