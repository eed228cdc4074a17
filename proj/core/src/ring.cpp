#include "perfval/ring.hpp"

#include <algorithm>
#include <sstream>

namespace perfval {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_same_descriptor(const RingElement& x, const RingElement& y) {
    if (!(x.descriptor() == y.descriptor())) throw DescriptorMismatch();
}

long digit_inverse(long c, long p) {
    // extended Euclid on small operands
    long t = 0, newt = 1, r = p, newr = c % p;
    while (newr != 0) {
        long q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) throw InvalidInput("digit not invertible mod p");
    return ((t % p) + p) % p;
}

}  // namespace

void RingDescriptor::validate() const {
    if (!is_prime(prime)) throw InvalidInput("descriptor prime must be a prime >= 2");
    if (prime > 1000003) throw InvalidInput("descriptor prime out of supported range");
    if (!(precision > Exponent(0))) throw InvalidInput("precision must be positive");
    if (!precision.denominator_is_power_of(prime))
        throw InvalidInput("precision must lie in Z[1/p]");
}

RingElement ElementBuilder::build() {
    std::vector<Term> out;
    bool dropped = false;
    const long p = desc_.prime;

    if (desc_.mode == Mode::char_p) {
        for (auto& [e, c] : acc_) {
            long d = static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)));
            if (d == 0) continue;
            if (e < cap_)
                out.push_back(Term{e, d});
            else
                dropped = true;
        }
    } else {
        // mixed: carries propagate from exponent e to e+1
        while (!acc_.empty()) {
            auto it = acc_.begin();
            Exponent e = it->first;
            mpz_class c = it->second;
            acc_.erase(it);
            if (c == 0) continue;
            if (e >= cap_) {
                dropped = true;
                continue;
            }
            long d = static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)));
            mpz_class k;
            mpz_fdiv_q_ui(k.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
            if (d != 0) out.push_back(Term{e, d});
            if (k != 0) acc_[e + Exponent(1)] += k;
        }
        std::sort(out.begin(), out.end(),
                  [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    }

    return RingElement(desc_, std::move(out),
                       (inexact_ || dropped) ? Exactness::exact_below_precision : Exactness::exact);
}

RingElement RingElement::monomial(const RingDescriptor& d, const Exponent& e, const mpz_class& c) {
    if (e.is_negative()) throw InvalidInput("ring elements have nonnegative exponents");
    ElementBuilder b(d, d.precision);
    b.accumulate(e, c);
    return b.build();
}

RingElement RingElement::varpi_power(const RingDescriptor& d, const Exponent& a) {
    if (a.is_negative()) throw InvalidInput("varpi power must be nonnegative");
    Exponent e = a * d.varpi_valuation();
    if (!e.denominator_is_power_of(d.prime))
        throw InvalidInput("varpi exponent leaves Z[1/p]");
    return monomial(d, e, 1);
}

ValResult RingElement::valuation() const {
    if (terms_.empty()) return ValResult::below_precision(desc_.precision);
    return ValResult::exact(terms_.front().exponent);
}

bool operator==(const RingElement& a, const RingElement& b) {
    if (!(a.descriptor() == b.descriptor())) return false;
    if (a.terms().size() != b.terms().size()) return false;
    for (size_t i = 0; i < a.terms().size(); ++i)
        if (a.terms()[i].coeff != b.terms()[i].coeff ||
            a.terms()[i].exponent != b.terms()[i].exponent)
            return false;
    return true;
}

std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << t.coeff << '*' << desc_.base_symbol() << "^(" << t.exponent.str() << ')';
    }
    return os.str();
}

namespace {

RingElement add_impl(const RingElement& x, const RingElement& y, bool negate_y, const Exponent& cap) {
    ElementBuilder b(x.descriptor(), cap);
    if (x.flagged() || y.flagged()) b.mark_inexact();
    for (const Term& t : x.terms()) b.accumulate(t.exponent, t.coeff);
    for (const Term& t : y.terms()) b.accumulate(t.exponent, negate_y ? -t.coeff : t.coeff);
    return b.build();
}

RingElement mul_impl(const RingElement& x, const RingElement& y, const Exponent& cap) {
    // an exact zero absorbs regardless of the other operand's flag
    if ((x.is_zero() && !x.flagged()) || (y.is_zero() && !y.flagged()))
        return RingElement::zero(x.descriptor());
    ElementBuilder b(x.descriptor(), cap);
    if (x.flagged() || y.flagged()) b.mark_inexact();
    for (const Term& s : x.terms())
        for (const Term& t : y.terms()) {
            Exponent e = s.exponent + t.exponent;
            if (e >= cap) {
                b.mark_inexact();
                continue;
            }
            b.accumulate(e, mpz_class(static_cast<long>(s.coeff) * t.coeff));
        }
    return b.build();
}

RingElement pow_impl(const RingElement& x, unsigned long n, const Exponent& cap) {
    RingElement acc = RingElement::one(x.descriptor());
    RingElement base = x;
    while (n > 0) {
        if (n & 1UL) acc = mul_impl(acc, base, cap);
        n >>= 1UL;
        if (n > 0) base = mul_impl(base, base, cap);
    }
    return acc;
}

}  // namespace

RingElement add(const RingElement& x, const RingElement& y) {
    require_same_descriptor(x, y);
    return add_impl(x, y, false, x.descriptor().precision);
}

RingElement sub(const RingElement& x, const RingElement& y) {
    require_same_descriptor(x, y);
    return add_impl(x, y, true, x.descriptor().precision);
}

RingElement neg(const RingElement& x) { return sub(RingElement::zero(x.descriptor()), x); }

RingElement mul(const RingElement& x, const RingElement& y) {
    require_same_descriptor(x, y);
    return mul_impl(x, y, x.descriptor().precision);
}

RingElement pow(const RingElement& x, unsigned long n) {
    return pow_impl(x, n, x.descriptor().precision);
}

RingElement divide(const RingElement& x, const RingElement& y) {
    require_same_descriptor(x, y);
    const RingDescriptor& desc = x.descriptor();
    const Exponent& N = desc.precision;

    if (y.is_zero()) {
        if (y.flagged()) throw PrecisionExhausted("divisor vanishes below precision");
        throw NotDivisible("division by zero");
    }
    const Exponent E = y.valuation().value();

    if (x.is_zero()) {
        RingElement q = RingElement::zero(desc);
        if (!x.flagged()) return q;
        // x is only known to vanish below N, so the quotient is only known
        // to vanish below N - E
        ElementBuilder b(desc, N);
        b.mark_inexact();
        return b.build();
    }
    if (x.valuation().value() < E) throw NotDivisible();

    const bool exact_inputs = !x.flagged() && !y.flagged();
    const Exponent cap_q = exact_inputs ? N : Exponent(N - E);
    if (!(cap_q > Exponent(0)))
        throw PrecisionExhausted("quotient digits all sit at or beyond precision");

    // sparse long division: cancel the leading digit of the remainder at
    // every step; the remainder's valuation strictly increases
    const Exponent cap_r = E + cap_q;
    const long p = desc.prime;
    const long lead_inv = digit_inverse(y.terms().front().coeff, p);

    RingElement r = truncate_below(x, cap_r);
    ElementBuilder qb(desc, cap_q);
    bool exact_division = false;
    while (!r.is_zero()) {
        Exponent eq = r.terms().front().exponent - E;
        if (eq >= cap_q) break;
        long cq = static_cast<long>((static_cast<long long>(r.terms().front().coeff) * lead_inv) % p);
        qb.accumulate(eq, cq);
        RingElement m = RingElement::monomial(desc, eq, cq);
        r = add_impl(r, mul_impl(m, y, cap_r), true, cap_r);
        if (r.is_zero() && !r.flagged()) exact_division = true;
    }
    if (!(exact_inputs && exact_division)) qb.mark_inexact();
    return qb.build();
}

RingElement invert_unit(const RingElement& x) {
    ValResult v = x.valuation();
    if (!v.is_exact() || !v.value().is_zero()) throw NotAUnit();
    return divide(RingElement::one(x.descriptor()), x);
}

RingElement truncate_below(const RingElement& x, const Exponent& cap) {
    ElementBuilder b(x.descriptor(), min(cap, x.descriptor().precision));
    if (x.flagged()) b.mark_inexact();
    for (const Term& t : x.terms()) {
        if (t.exponent < cap) b.accumulate(t.exponent, t.coeff);
    }
    RingElement r = b.build();
    return r;
}

RingElement reduce_mod_p(const RingElement& x) {
    return truncate_below(x, min(Exponent(1), x.descriptor().precision));
}

RingElement scale_exponents(const RingElement& x, const Exponent& factor) {
    if (!(factor > Exponent(0))) throw InvalidInput("exponent scale factor must be positive");
    ElementBuilder b(x.descriptor(), x.descriptor().precision);
    if (x.flagged()) b.mark_inexact();
    for (const Term& t : x.terms()) {
        Exponent e = t.exponent * factor;
        if (!e.denominator_is_power_of(x.descriptor().prime))
            throw InvalidInput("scaled exponent leaves Z[1/p]");
        if (e < x.descriptor().precision)
            b.accumulate(e, t.coeff);
        else
            b.mark_inexact();
    }
    return b.build();
}

bool equals_below(const RingElement& a, const RingElement& b, const Exponent& cap) {
    RingElement ta = truncate_below(a, cap);
    RingElement tb = truncate_below(b, cap);
    if (ta.terms().size() != tb.terms().size()) return false;
    for (size_t i = 0; i < ta.terms().size(); ++i)
        if (ta.terms()[i].coeff != tb.terms()[i].coeff ||
            ta.terms()[i].exponent != tb.terms()[i].exponent)
            return false;
    return true;
}

RingElement frobenius(const RingElement& x) {
    const RingDescriptor& desc = x.descriptor();
    const long p = desc.prime;
    if (desc.mode == Mode::char_p) {
        // additive p-th power: digits are fixed by c -> c^p, exponents scale
        ElementBuilder b(desc, desc.precision);
        if (x.flagged()) b.mark_inexact();
        for (const Term& t : x.terms()) {
            Exponent e = p * t.exponent;
            if (e < desc.precision)
                b.accumulate(e, t.coeff);
            else
                b.mark_inexact();
        }
        return b.build();
    }
    const Exponent cap = min(Exponent(1), desc.precision);
    RingElement r = truncate_below(x, cap);
    return pow_impl(r, static_cast<unsigned long>(p), cap);
}

RingElement pth_root(const RingElement& x) {
    const RingDescriptor& desc = x.descriptor();
    if (desc.mode == Mode::char_p)
        return scale_exponents(x, Exponent(1, desc.prime));
    if (desc.precision < Exponent(1))
        throw NoRootBelowPrecision("mixed-mode residue identification needs N >= 1");
    RingElement r = truncate_below(x, Exponent(1));
    return scale_exponents(r, Exponent(1, desc.prime));
}

}  // namespace perfval
