#include <cctype>

#include "perfval/ring.hpp"

namespace perfval {

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        if (i >= s.size()) throw ParseError("unexpected end of input");
        return s[i];
    }
    void expect(char c) {
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(i));
        ++i;
    }
    mpz_class integer() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected an integer at position " + std::to_string(start));
        return mpz_class(s.substr(start, i - start), 10);
    }
};

Exponent parse_rational(Cursor& c, long p) {
    mpz_class num = c.integer();
    mpz_class den = 1;
    if (!c.done() && c.peek() == '/') {
        c.expect('/');
        den = c.integer();
        if (den == 0) throw ParseError("exponent with zero denominator");
    }
    mpq_class q(num);
    q /= mpq_class(den);
    Exponent e(q);
    if (!e.denominator_is_power_of(p))
        throw ParseError("exponent denominator is not a power of " + std::to_string(p));
    return e;
}

}  // namespace

RingElement parse_element(const std::string& text, const RingDescriptor& desc) {
    desc.validate();
    Cursor c{text};
    ElementBuilder b(desc, desc.precision);

    if (c.done()) throw ParseError("empty input");
    while (true) {
        mpz_class coeff = c.integer();
        Exponent e(0);
        if (!c.done() && c.peek() == '*') {
            c.expect('*');
            char base = c.peek();
            if (base != 't' && base != 'p') throw ParseError("expected base symbol 't' or 'p'");
            if (base != desc.base_symbol())
                throw ParseError(std::string("base '") + base + "' does not match the ring mode");
            ++c.i;
            c.expect('^');
            c.expect('(');
            e = parse_rational(c, desc.prime);
            c.expect(')');
        }
        b.accumulate(e, coeff);
        if (c.done()) break;
        c.expect('+');
    }
    return b.build();
}

}  // namespace perfval
