#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

#include "perfval/errors.hpp"

namespace perfval {

/// Exact rational exponent.  The value groups handled by this library all
/// embed in Z[1/p] and the embedding of the completed value group into the
/// nonnegative reals is realized directly in Q, so every exponent is an
/// exact mpq with no floating point anywhere.
class Exponent {
public:
    Exponent() : q_(0) {}
    Exponent(long n) : q_(n) {}  // NOLINT: implicit by design, integers are exponents
    Exponent(long num, long den) {
        if (den == 0) throw InvalidInput("exponent with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Exponent(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static Exponent one_over_p_pow(long p, unsigned k) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(p), k);
        mpq_class q(1);
        q /= mpq_class(den);
        return Exponent(q);
    }

    const mpq_class& value() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_negative() const { return sgn(q_) < 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    /// True when the reduced denominator is a power of p (p^0 included).
    bool denominator_is_power_of(long p) const {
        mpz_class den = q_.get_den();
        while (den > 1) {
            if (!mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) return false;
            mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(p));
        }
        return true;
    }

    std::string str() const { return q_.get_str(); }

    friend Exponent operator+(const Exponent& a, const Exponent& b) { return Exponent(mpq_class(a.q_ + b.q_)); }
    friend Exponent operator-(const Exponent& a, const Exponent& b) { return Exponent(mpq_class(a.q_ - b.q_)); }
    friend Exponent operator-(const Exponent& a) { return Exponent(mpq_class(-a.q_)); }
    friend Exponent operator*(const Exponent& a, const Exponent& b) { return Exponent(mpq_class(a.q_ * b.q_)); }
    friend Exponent operator*(long n, const Exponent& a) { return Exponent(mpq_class(n * a.q_)); }
    friend Exponent operator/(const Exponent& a, long n) {
        if (n == 0) throw InvalidInput("exponent division by zero");
        return Exponent(mpq_class(a.q_ / mpq_class(n)));
    }

    Exponent& operator+=(const Exponent& b) { q_ += b.q_; return *this; }
    Exponent& operator-=(const Exponent& b) { q_ -= b.q_; return *this; }

    friend bool operator==(const Exponent& a, const Exponent& b) { return cmp(a.q_, b.q_) == 0; }
    friend bool operator!=(const Exponent& a, const Exponent& b) { return cmp(a.q_, b.q_) != 0; }
    friend bool operator<(const Exponent& a, const Exponent& b) { return cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Exponent& a, const Exponent& b) { return cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Exponent& a, const Exponent& b) { return cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Exponent& a, const Exponent& b) { return cmp(a.q_, b.q_) >= 0; }

private:
    mpq_class q_;
};

inline Exponent min(const Exponent& a, const Exponent& b) { return a < b ? a : b; }
inline Exponent max(const Exponent& a, const Exponent& b) { return a < b ? b : a; }

/// Canonical "num/den" (or "num" when the denominator is 1) rendering used
/// for every rational in textual and JSON output.
inline std::string rat_string(const mpq_class& q) { return q.get_str(); }
inline std::string rat_string(const Exponent& e) { return e.str(); }

}  // namespace perfval
