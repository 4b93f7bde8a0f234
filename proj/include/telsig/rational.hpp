#ifndef TELSIG_RATIONAL_HPP
#define TELSIG_RATIONAL_HPP

#include <gmp.h>

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "telsig/error.hpp"

namespace telsig {

// Arbitrary-precision rational, always canonical: lowest terms, positive
// denominator.  Thin RAII wrapper around GMP's mpq_t; GMP does the math.
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(long num, long den) {
        if (den == 0) fail(errc::input, "rational with zero denominator");
        if (den < 0) {  // mpq_set_si takes an unsigned denominator
            num = -num;
            den = -den;
        }
        mpq_init(q_);
        mpq_set_si(q_, num, static_cast<unsigned long>(den));
        mpq_canonicalize(q_);
    }
    // Accepts "p", "-p", "p/q" in base 10.
    explicit Rational(std::string_view s) {
        mpq_init(q_);
        std::string buf(s);
        if (mpq_set_str(q_, buf.c_str(), 10) != 0 || mpz_sgn(mpq_denref(q_)) == 0) {
            mpq_clear(q_);
            fail(errc::input, "unparsable rational '" + buf + "'");
        }
        mpq_canonicalize(q_);
    }

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_si(mpq_denref(q_), 1) == 0; }
    int sign() const { return mpq_sgn(q_); }

    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) fail(errc::input, "rational division by zero");
        mpq_div(q_, q_, o.q_);
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const {
        Rational r(*this);
        mpq_neg(r.q_, r.q_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }

    Rational pow(long e) const {
        if (e < 0) {
            if (is_zero()) fail(errc::input, "zero to a negative power");
            Rational inv;
            mpq_inv(inv.q_, q_);
            return inv.pow(-e);
        }
        Rational r(1), base(*this);
        while (e > 0) {
            if (e & 1) r *= base;
            mpq_mul(base.q_, base.q_, base.q_);
            e >>= 1;
        }
        return r;
    }

    // Hot-loop kernels: acc += x*y and x*y without operand copies.
    static void add_prod(Rational& acc, const Rational& x, const Rational& y) {
        static thread_local Scratch s;
        mpq_mul(s.t, x.q_, y.q_);
        mpq_add(acc.q_, acc.q_, s.t);
    }
    static Rational product(const Rational& x, const Rational& y) {
        Rational r;
        mpq_mul(r.q_, x.q_, y.q_);
        return r;
    }

    // Decimal string, "p" when the denominator is 1, "p/q" otherwise.
    std::string str() const {
        char* c = mpq_get_str(nullptr, 10, q_);
        std::string s(c);
        std::free(c);
        return s;
    }

    size_t hash() const {
        // Cheap and stable: fold the low limbs of numerator and denominator.
        auto fold = [](mpz_srcptr z) -> size_t {
            size_t h = static_cast<size_t>(mpz_sgn(z)) + 0x9e3779b97f4a7c15ULL;
            size_t n = mpz_size(z);
            for (size_t i = 0; i < n && i < 2; ++i) h = h * 1099511628211ULL + mpz_getlimbn(z, i);
            return h;
        };
        return fold(mpq_numref(q_)) * 31 + fold(mpq_denref(q_));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    struct Scratch {
        mpq_t t;
        Scratch() { mpq_init(t); }
        ~Scratch() { mpq_clear(t); }
    };

    mpq_t q_;
};

inline Rational factorial(long n) {
    if (n < 0) fail(errc::input, "factorial of negative integer");
    Rational r(1);
    for (long i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

} // namespace telsig

template <>
struct std::hash<telsig::Rational> {
    size_t operator()(const telsig::Rational& r) const { return r.hash(); }
};

#endif
