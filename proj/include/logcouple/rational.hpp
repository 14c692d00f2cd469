#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace logcouple {

/// Exact arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(long num, long den);
    explicit Rational(mpq_class value);

    /// Parses `int` or `int/posint`. Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }
    bool is_integer() const { return value_.get_den() == 1; }

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    std::string to_string() const;

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class value_{0};
};

}  // namespace logcouple
