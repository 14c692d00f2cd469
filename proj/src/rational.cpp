#include "logcouple/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace logcouple {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip_plus(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return std::string(s);
}

}  // namespace

Rational::Rational(long num, long den) : value_(num, den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_literal(text, true))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        return Rational(mpq_class(mpz_class(strip_plus(text))));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class d{std::string(den)};
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(mpq_class(mpz_class(strip_plus(num)), d));
}

std::string Rational::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
}

}  // namespace logcouple
