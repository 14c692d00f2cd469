#pragma once

#include "logcouple/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace logcouple {

/// Thrown when an operation's precondition on its arguments is violated.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Syntax error with a 0-based character offset into the parsed text.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::invalid_argument(message + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Element of the computable standard model: a finitely supported sequence of
/// rationals, ordered lexicographically. Zero entries are never stored, so two
/// elements are equal iff their maps are equal.
class GammaElement {
public:
    using Coords = std::map<std::size_t, Rational>;

    GammaElement() = default;
    explicit GammaElement(Coords coords);
    /// Dense construction; zeros (including trailing ones) are dropped.
    static GammaElement from_dense(const std::vector<Rational>& dense);
    /// The basis vector e_n.
    static GammaElement unit(std::size_t n, Rational coeff = 1);

    const Coords& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }
    Rational coeff(std::size_t n) const;
    /// Index of the first nonzero coordinate. Requires a nonzero element.
    std::size_t leading_index() const;
    /// One past the largest nonzero index; 0 for the zero element.
    std::size_t support_end() const;
    int sign() const;

    std::vector<Rational> dense(std::size_t length) const;

    GammaElement operator-() const;
    GammaElement& operator+=(const GammaElement& o);
    GammaElement& operator-=(const GammaElement& o);
    friend GammaElement operator+(GammaElement a, const GammaElement& b) { return a += b; }
    friend GammaElement operator-(GammaElement a, const GammaElement& b) { return a -= b; }
    friend GammaElement operator*(const Rational& q, const GammaElement& a);

    friend bool operator==(const GammaElement&, const GammaElement&) = default;
    friend std::strong_ordering operator<=>(const GammaElement& a, const GammaElement& b);

    std::string to_string() const;

private:
    void set(std::size_t n, Rational value);
    Coords coords_;
};

struct Infinity {
    friend bool operator==(Infinity, Infinity) = default;
};
inline constexpr Infinity inf{};

/// Gamma with the default value infinity adjoined as a top element.
class GammaExt {
public:
    GammaExt() = default;
    GammaExt(GammaElement value) : value_(std::move(value)) {}
    GammaExt(Infinity) : value_(std::nullopt) {}

    bool is_inf() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    /// Throws DomainError on infinity.
    const GammaElement& finite() const;

    friend bool operator==(const GammaExt&, const GammaExt&) = default;
    friend std::strong_ordering operator<=>(const GammaExt& a, const GammaExt& b);

    std::string to_string() const;

private:
    std::optional<GammaElement> value_{GammaElement{}};
};

/// A point E_n = e_0 + ... + e_{n-1} of the value set Psi, n >= 1.
class PsiPoint {
public:
    explicit PsiPoint(std::size_t ones);
    std::size_t ones() const { return ones_; }
    GammaElement element() const;
    friend auto operator<=>(const PsiPoint&, const PsiPoint&) = default;

private:
    std::size_t ones_;
};

/// The archimedean class of a nonzero element, identified by its leading index.
struct ArchClassToken {
    std::size_t leading_index;
    friend auto operator<=>(const ArchClassToken&, const ArchClassToken&) = default;
};

/// E_n as an element. Requires n >= 1.
GammaElement staircase(std::size_t n);
/// If `a` equals some E_n, returns n.
std::optional<std::size_t> as_psi_point(const GammaElement& a);

GammaExt add(const GammaExt& a, const GammaExt& b);
GammaExt negate(const GammaExt& a);
GammaExt subtract(const GammaExt& a, const GammaExt& b);
/// delta_n: division by the positive integer n.
GammaExt divide(const GammaExt& a, std::size_t n);
std::strong_ordering compare(const GammaExt& a, const GammaExt& b);

GammaExt psi(const GammaExt& a);
GammaExt integral(const GammaExt& a);
GammaExt succ(const GammaExt& a);
GammaExt pred(const GammaExt& a);

/// psi on Gamma without the default value; throws DomainError on zero.
PsiPoint psi_point(const GammaElement& a);
GammaElement integral_finite(const GammaElement& a);
PsiPoint succ_point(const GammaElement& a);

struct SmallDiffWitness {
    PsiPoint delta0;
    PsiPoint delta1;
};
/// For eps > 0 returns delta0 = s(psi(eps)), delta1 = psi(eps); then
/// 0 < delta0 - delta1 and psi(delta0 - delta1) > psi(eps).
SmallDiffWitness small_diff_witness(const GammaElement& eps);

/// x ~ y iff psi(x) < psi(x - y). Both arguments nonzero.
bool rv_equiv(const GammaElement& x, const GammaElement& y);
ArchClassToken arch_class(const GammaElement& a);
/// a precedes b iff psi(a) > psi(b). Both arguments nonzero.
bool psi_precedes(const GammaElement& a, const GammaElement& b);

/// Reads one element literal starting at `pos` (leading whitespace skipped)
/// and advances `pos` past it. Throws ParseError.
GammaExt scan_gamma_ext(std::string_view text, std::size_t& pos);
/// Parses `[q0, q1, ...]`, `[]` or `inf`.
GammaExt parse_gamma_ext(std::string_view text);
/// As parse_gamma_ext but rejects `inf`.
GammaElement parse_gamma(std::string_view text);

}  // namespace logcouple
