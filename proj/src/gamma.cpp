#include "logcouple/gamma.hpp"

#include <cctype>

namespace logcouple {

GammaElement::GammaElement(Coords coords) {
    for (auto& [n, q] : coords)
        if (!q.is_zero()) coords_.emplace(n, std::move(q));
}

GammaElement GammaElement::from_dense(const std::vector<Rational>& dense) {
    GammaElement out;
    for (std::size_t n = 0; n < dense.size(); ++n) out.set(n, dense[n]);
    return out;
}

GammaElement GammaElement::unit(std::size_t n, Rational coeff) {
    GammaElement out;
    out.set(n, std::move(coeff));
    return out;
}

void GammaElement::set(std::size_t n, Rational value) {
    if (value.is_zero())
        coords_.erase(n);
    else
        coords_.insert_or_assign(n, std::move(value));
}

Rational GammaElement::coeff(std::size_t n) const {
    const auto it = coords_.find(n);
    return it == coords_.end() ? Rational{} : it->second;
}

std::size_t GammaElement::leading_index() const {
    if (coords_.empty()) throw DomainError("leading index of zero");
    return coords_.begin()->first;
}

std::size_t GammaElement::support_end() const {
    return coords_.empty() ? 0 : coords_.rbegin()->first + 1;
}

int GammaElement::sign() const { return coords_.empty() ? 0 : coords_.begin()->second.sign(); }

std::vector<Rational> GammaElement::dense(std::size_t length) const {
    std::vector<Rational> out(length);
    for (const auto& [n, q] : coords_) {
        if (n >= length) break;
        out[n] = q;
    }
    return out;
}

GammaElement GammaElement::operator-() const {
    GammaElement out = *this;
    for (auto& [n, q] : out.coords_) q = -q;
    return out;
}

GammaElement& GammaElement::operator+=(const GammaElement& o) {
    for (const auto& [n, q] : o.coords_) set(n, coeff(n) + q);
    return *this;
}

GammaElement& GammaElement::operator-=(const GammaElement& o) {
    for (const auto& [n, q] : o.coords_) set(n, coeff(n) - q);
    return *this;
}

GammaElement operator*(const Rational& q, const GammaElement& a) {
    if (q.is_zero()) return {};
    GammaElement out = a;
    for (auto& [n, c] : out.coords_) c *= q;
    return out;
}

std::strong_ordering operator<=>(const GammaElement& a, const GammaElement& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
         : s > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

std::string GammaElement::to_string() const {
    std::string out = "[";
    const std::size_t end = support_end();
    for (std::size_t n = 0; n < end; ++n) {
        if (n) out += ", ";
        out += coeff(n).to_string();
    }
    return out + "]";
}

const GammaElement& GammaExt::finite() const {
    if (!value_) throw DomainError("expected a finite element, got inf");
    return *value_;
}

std::strong_ordering operator<=>(const GammaExt& a, const GammaExt& b) {
    if (a.is_inf() || b.is_inf()) return a.is_inf() <=> b.is_inf();
    return *a.value_ <=> *b.value_;
}

std::string GammaExt::to_string() const { return is_inf() ? "inf" : value_->to_string(); }

PsiPoint::PsiPoint(std::size_t ones) : ones_(ones) {
    if (ones == 0) throw DomainError("Psi points are E_n with n >= 1");
}

GammaElement PsiPoint::element() const { return staircase(ones_); }

GammaElement staircase(std::size_t n) {
    if (n == 0) throw DomainError("E_n requires n >= 1");
    GammaElement::Coords c;
    for (std::size_t i = 0; i < n; ++i) c.emplace(i, Rational(1));
    return GammaElement(std::move(c));
}

std::optional<std::size_t> as_psi_point(const GammaElement& a) {
    const auto& c = a.coords();
    if (c.empty()) return std::nullopt;
    std::size_t expected = 0;
    for (const auto& [n, q] : c) {
        if (n != expected || q != Rational(1)) return std::nullopt;
        ++expected;
    }
    return expected;
}

GammaExt add(const GammaExt& a, const GammaExt& b) {
    if (a.is_inf() || b.is_inf()) return inf;
    return a.finite() + b.finite();
}

GammaExt negate(const GammaExt& a) {
    if (a.is_inf()) return inf;
    return -a.finite();
}

GammaExt subtract(const GammaExt& a, const GammaExt& b) { return add(a, negate(b)); }

GammaExt divide(const GammaExt& a, std::size_t n) {
    if (n == 0) throw DomainError("delta_n requires n >= 1");
    if (a.is_inf()) return inf;
    return Rational(1, static_cast<long>(n)) * a.finite();
}

std::strong_ordering compare(const GammaExt& a, const GammaExt& b) { return a <=> b; }

PsiPoint psi_point(const GammaElement& a) {
    if (a.is_zero()) throw DomainError("psi is undefined at 0 without the default value");
    return PsiPoint(a.leading_index() + 1);
}

GammaExt psi(const GammaExt& a) {
    if (a.is_inf() || a.finite().is_zero()) return inf;
    return psi_point(a.finite()).element();
}

namespace {

// Length of the leading run of coordinates equal to 1.
std::size_t leading_ones(const GammaElement& a) {
    std::size_t m = 0;
    for (const auto& [n, q] : a.coords()) {
        if (n != m || q != Rational(1)) break;
        ++m;
    }
    return m;
}

}  // namespace

// beta + psi(beta) = a with beta of leading index m forces psi(beta) = E_{m+1},
// so a - E_{m+1} must vanish below m and be nonzero at m: a_j = 1 for j < m and
// a_m != 1. That pins m to the length of the leading run of ones in a.
GammaElement integral_finite(const GammaElement& a) {
    return a - staircase(leading_ones(a) + 1);
}

PsiPoint succ_point(const GammaElement& a) { return psi_point(integral_finite(a)); }

GammaExt integral(const GammaExt& a) {
    if (a.is_inf()) return inf;
    return integral_finite(a.finite());
}

GammaExt succ(const GammaExt& a) { return psi(integral(a)); }

GammaExt pred(const GammaExt& a) {
    if (a.is_inf()) return inf;
    const auto n = as_psi_point(a.finite());
    if (!n || *n < 2) return inf;
    return staircase(*n - 1);
}

SmallDiffWitness small_diff_witness(const GammaElement& eps) {
    if (eps.sign() <= 0) throw DomainError("small_diff_witness requires eps > 0");
    const PsiPoint delta1 = psi_point(eps);
    const PsiPoint delta0 = succ_point(delta1.element());
    return {delta0, delta1};
}

bool rv_equiv(const GammaElement& x, const GammaElement& y) {
    if (x.is_zero() || y.is_zero()) throw DomainError("rv_equiv requires nonzero arguments");
    return psi(GammaExt(x)) < psi(GammaExt(x - y));
}

ArchClassToken arch_class(const GammaElement& a) {
    if (a.is_zero()) throw DomainError("archimedean class of 0");
    return {a.leading_index()};
}

bool psi_precedes(const GammaElement& a, const GammaElement& b) {
    if (a.is_zero() || b.is_zero()) throw DomainError("psi_precedes requires nonzero arguments");
    return psi(GammaExt(a)) > psi(GammaExt(b));
}

namespace {

void skip_ws(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

}  // namespace

GammaExt scan_gamma_ext(std::string_view text, std::size_t& pos) {
    skip_ws(text, pos);
    if (text.substr(pos, 3) == "inf") {
        const std::size_t after = pos + 3;
        if (after < text.size() && (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
            throw ParseError("unexpected identifier", pos);
        pos = after;
        return inf;
    }
    if (pos >= text.size() || text[pos] != '[') throw ParseError("expected '[' or 'inf'", pos);
    ++pos;
    std::vector<Rational> dense;
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == ']') {
        ++pos;
        return GammaElement{};
    }
    for (;;) {
        skip_ws(text, pos);
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != ',' && text[pos] != ']') ++pos;
        if (pos >= text.size()) throw ParseError("unterminated element literal", start);
        try {
            dense.push_back(Rational::parse(text.substr(start, pos - start)));
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed rational in element literal", start);
        }
        if (text[pos] == ']') {
            ++pos;
            break;
        }
        ++pos;
    }
    return GammaElement::from_dense(dense);
}

GammaExt parse_gamma_ext(std::string_view text) {
    std::size_t pos = 0;
    GammaExt out = scan_gamma_ext(text, pos);
    skip_ws(text, pos);
    if (pos != text.size()) throw ParseError("trailing input after element literal", pos);
    return out;
}

GammaElement parse_gamma(std::string_view text) {
    const GammaExt v = parse_gamma_ext(text);
    if (v.is_inf()) throw DomainError("expected a finite element, got inf");
    return v.finite();
}

}  // namespace logcouple
