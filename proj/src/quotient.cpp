#include "logcouple/quotient.hpp"

namespace logcouple {

bool TruncatedVector::is_zero() const {
    for (const auto& q : entries)
        if (!q.is_zero()) return false;
    return true;
}

std::string TruncatedVector::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ",";
        out += entries[i].to_string();
    }
    return out + ")";
}

TruncatedVector& TruncatedVector::operator+=(const TruncatedVector& o) {
    if (o.length() != length()) throw DomainError("truncated vectors of different lengths");
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += o.entries[i];
    return *this;
}

TruncatedVector project(const GammaElement& gamma, std::size_t k) { return {gamma.dense(k)}; }

std::set<TruncatedVector> project_set(const SmallCore& x, std::size_t k) {
    if (k == 0) throw DomainError("project_set requires k >= 1");
    std::set<TruncatedVector> out;
    for (const auto& c : x)
        for_each_profile(c, k, [&](const CappedProfile& p) { out.insert({p.truncation}); });
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> count_function(const SmallCore& x, std::size_t first,
                                                                std::size_t last) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = first; k <= last; ++k) out.emplace_back(k, project_set(x, k).size());
    return out;
}

ClosedDiscreteCertificate closed_discrete_certificate(const SmallCore& x, const Phi& phi) {
    if (phi.is_inf()) throw DomainError("closed_discrete_certificate needs a finite phi");
    return {phi, project_set(x, phi.k())};
}

Rational PolynomialFit::operator()(const Rational& k) const {
    Rational acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * k + *it;
    return acc;
}

std::string PolynomialFit::to_string() const {
    std::string out;
    for (std::size_t d = coeffs.size(); d-- > 0;) {
        if (coeffs[d].is_zero()) continue;
        const bool neg = coeffs[d].sign() < 0;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        const Rational mag = neg ? -coeffs[d] : coeffs[d];
        if (d == 0 || mag != Rational(1)) out += mag.to_string();
        if (d >= 1) out += (d == 0 || mag != Rational(1) ? "*k" : "k");
        if (d >= 2) out += "^" + std::to_string(d);
    }
    return out.empty() ? "0" : out;
}

namespace {

// Coefficients of the interpolating polynomial through the given points
// (Gaussian elimination on the Vandermonde system).
std::vector<Rational> interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
    const std::size_t n = pts.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        Rational p(1);
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = p;
            p *= pts[i].first;
        }
        a[i][n] = pts[i].second;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (a[piv][col].is_zero()) ++piv;
        std::swap(a[piv], a[col]);
        const Rational lead = a[col][col];
        for (auto& v : a[col]) v /= lead;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const Rational f = a[r][col];
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i][n];
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
}

}  // namespace

std::optional<PolynomialFit> fit_eventual_polynomial(const std::vector<std::pair<std::size_t, std::size_t>>& table,
                                                     std::size_t max_degree) {
    for (std::size_t d = 0; d <= max_degree && d + 2 <= table.size(); ++d) {
        std::vector<std::pair<Rational, Rational>> pts;
        for (std::size_t i = table.size() - (d + 2); i < table.size(); ++i)
            pts.emplace_back(Rational(static_cast<long>(table[i].first)), Rational(static_cast<long>(table[i].second)));
        const auto check = pts.front();
        pts.erase(pts.begin());
        PolynomialFit fit{interpolate(pts), d + 2, true};
        if (fit(check.first) == check.second) return fit;
    }
    return std::nullopt;
}

}  // namespace logcouple
