#pragma once

#include "logcouple/phi.hpp"
#include "logcouple/psi_function.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace logcouple {

/// Element of Gamma / Delta_{s^k 0}, i.e. Q^k under lexicographic order.
/// Entries are dense so equality and ordering are canonical.
struct TruncatedVector {
    std::vector<Rational> entries;

    std::size_t length() const { return entries.size(); }
    bool is_zero() const;
    std::string to_string() const;  // "(q0,...,q_{k-1})"

    TruncatedVector& operator+=(const TruncatedVector& o);
    friend TruncatedVector operator+(TruncatedVector a, const TruncatedVector& b) { return a += b; }
    friend bool operator==(const TruncatedVector&, const TruncatedVector&) = default;
    friend auto operator<=>(const TruncatedVector& a, const TruncatedVector& b) {
        return a.entries <=> b.entries;
    }
};

TruncatedVector project(const GammaElement& gamma, std::size_t k);

/// Exact image of X in Gamma / Delta_{s^k 0}. Truncation of a member depends
/// only on min(n_i, k), so capped profiles in {1..k}^I cover everything.
std::set<TruncatedVector> project_set(const SmallCore& x, std::size_t k);
inline std::set<TruncatedVector> project_set(const ImageUnion& x, std::size_t k) {
    return project_set(as_core(x), k);
}

/// k -> |project_set(X, k)| for k in [first, last].
std::vector<std::pair<std::size_t, std::size_t>> count_function(const SmallCore& x, std::size_t first,
                                                                std::size_t last);

/// The finite quotient image, which certifies that it is closed and discrete
/// in the dense order Q^k.
struct ClosedDiscreteCertificate {
    Phi phi;
    std::set<TruncatedVector> image;
};
/// Throws DomainError for phi = inf.
ClosedDiscreteCertificate closed_discrete_certificate(const SmallCore& x, const Phi& phi);

/// Polynomial in k with rational coefficients, lowest degree first, fitted
/// exactly through the last degree+2 points of a counting table. Eventual
/// polynomiality is only conjectured, so every fit is flagged conjectural.
struct PolynomialFit {
    std::vector<Rational> coeffs;
    std::size_t points_used = 0;
    bool conjectural = true;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    Rational operator()(const Rational& k) const;
    std::string to_string() const;
};
std::optional<PolynomialFit> fit_eventual_polynomial(const std::vector<std::pair<std::size_t, std::size_t>>& table,
                                                     std::size_t max_degree = 4);

}  // namespace logcouple
