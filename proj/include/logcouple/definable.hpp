#pragma once

#include "logcouple/phi.hpp"
#include "logcouple/psi_function.hpp"
#include "logcouple/quotient.hpp"

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace logcouple {

/// A value in {-inf, 0, 1, 2, ...}.
class Dimension {
public:
    static Dimension empty() { return Dimension(); }
    explicit Dimension(unsigned value) : value_(value) {}

    bool is_empty() const { return !value_.has_value(); }
    std::optional<unsigned> value() const { return value_; }
    std::string to_string() const { return value_ ? std::to_string(*value_) : "-inf"; }

    friend Dimension operator+(const Dimension& a, const Dimension& b) {
        if (a.is_empty() || b.is_empty()) return empty();
        return Dimension(*a.value_ + *b.value_);
    }
    friend bool operator==(const Dimension&, const Dimension&) = default;
    friend auto operator<=>(const Dimension& a, const Dimension& b) {
        if (a.is_empty() || b.is_empty()) return !a.is_empty() <=> !b.is_empty();
        return *a.value_ <=> *b.value_;
    }

private:
    Dimension() = default;
    std::optional<unsigned> value_;
};

/// Open interval (lo, hi); a missing bound is the matching infinity marker.
struct Interval {
    std::optional<GammaElement> lo;
    std::optional<GammaElement> hi;

    bool is_empty() const { return lo && hi && !(*lo < *hi); }
    bool contains(const GammaElement& x) const { return (!lo || *lo < x) && (!hi || x < *hi); }
    /// hi - lo; nullopt when unbounded.
    std::optional<GammaElement> width() const;
    friend bool operator==(const Interval&, const Interval&) = default;
};

using CoreForm = std::variant<ImageUnion, ConstrainedImage>;

/// core + Delta_xi; xi = inf means the core itself.
struct ThickenedSmall {
    CoreForm core;
    Phi thicken = Phi::infinity();

    SmallCore small_core() const;
    bool is_empty() const;
    bool contains(const GammaElement& x) const;
    /// Some point of the core, if any.
    std::optional<GammaElement> sample() const;
};

using UnaryComponent = std::variant<Interval, ThickenedSmall>;

struct UnaryRep {
    std::vector<UnaryComponent> components;

    bool is_empty() const;
    bool contains(const GammaElement& x) const;
};

/// Finite union of products of UnaryReps, all of the same arity.
struct NaryRep {
    std::size_t arity = 1;
    std::vector<std::vector<UnaryRep>> products;

    bool is_empty() const;
    /// Throws DomainError on a point of the wrong arity.
    bool contains(const std::vector<GammaElement>& x) const;
    /// The arity-1 view; throws DomainError unless arity is 1.
    UnaryRep as_unary() const;
    static NaryRep from_unary(const UnaryRep& u);
};

Dimension dim(const UnaryComponent& c, const Phi& phi);
Dimension dim(const UnaryRep& rep, const Phi& phi);
Dimension dim(const NaryRep& rep, const Phi& phi);
Dimension dim_product(const std::vector<UnaryRep>& factors, const Phi& phi);

/// An interval of width outside Delta_phi contained in the set, if one exists.
std::optional<Interval> wide_interval(const UnaryRep& rep, const Phi& phi);
bool has_wide_box(const NaryRep& rep, const Phi& phi);

UnaryRep unite(const UnaryRep& a, const UnaryRep& b);
/// Throws DomainError on an arity mismatch.
NaryRep unite(const NaryRep& a, const NaryRep& b);
NaryRep product(const NaryRep& a, const NaryRep& b);

/// Image of the set in Gamma / Delta_{s^k 0}; nullopt when it is infinite.
std::optional<std::set<TruncatedVector>> quotient_image(const UnaryRep& rep, std::size_t k);

struct CrosscheckReport {
    Phi phi;
    Dimension by_rules;     // dimension rules
    Dimension by_interval;  // wide-interval scan
    std::optional<Interval> wide_witness;
    std::optional<std::size_t> quotient_size;  // finite phi, dim <= 0
    std::optional<std::size_t> d_rank;         // phi = inf, dim <= 0, ImageUnion cores
    std::vector<std::string> discrepancies;

    bool consistent() const { return discrepancies.empty(); }
};
CrosscheckReport sst_crosscheck(const UnaryRep& rep, const Phi& phi);

}  // namespace logcouple
