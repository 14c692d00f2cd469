#pragma once

#include "logcouple/constraints.hpp"
#include "logcouple/gamma.hpp"
#include "logcouple/phi.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace logcouple {

/// Affine map Psi^I -> Gamma, alpha |-> sum_i q_i alpha_i + beta, with every
/// q_i nonzero. Labels are the natural numbers i of the variables x_i.
class PsiFunction {
public:
    using Coeffs = std::map<std::size_t, Rational>;

    PsiFunction() = default;
    /// Throws DomainError if a coefficient is zero.
    PsiFunction(Coeffs coeffs, GammaElement offset);
    static PsiFunction constant(GammaElement offset) { return PsiFunction({}, std::move(offset)); }

    const Coeffs& coeffs() const { return coeffs_; }
    const GammaElement& offset() const { return offset_; }
    std::vector<std::size_t> labels() const;
    std::size_t arity() const { return coeffs_.size(); }

    /// Sum of the coefficients.
    Rational norm() const;
    /// F_J: coefficients on J, same offset. Throws DomainError unless J is a
    /// subset of the index set.
    PsiFunction restrict(const std::set<std::size_t>& subset) const;

    /// `n` must assign every label.
    GammaElement eval(const IndexAssignment& n) const;
    /// First k coordinates of eval(n), computed from min(n_i, k) only.
    std::vector<Rational> truncated_eval(const IndexAssignment& n, std::size_t k) const;

    /// Human-readable form such as `2x0 - x1 + [1]`.
    std::string to_string() const;

    friend bool operator==(const PsiFunction&, const PsiFunction&) = default;
    friend auto operator<=>(const PsiFunction& a, const PsiFunction& b) {
        if (auto c = a.coeffs_ <=> b.coeffs_; c != 0) return c;
        return a.offset_ <=> b.offset_;
    }

private:
    Coeffs coeffs_;
    GammaElement offset_;
};

/// Parses a linear form such as `x0 - x1 + 2x2 - 1/3*x3 + [0,1]`.
PsiFunction parse_psi_function(std::string_view text);

/// Finite union of images; the empty list is the empty set.
using ImageUnion = std::vector<PsiFunction>;

/// Parses `;`-separated linear forms.
ImageUnion parse_image_union(std::string_view text);

/// {F(alpha) : the indices of alpha satisfy the constraints}.
struct ConstrainedImage {
    PsiFunction base;
    DifferenceConstraints constraints;
};

/// A small set given either as a plain image union or as one constrained image.
using SmallCore = std::vector<ConstrainedImage>;
SmallCore as_core(const ImageUnion& u);
SmallCore as_core(const ConstrainedImage& c);

/// Removes components with identical data.
ImageUnion normalize(ImageUnion u);

/// Exact derived set: for each component F, the union over nonempty J with
/// norm(F_J) = 0 of image(F_{I\J}).
ImageUnion derived_set(const ImageUnion& x);
/// Least n with X^(n) empty.
std::size_t d_rank(const ImageUnion& x);

/// One family of solutions of F(n) = gamma. Labels in `fixed` take exactly
/// those values; labels in `tail` all sit strictly above `tail_floor`, where
/// the labels sharing a value must have coefficients summing to 0. A
/// nonempty tail makes the family infinite ("parametric").
struct MemberSolution {
    IndexAssignment fixed;
    std::vector<std::size_t> tail;
    std::size_t tail_floor = 0;
    IndexAssignment witness;

    bool parametric() const { return !tail.empty(); }
    /// All concrete members of the family inside {1..bound}^I.
    std::vector<IndexAssignment> expand(const PsiFunction& f, std::size_t bound) const;
};

/// All solutions of sum_i q_i E_{n_i} = gamma - beta, by the staircase
/// decomposition: coordinate jumps of gamma - beta are matched by disjoint
/// groups of coefficients. Empty result means gamma is not in image(F).
std::vector<MemberSolution> member(const GammaElement& gamma, const PsiFunction& f);
bool is_member(const GammaElement& gamma, const ImageUnion& x);

/// A constraint-satisfying solution of F(n) = gamma, if any.
std::optional<IndexAssignment> member_constrained(const GammaElement& gamma, const ConstrainedImage& c);
bool is_member(const GammaElement& gamma, const SmallCore& x);

/// Capped index profile: value v < cap means n_i = v; v == cap means n_i >= cap.
struct CappedProfile {
    IndexAssignment values;
    std::vector<Rational> truncation;  // first `cap` coordinates of every member
};

/// Calls `visit` for each capped profile in {1..cap}^I whose region meets the
/// constraints.
void for_each_profile(const ConstrainedImage& c, std::size_t cap,
                      const std::function<void(const CappedProfile&)>& visit);

/// Some point of X \ {gamma} agrees with gamma on the first k coordinates.
bool has_nearby_point(const GammaElement& gamma, const SmallCore& x, std::size_t k);
/// has_nearby_point for every k in 1..max_k: a semi-decision for gamma in X'.
bool limit_point_probe(const GammaElement& gamma, const SmallCore& x, std::size_t max_k);
inline bool limit_point_probe(const GammaElement& gamma, const ImageUnion& x, std::size_t max_k) {
    return limit_point_probe(gamma, as_core(x), max_k);
}

/// All (assignment, value) pairs with assignment in {1..bound}^I that satisfy
/// the constraints.
std::vector<std::pair<IndexAssignment, GammaElement>> enumerate_window(const ConstrainedImage& c,
                                                                      std::size_t bound);

/// Up to `count` distinct points of X, taken from index windows {1..B}^I of
/// growing B so that the result is deterministic. Fewer points come back when
/// X is finite or the windows grow too large.
std::vector<GammaElement> sample_image(const SmallCore& x, std::size_t count);

/// Evaluations of a hidden function of arity m at labels 0..m-1.
struct Evaluation {
    std::vector<std::size_t> args;  // n_i for label i
    GammaElement value;
};

/// Probes (1,..,1) and, for each i, E_2 at position i with E_1 elsewhere.
std::vector<std::vector<std::size_t>> recovery_probes(std::size_t arity);

/// The unique Psi-function consistent with the evaluations. Throws
/// DomainError if they are inconsistent or do not determine the function.
PsiFunction recover(const std::vector<Evaluation>& evals);

/// Largest subset of `sample` whose pairwise differences all have psi value
/// phi. Throws DomainError for phi = inf or repeated sample points.
std::vector<GammaElement> equilateral_max_clique(const std::vector<GammaElement>& sample, const Phi& phi);

}  // namespace logcouple
