#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace logcouple {

/// Assignment of Psi-indices: label -> n, meaning the argument E_n.
using IndexAssignment = std::map<std::size_t, std::size_t>;

struct DiffAtom {
    enum class Kind { diff_le, diff_eq, ge, le };
    Kind kind;
    std::size_t i;
    std::size_t j = 0;  // unused for ge/le
    long c;

    bool holds(const IndexAssignment& n) const;
};

/// Conjunction of difference constraints over positive integer index
/// variables. Every variable is implicitly >= 1.
class DifferenceConstraints {
public:
    DifferenceConstraints() = default;
    explicit DifferenceConstraints(std::vector<DiffAtom> atoms) : atoms_(std::move(atoms)) {}

    /// n_i - n_j <= c
    DifferenceConstraints& diff_le(std::size_t i, std::size_t j, long c);
    /// n_i - n_j == c
    DifferenceConstraints& diff_eq(std::size_t i, std::size_t j, long c);
    DifferenceConstraints& at_least(std::size_t i, long c);
    DifferenceConstraints& at_most(std::size_t i, long c);
    DifferenceConstraints& exactly(std::size_t i, long c);

    const std::vector<DiffAtom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }

    std::set<std::size_t> variables() const;
    /// Largest |c| over the two-variable atoms; 0 if there are none.
    long max_diff_constant() const;
    /// Largest constant among the one-variable bounds; 0 if there are none.
    long max_bound_constant() const;

    /// Checks a complete assignment directly.
    bool holds(const IndexAssignment& n) const;

    /// An integral solution over `vars` plus every variable named by an atom,
    /// or nullopt if the system is unsatisfiable. Decided by negative-cycle
    /// detection (Bellman-Ford) on the constraint graph.
    std::optional<IndexAssignment> solve(const std::set<std::size_t>& vars = {}) const;
    bool satisfiable(const std::set<std::size_t>& vars = {}) const { return solve(vars).has_value(); }

    DifferenceConstraints conjoin(const DifferenceConstraints& other) const;

private:
    std::vector<DiffAtom> atoms_;
};

}  // namespace logcouple
