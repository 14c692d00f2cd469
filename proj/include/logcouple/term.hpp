#pragma once

#include "logcouple/gamma.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace logcouple {

class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class Primitive { psi, succ, pred, integ };

/// Immutable AST node of the term language {0, -, +, psi, inf, d_n, s, p}
/// plus int, which is definable as t - s(t).
class Term {
public:
    struct Var { std::string name; };
    struct Const { GammaExt value; };
    struct Add { TermPtr lhs, rhs; };
    struct Neg { TermPtr arg; };
    struct Delta { std::size_t n; TermPtr arg; };
    struct Apply { Primitive fn; TermPtr arg; };
    using Node = std::variant<Var, Const, Add, Neg, Delta, Apply>;

    explicit Term(Node node) : node_(std::move(node)) {}
    const Node& node() const { return node_; }

    static TermPtr var(std::string name);
    static TermPtr constant(GammaExt value);
    static TermPtr add(TermPtr lhs, TermPtr rhs);
    static TermPtr sub(TermPtr lhs, TermPtr rhs);
    static TermPtr neg(TermPtr arg);
    static TermPtr delta(std::size_t n, TermPtr arg);
    static TermPtr apply(Primitive fn, TermPtr arg);

private:
    Node node_;
};

/// Deep structural equality.
bool same_structure(const Term& a, const Term& b);

/// Throws ParseError (with offset) on syntax errors and unknown function names.
TermPtr parse_term(std::string_view text);
/// Minimal-parenthesis rendering; parse_term(print_term(t)) is structurally t.
std::string print_term(const Term& t);

std::set<std::string> free_variables(const Term& t);

using Env = std::map<std::string, GammaExt, std::less<>>;

/// Total evaluation with the infinity defaults. Throws DomainError on an
/// unbound variable.
GammaExt eval(const Term& t, const Env& env);

/// Outcome of probing a term for an affine law near a point.
struct AffineReport {
    std::map<std::string, Rational> slope;
    GammaExt value;
};
struct NotAffine {
    std::string reason;
};
using SlopeResult = std::variant<AffineReport, NotAffine>;

/// Evaluates t at `at` and at offsets +-radius/2^i (i = 1..4) along each
/// variable, plus the same offsets along the diagonal, and reports the unique
/// affine law matching every probe. A falsifiable probe, not a proof.
SlopeResult local_slope(const Term& t, const std::map<std::string, GammaElement>& at, const GammaElement& radius);

}  // namespace logcouple
