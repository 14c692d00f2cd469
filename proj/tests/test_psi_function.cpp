#include "doctest.h"
#include "oracles.hpp"

#include "logcouple/psi_function.hpp"

#include <random>
#include <set>

using namespace logcouple;
using oracle::vec;

namespace {

PsiFunction F(std::string_view text) { return parse_psi_function(text); }

// X = {(sx - x) + (sy - y) : x != y}, written as x0 - x1 + x2 - x3 with
// x0 = s x1, x2 = s x3, x1 < x3.
ConstrainedImage two_bump_set() {
    DifferenceConstraints c;
    c.diff_eq(0, 1, 1).diff_eq(2, 3, 1).diff_le(1, 3, -1);
    return {F("x0 - x1 + x2 - x3"), c};
}

std::set<IndexAssignment> brute_force_solutions(const GammaElement& gamma, const PsiFunction& f,
                                                std::size_t bound) {
    std::set<IndexAssignment> out;
    const auto labels = f.labels();
    std::vector<Rational> q;
    for (auto l : labels) q.push_back(f.coeffs().at(l));
    for (const auto& n : oracle::index_window(labels.size(), bound)) {
        if (oracle::staircase_sum(q, n, f.offset()) != gamma) continue;
        IndexAssignment a;
        for (std::size_t i = 0; i < labels.size(); ++i) a[labels[i]] = n[i];
        out.insert(a);
    }
    return out;
}

std::set<IndexAssignment> member_in_window(const GammaElement& gamma, const PsiFunction& f, std::size_t bound) {
    std::set<IndexAssignment> out;
    for (const auto& s : member(gamma, f))
        for (auto& a : s.expand(f, bound)) CHECK(out.insert(a).second);  // families are disjoint
    return out;
}

}  // namespace

TEST_CASE("linear form parsing") {
    const PsiFunction f = F("2x0 - x1 + [1]");
    CHECK(f.coeffs().at(0) == Rational(2));
    CHECK(f.coeffs().at(1) == Rational(-1));
    CHECK(f.offset() == vec({1}));
    CHECK(F("1/3*x2 - x2 + x2").coeffs().at(2) == Rational(1, 3));
    CHECK(F("x0 - x0").arity() == 0);
    CHECK(F(f.to_string()) == f);
    CHECK(parse_image_union("x0; x0 - x1 ;").size() == 2);
    CHECK_THROWS_AS(F("x0 x1"), ParseError);
    CHECK_THROWS_AS(F("y0"), ParseError);
    CHECK_THROWS_AS(PsiFunction({{0, Rational(0)}}, {}), DomainError);
}

TEST_CASE("norm and restrict") {
    CHECK(F("x0 - x1 + x2 - x3").norm() == Rational(0));
    CHECK(F("x0").norm() == Rational(1));
    CHECK(PsiFunction::constant(vec({4})).norm() == Rational(0));

    const PsiFunction g = F("x0 - x1 + [2]");
    CHECK(g.restrict({0}) == F("x0 + [2]"));
    CHECK(g.restrict({0, 1}) == g);
    CHECK(g.restrict({}) == PsiFunction::constant(vec({2})));
    CHECK_THROWS_AS(g.restrict({5}), DomainError);
}

TEST_CASE("derived_set examples") {
    CHECK(derived_set({F("x0")}).empty());
    CHECK(derived_set({F("x0 - x1")}) == ImageUnion{PsiFunction::constant({})});

    // the four zero-norm pairs plus J = I
    const ImageUnion expected = normalize({PsiFunction::constant({}), F("x2 - x3"), F("-x1 + x2"),
                                           F("x0 - x3"), F("x0 - x1")});
    CHECK(derived_set({F("x0 - x1 + x2 - x3")}) == expected);
}

TEST_CASE("d_rank") {
    CHECK(d_rank({F("x0 - x1 + x2 - x3")}) == 3);
    CHECK(d_rank({PsiFunction::constant(vec({3}))}) == 1);
    CHECK(d_rank({F("x0")}) == 1);
    CHECK(d_rank({}) == 0);
    // n-fold sums of Psi are closed and discrete
    CHECK(d_rank({F("x0 + x1 + x2")}) == 1);
}

TEST_CASE("member examples") {
    auto sols = member(vec({0, 1, 1}), F("x0 - x1"));
    REQUIRE(sols.size() == 1);
    CHECK(!sols[0].parametric());
    CHECK(sols[0].fixed == IndexAssignment{{0, 3}, {1, 1}});
    CHECK(brute_force_solutions(vec({0, 1, 1}), F("x0 - x1"), 6) == std::set<IndexAssignment>{{{0, 3}, {1, 1}}});

    CHECK(member(vec({Rational(1, 2)}), F("x0 - x1")).empty());

    sols = member(GammaElement{}, F("x0 - x1"));
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].parametric());
    CHECK(sols[0].witness == IndexAssignment{{0, 1}, {1, 1}});
    CHECK(member_in_window(GammaElement{}, F("x0 - x1"), 5).size() == 5);
}

TEST_CASE("member agrees with brute force on random instances") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> arity(1, 4), num(-4, 4), den(1, 3), idx(1, 5), coin(0, 3);
    for (int trial = 0; trial < 300; ++trial) {
        PsiFunction::Coeffs c;
        const int m = arity(rng);
        for (int i = 0; i < m; ++i) {
            int p = num(rng);
            if (p == 0) p = 1;
            c.emplace(static_cast<std::size_t>(i), Rational(p, coin(rng) ? 1 : den(rng)));
        }
        const PsiFunction f(c, coin(rng) ? GammaElement{} : vec({0, num(rng)}));
        IndexAssignment n;
        for (int i = 0; i < m; ++i) n[static_cast<std::size_t>(i)] = static_cast<std::size_t>(idx(rng));
        GammaElement gamma = f.eval(n);
        if (coin(rng) == 0) gamma += GammaElement::unit(static_cast<std::size_t>(idx(rng)), Rational(1, 2));
        CHECK(member_in_window(gamma, f, 7) == brute_force_solutions(gamma, f, 7));
    }
}

TEST_CASE("member_constrained on the two-bump set") {
    const ConstrainedImage x = two_bump_set();
    const auto w = member_constrained(vec({0, 1, 1}), x);
    REQUIRE(w);
    CHECK(x.constraints.holds(*w));
    CHECK(x.base.eval(*w) == vec({0, 1, 1}));
    CHECK(*w == IndexAssignment{{0, 2}, {1, 1}, {2, 3}, {3, 2}});

    CHECK_FALSE(member_constrained(vec({0, 2}), x));
    CHECK_FALSE(member_constrained(vec({1}), x));
    CHECK_FALSE(member_constrained(GammaElement{}, x));

    // brute-force: members are exactly e_a + e_b with 1 <= a < b
    for (const auto& [n, value] : enumerate_window(x, 7)) {
        CHECK(member_constrained(value, x));
        REQUIRE(value.coords().size() == 2);
        CHECK(value.leading_index() >= 1);
    }
}

TEST_CASE("member_constrained resolves parametric families through constraints") {
    // x0 - x1 = 0 needs n0 = n1; with n0 - n1 <= -1 it is impossible
    DifferenceConstraints c;
    c.diff_le(0, 1, -1);
    CHECK_FALSE(member_constrained(GammaElement{}, {F("x0 - x1"), c}));
    // x0 - x1 + x2 - x3 = 0 with n0 < n1 forces the pairing n0 = n3, n1 = n2
    const auto w = member_constrained(GammaElement{}, {F("x0 - x1 + x2 - x3"), c});
    REQUIRE(w);
    CHECK(w->at(0) < w->at(1));
    CHECK(F("x0 - x1 + x2 - x3").eval(*w).is_zero());
}

TEST_CASE("limit_point_probe") {
    CHECK(limit_point_probe(GammaElement{}, ImageUnion{F("x0 - x1")}, 8));
    CHECK_FALSE(limit_point_probe(vec({1}), ImageUnion{F("x0 - x1")}, 8));
    CHECK_FALSE(has_nearby_point(vec({1}), as_core(ImageUnion{F("x0 - x1")}), 1));

    const SmallCore x = as_core(two_bump_set());
    CHECK(limit_point_probe(vec({0, 1}), x, 8));
    CHECK(limit_point_probe(vec({0, 0, 0, 1}), x, 8));
    CHECK(limit_point_probe(GammaElement{}, x, 8));
    CHECK_FALSE(limit_point_probe(vec({0, 1, 1}), x, 8));  // isolated point of X
    CHECK_FALSE(limit_point_probe(vec({0, 2}), x, 8));
    CHECK_FALSE(limit_point_probe(vec({1}), x, 8));

    // a point constrained to a single value is isolated
    DifferenceConstraints eq;
    eq.diff_eq(0, 1, 0);
    CHECK_FALSE(limit_point_probe(GammaElement{}, as_core(ConstrainedImage{F("x0 - x1"), eq}), 4));
    CHECK_THROWS_AS(limit_point_probe(GammaElement{}, x, 0), DomainError);
}

TEST_CASE("recover") {
    const PsiFunction hidden = F("2x0 - x1 + [1]");
    std::vector<Evaluation> evals;
    for (const auto& args : recovery_probes(2)) {
        IndexAssignment n{{0, args[0]}, {1, args[1]}};
        evals.push_back({args, hidden.eval(n)});
    }
    CHECK(recover(evals) == hidden);

    const std::vector<Evaluation> constant{{{1, 1}, vec({7})}, {{2, 1}, vec({7})}, {{1, 2}, vec({7})}};
    const PsiFunction c = recover(constant);
    CHECK(c.arity() == 0);
    CHECK(c.offset() == vec({7}));

    auto mixed = evals;
    mixed[2].value = F("x0 + x1").eval({{0, 1}, {1, 2}});
    mixed.push_back({{3, 3}, hidden.eval({{0, 3}, {1, 3}})});
    CHECK_THROWS_AS(recover(mixed), DomainError);
    CHECK_THROWS_AS(recover({{{1, 1}, vec({1})}}), DomainError);  // underdetermined
}

TEST_CASE("equilateral_max_clique") {
    const std::vector<GammaElement> s1{vec({0, 1, 1}), vec({0, 1, 0, 1}), vec({0, 1, 0, 0, 1})};
    CHECK(equilateral_max_clique(s1, Phi::finite(3)).size() == 2);
    CHECK(equilateral_max_clique({vec({5})}, Phi::finite(2)).size() == 1);
    const std::vector<GammaElement> s2{staircase(1), staircase(2), staircase(3)};
    const auto c = equilateral_max_clique(s2, Phi::finite(2));
    CHECK(c == std::vector<GammaElement>{staircase(1), staircase(2)});
    CHECK_THROWS_AS(equilateral_max_clique(s2, Phi::infinity()), DomainError);
    CHECK_THROWS_AS(equilateral_max_clique({staircase(1), staircase(1)}, Phi::finite(2)), DomainError);
}

TEST_CASE("difference constraints") {
    DifferenceConstraints c;
    c.diff_le(0, 1, -1).diff_le(1, 2, -1).at_most(2, 2);
    CHECK_FALSE(c.satisfiable());
    DifferenceConstraints d;
    d.diff_le(0, 1, -1).diff_le(1, 2, -1).at_most(2, 3);
    const auto sol = d.solve();
    REQUIRE(sol);
    CHECK(d.holds(*sol));
    CHECK(*sol == IndexAssignment{{0, 1}, {1, 2}, {2, 3}});
    DifferenceConstraints e;
    e.exactly(4, 6);
    CHECK(e.solve({1})->at(4) == 6);
    CHECK(e.solve({1})->at(1) >= 1);
}

TEST_CASE("sample_image gives distinct members and stops on finite sets") {
    const SmallCore x = as_core(ImageUnion{parse_psi_function("x0 - x1")});
    const auto points = sample_image(x, 15);
    CHECK(points.size() == 15);
    CHECK(std::set<GammaElement>(points.begin(), points.end()).size() == 15);
    for (const auto& p : points) CHECK(is_member(p, x));
    CHECK(sample_image(x, 15) == points);

    const SmallCore single = as_core(ImageUnion{PsiFunction::constant(vec({1, 2}))});
    CHECK(sample_image(single, 5) == std::vector<GammaElement>{vec({1, 2})});
}
