#include "doctest.h"
#include "oracles.hpp"

#include "logcouple/gensfun.hpp"
#include "logcouple/term.hpp"

#include <random>

using namespace logcouple;
using oracle::vec;

namespace {

GammaExt ev(std::string_view text, const Env& env = {}) { return eval(*parse_term(text), env); }

TermPtr random_term(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9), small(-3, 3), idx(1, 4);
    switch (pick(rng)) {
        case 0: return Term::var(rng() % 2 ? "x" : "y");
        case 1: {
            if (rng() % 7 == 0) return Term::constant(inf);
            return Term::constant(vec({small(rng), Rational(small(rng), 2)}));
        }
        case 2: case 3: return Term::add(random_term(rng, depth - 1), random_term(rng, depth - 1));
        case 4: return Term::neg(random_term(rng, depth - 1));
        case 5: return Term::delta(static_cast<std::size_t>(idx(rng)), random_term(rng, depth - 1));
        case 6: return Term::apply(Primitive::psi, random_term(rng, depth - 1));
        case 7: return Term::apply(Primitive::succ, random_term(rng, depth - 1));
        case 8: return Term::apply(Primitive::pred, random_term(rng, depth - 1));
        default: return Term::apply(Primitive::integ, random_term(rng, depth - 1));
    }
}

GammaElement random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(0, 4), num(-3, 3);
    std::vector<Rational> d(static_cast<std::size_t>(len(rng)));
    for (auto& q : d) q = Rational(num(rng), 1 + static_cast<long>(rng() % 2));
    return GammaElement::from_dense(d);
}

}  // namespace

TEST_CASE("term parsing") {
    CHECK(same_structure(*parse_term("psi(int(x))"),
                         *Term::apply(Primitive::psi, Term::apply(Primitive::integ, Term::var("x")))));
    CHECK(same_structure(*parse_term("x - s(x)"),
                         *Term::add(Term::var("x"), Term::neg(Term::apply(Primitive::succ, Term::var("x"))))));
    CHECK(same_structure(*parse_term("d3([1/2])"), *Term::delta(3, Term::constant(vec({Rational(1, 2)})))));
    CHECK(same_structure(*parse_term("-x + y"), *Term::add(Term::neg(Term::var("x")), Term::var("y"))));
    CHECK(same_structure(*parse_term("inf"), *Term::constant(inf)));
    CHECK(same_structure(*parse_term("[]"), *Term::constant(GammaElement{})));

    CHECK_THROWS_AS(parse_term("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse_term("d0(x)"), ParseError);
    CHECK_THROWS_AS(parse_term("x +"), ParseError);
    CHECK_THROWS_AS(parse_term("psi"), ParseError);
    CHECK_THROWS_AS(parse_term("(x"), ParseError);
    try {
        parse_term("x + bar(y)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("parse and print round trip") {
    CHECK(print_term(*parse_term("x - (y - z)")) == "x - (y - z)");
    CHECK(print_term(*parse_term("x - -y")) == "x - -y");
    CHECK(print_term(*parse_term("d2(x+[1,1/2])")) == "d2(x + [1, 1/2])");
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const TermPtr t = random_term(rng, 5);
        const std::string text = print_term(*t);
        CHECK_MESSAGE(same_structure(*parse_term(text), *t), text);
    }
}

TEST_CASE("term evaluation examples") {
    CHECK(ev("psi(int(x))", {{"x", GammaElement{}}}) == GammaExt(vec({1})));
    CHECK(ev("x - s(x)", {{"x", vec({1, 1})}}) == GammaExt(vec({0, 0, -1})));
    CHECK(ev("p(x)", {{"x", vec({2})}}).is_inf());
    CHECK(ev("d2([1,3])") == GammaExt(vec({Rational(1, 2), Rational(3, 2)})));
    CHECK(ev("x + inf", {{"x", vec({1})}}).is_inf());
    CHECK(ev("psi([])").is_inf());
    CHECK(ev("p(s(x))", {{"x", vec({1, 1, 0, 3})}}) == GammaExt(staircase(2)));
    CHECK(ev("p(s(x))", {{"x", vec({0, 5})}}).is_inf());
    CHECK_THROWS_AS(ev("x + y", {{"x", vec({1})}}), DomainError);
}

TEST_CASE("int agrees with t - s(t) and the evaluator agrees with the primitives") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
        const TermPtr t = random_term(rng, 3);
        Env env{{"x", random_element(rng)}, {"y", random_element(rng)}};
        const GammaExt v = eval(*t, env);
        CHECK(eval(*Term::apply(Primitive::integ, t), env) ==
              eval(*Term::sub(t, Term::apply(Primitive::succ, t)), env));
        CHECK(eval(*Term::apply(Primitive::psi, t), env) == psi(v));
        CHECK(eval(*Term::apply(Primitive::succ, t), env) == succ(v));
        CHECK(eval(*Term::apply(Primitive::pred, t), env) == pred(v));
        CHECK(eval(*Term::apply(Primitive::integ, t), env) == integral(v));
        CHECK(eval(*Term::delta(3, t), env) == divide(v, 3));
        CHECK(eval(*Term::neg(t), env) == negate(v));
    }
}

TEST_CASE("local_slope") {
    const auto affine = [](const SlopeResult& r) { return std::get_if<AffineReport>(&r); };

    const auto a = local_slope(*parse_term("psi(x)"), {{"x", vec({1})}}, vec({0, 1}));
    REQUIRE(affine(a));
    CHECK(affine(a)->slope.at("x") == Rational(0));
    CHECK(affine(a)->value == GammaExt(vec({1})));

    const auto b = local_slope(*parse_term("x + x"), {{"x", vec({3})}}, vec({5}));
    REQUIRE(affine(b));
    CHECK(affine(b)->slope.at("x") == Rational(2));
    CHECK(affine(b)->value == GammaExt(vec({6})));

    const GammaElement pt = vec({1, Rational(1, 2)});
    const auto c = local_slope(*parse_term("s(x)"), {{"x", pt}}, vec({0, 0, 1}));
    REQUIRE(affine(c));
    CHECK(affine(c)->slope.at("x") == Rational(0));
    CHECK(affine(c)->value == succ(GammaExt(pt)));

    const auto d = local_slope(*parse_term("x + x - d2(y)"), {{"x", vec({1})}, {"y", vec({2})}}, vec({1}));
    REQUIRE(affine(d));
    CHECK(affine(d)->slope.at("x") == Rational(2));
    CHECK(affine(d)->slope.at("y") == Rational(-1, 2));

    CHECK_FALSE(affine(local_slope(*parse_term("psi(x)"), {{"x", vec({0, 1})}}, vec({1}))));
    CHECK_FALSE(affine(local_slope(*parse_term("psi(x)"), {{"x", GammaElement{}}}, vec({1}))));
    CHECK_THROWS_AS(local_slope(*parse_term("x"), {{"x", vec({1})}}, vec({-1})), DomainError);
}

TEST_CASE("generalized s-function evaluation") {
    const GenSFunction f(1, {1, -1}, {{Rational(1), Rational(-2)}}, GammaElement{});
    CHECK(f.eval({PsiPoint(2)}) == GammaExt(vec({-1, 1, 1})));
    const GenSFunction g(1, {-1}, {{Rational(1)}}, GammaElement{});
    CHECK(g.eval({PsiPoint(1)}).is_inf());
    CHECK(g.eval({PsiPoint(3)}) == GammaExt(staircase(2)));
    const GenSFunction c(2, {-1, 0}, {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}, vec({7}));
    CHECK(c.eval({PsiPoint(1), PsiPoint(1)}) == GammaExt(vec({7})));
    CHECK_THROWS_AS(GenSFunction(1, {1, 1}, {{Rational(1), Rational(1)}}, GammaElement{}), DomainError);
    CHECK_THROWS_AS(GenSFunction(2, {1}, {{Rational(1)}}, GammaElement{}), DomainError);
    CHECK_THROWS_AS(f.eval({}), DomainError);
}

TEST_CASE("generalized s-function cover") {
    const GenSFunction f(1, {1, 0}, {{Rational(1), Rational(-1)}}, GammaElement{});
    const GenSCover cover = gensfun_cover(f);
    CHECK(cover.g == parse_psi_function("x0 - x1"));
    CHECK(f.eval({PsiPoint(3)}) == GammaExt(vec({0, 0, 0, 1})));
    CHECK(*cover.witness(f, {PsiPoint(3)}) == IndexAssignment{{0, 4}, {1, 3}});

    const GenSFunction c(0, {}, {}, vec({2}));
    CHECK(gensfun_cover(c).g == PsiFunction::constant(vec({2})));

    // random tables: every finite value is reproduced by the cover witness
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> num(-3, 3), shift(-2, 2), arg(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + rng() % 3;
        std::set<long> ks;
        while (ks.size() < 1 + rng() % 3) ks.insert(shift(rng));
        const std::vector<long> shifts(ks.begin(), ks.end());
        std::vector<std::vector<Rational>> q(m, std::vector<Rational>(shifts.size()));
        for (auto& row : q)
            for (auto& x : row) x = Rational(num(rng), 1 + static_cast<long>(rng() % 2));
        const GenSFunction h(m, shifts, q, vec({num(rng)}));
        const GenSCover cv = gensfun_cover(h);
        std::vector<PsiPoint> args;
        for (std::size_t i = 0; i < m; ++i) args.emplace_back(static_cast<std::size_t>(arg(rng)));
        const GammaExt v = h.eval(args);
        if (v.is_inf()) {
            CHECK_FALSE(cv.witness(h, args));
            continue;
        }
        const auto w = cv.witness(h, args);
        REQUIRE(w);
        CHECK(cv.g.eval(*w) == v.finite());
        CHECK(is_member(v.finite(), ImageUnion{cv.g}));
    }
}
