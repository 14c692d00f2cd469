#include "logcouple/identities.hpp"

#include <set>

namespace logcouple {

GammaElement random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-100, 100), den(1, 100);
    std::uniform_int_distribution<std::size_t> run(1, 5), count(0, 8);
    std::vector<Rational> dense;
    if (rng() % 4 == 0) dense.assign(run(rng), Rational(1));
    const std::size_t first = dense.size();
    std::uniform_int_distribution<std::size_t> pos(first, first + 11);
    const std::size_t extra = std::min(count(rng), 8 - first);
    std::set<std::size_t> spots;
    while (spots.size() < extra) spots.insert(pos(rng));
    for (auto p : spots) {
        if (dense.size() <= p) dense.resize(p + 1);
        dense[p] = Rational(num(rng), den(rng));
    }
    return GammaElement::from_dense(dense);
}

namespace {

class Recorder {
public:
    explicit Recorder(IdentityReport& r) : r_(r) {}

    void check(const std::string& name, bool ok, const std::string& detail) {
        ++r_.checked[name];
        if (ok) return;
        ++r_.failed[name];
        if (r_.examples.size() < 10) r_.examples.push_back(name + ": " + detail);
    }

private:
    IdentityReport& r_;
};

}  // namespace

IdentityReport run_identity_suite(std::size_t n, std::uint64_t seed) {
    IdentityReport report;
    report.elements = n;
    Recorder rec(report);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-100, 100), den(1, 100);
    std::uniform_int_distribution<std::size_t> ones(1, 14), coord(0, 12);

    for (std::size_t t = 0; t < n; ++t) {
        const GammaElement a = random_element(rng);
        // b is either independent or a small perturbation of a
        const GammaElement b = rng() % 2 ? random_element(rng) : a + GammaElement::unit(coord(rng), Rational(1, 3));
        const GammaExt ea(a), eb(b);
        const std::string at = " at a=" + a.to_string() + ", b=" + b.to_string();

        const GammaExt sa = succ(ea), sb = succ(eb);
        const GammaExt ia = integral(ea);
        rec.check("integral", ia == subtract(ea, sa), at);

        rec.check("fixed point", sa == psi(subtract(ea, sa)), at);
        for (const GammaExt& other : {GammaExt(staircase(ones(rng))), eb}) {
            if (other == sa || subtract(ea, other) == GammaExt(GammaElement{})) continue;
            rec.check("fixed point converse", psi(subtract(ea, other)) != other, at + ", beta=" + other.to_string());
        }

        if (sa < sb) rec.check("successor", psi(subtract(eb, ea)) == sa, at);
        if (sb < sa) rec.check("successor", psi(subtract(ea, eb)) == sb, at);

        rec.check("integral round trip", add(ia, psi(ia)) == ea, at);
        rec.check("integral nonzero", ia.is_finite() && !ia.finite().is_zero(), at);
        if (a != b) {
            const GammaExt ib = integral(eb);
            rec.check("integral monotone", (a < b) == (ia < ib), at);
        }

        rec.check("psi symmetric", psi(ea) == psi(negate(ea)), at);
        Rational q(num(rng), den(rng));
        if (q.is_zero()) q = 1;
        rec.check("psi scale invariant", psi(ea) == psi(GammaExt(q * a)), at + ", q=" + q.to_string());
        rec.check("psi ultrametric", psi(add(ea, eb)) >= std::min(psi(ea), psi(eb)), at);

        const std::size_t k = ones(rng);
        const GammaExt e(staircase(k));
        rec.check("succ on Psi", succ(e) == GammaExt(staircase(k + 1)), "n=" + std::to_string(k));
        rec.check("pred after succ", pred(succ(e)) == e, "n=" + std::to_string(k));
    }
    return report;
}

}  // namespace logcouple
