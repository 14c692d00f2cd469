// Acceptance run: one PASS/FAIL line per criterion.
#include "generators.hpp"
#include "oracles.hpp"

#include "logcouple/identities.hpp"
#include "logcouple/quotient.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace logcouple;
using oracle::vec;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;  // 0: no time limit
    bool counts;           // false: reported only
    std::function<Outcome()> run;
};

ConstrainedImage two_bump_set() {
    DifferenceConstraints c;
    c.diff_eq(0, 1, 1).diff_eq(2, 3, 1).diff_le(1, 3, -1);
    return {parse_psi_function("x0 - x1 + x2 - x3"), c};
}

// X' of the constrained set: {s(x) - x : x in Psi} u {0} = {e_m : m >= 1} u {0}.
bool in_two_bump_derived(const GammaElement& g) {
    if (g.is_zero()) return true;
    return g.coords().size() == 1 && g.leading_index() >= 1 && g.coeff(g.leading_index()) == Rational(1);
}

// Psi-functions with |I| <= 3, coefficients p/q with |p|, q <= 9.
std::vector<PsiFunction> shared_instances() {
    std::mt19937_64 rng(2024);
    std::vector<PsiFunction> out;
    std::uniform_int_distribution<std::size_t> arity(1, 3);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9), small(-2, 2), pick(0, 2);
    for (int i = 0; i < 200; ++i) {
        PsiFunction::Coeffs c;
        const std::size_t m = arity(rng);
        for (std::size_t l = 0; l < m; ++l) {
            // a third of the coefficients are +-1 so that zero-norm subsets occur
            int p = pick(rng) == 0 ? (rng() % 2 ? 1 : -1) : num(rng);
            if (p == 0) p = 1;
            c.emplace(l, Rational(p, pick(rng) == 0 ? den(rng) : 1));
        }
        out.emplace_back(c, vec({small(rng), small(rng), small(rng)}));
    }
    return out;
}

std::string count_text(std::size_t bad, std::size_t total, const std::string& what) {
    std::ostringstream s;
    s << bad << " " << what << " in " << total;
    return s.str();
}

Outcome identity_suite() {
    const IdentityReport r = run_identity_suite(10000, 1);
    std::size_t checks = 0;
    for (const auto& [name, n] : r.checked) checks += n;
    Outcome o{r.ok(), std::to_string(checks) + " identity instances on 10000 elements"};
    if (!r.ok()) o.detail += "; " + r.examples.front();
    return o;
}

Outcome two_bump_chain() {
    const ImageUnion x{parse_psi_function("x0 - x1 + x2 - x3")};
    const std::size_t rank = d_rank(x);
    const ImageUnion second = derived_set(derived_set(x));
    std::size_t bad = 0, probes = 0;
    // X'' = {0}
    if (!is_member(GammaElement{}, second)) ++bad;
    std::mt19937_64 rng(8);
    std::vector<GammaElement> others = sample_image(as_core(x), 60);
    const auto firsts = sample_image(as_core(derived_set(x)), 30);
    others.insert(others.end(), firsts.begin(), firsts.end());
    for (int i = 0; i < 60; ++i) others.push_back(gen::small_element(rng, 6, 3));
    for (const auto& g : others) {
        if (g.is_zero()) continue;
        ++probes;
        if (is_member(g, second)) ++bad;
    }

    const SmallCore fig = as_core(two_bump_set());
    std::size_t members = 0, rejected = 0, wrong = 0;
    for (std::size_t m = 1; m <= 12; ++m) {
        ++members;
        if (!limit_point_probe(GammaElement::unit(m), fig, 8)) ++wrong;
    }
    ++members;
    if (!limit_point_probe(GammaElement{}, fig, 8)) ++wrong;

    // non-members supported in the first 7 coordinates, where the depth-8 probe is exact
    std::vector<GammaElement> non;
    for (std::size_t a = 1; a < 7; ++a)
        for (std::size_t b = a + 1; b < 7; ++b) non.push_back(GammaElement::unit(a) + GammaElement::unit(b));
    for (std::size_t m = 0; m < 7; ++m) {
        non.push_back(GammaElement::unit(m, 2));
        non.push_back(GammaElement::unit(m, -1));
    }
    non.push_back(GammaElement::unit(0));
    while (non.size() < 50) {
        const GammaElement g = gen::small_element(rng, 7, 2);
        if (!in_two_bump_derived(g)) non.push_back(g);
    }
    for (const auto& g : non) {
        if (in_two_bump_derived(g)) continue;
        ++rejected;
        if (limit_point_probe(g, fig, 8)) ++wrong;
    }
    Outcome o;
    o.pass = rank == 3 && bad == 0 && wrong == 0 && rejected >= 50;
    o.detail = "d_rank " + std::to_string(rank) + "; X'' = {0} on " + std::to_string(probes + 1) +
               " probes (" + std::to_string(bad) + " wrong); constrained X': " + std::to_string(members) +
               " members accepted, " + std::to_string(rejected) + " non-members rejected, " + std::to_string(wrong) +
               " wrong";
    return o;
}

Outcome counting_polynomial() {
    const auto table = count_function(as_core(two_bump_set()), 1, 12);
    std::size_t bad = 0;
    for (const auto& [k, n] : table)
        if (2 * n != k * k - k + 2) ++bad;
    return {bad == 0 && table[4].second == 11,
            "k=1..12 counts " + [&] {
                std::string s;
                for (const auto& [k, n] : table) s += (s.empty() ? "" : ",") + std::to_string(n);
                return s;
            }() + " vs k^2/2 - k/2 + 1, " + std::to_string(bad) + " mismatches"};
}

Outcome derived_oracle(const std::vector<PsiFunction>& instances) {
    std::mt19937_64 rng(77);
    std::size_t members = 0, nonmembers = 0, bad = 0, short_instances = 0;
    for (const auto& f : instances) {
        const ImageUnion x{f};
        const ImageUnion d = derived_set(x);
        for (const auto& g : d)
            for (const auto& p : sample_image(as_core(ImageUnion{g}), 3)) {
                ++members;
                if (!limit_point_probe(p, x, 8)) ++bad;
            }
        const auto points = sample_image(as_core(x), 10);
        std::size_t found = 0;
        for (int attempt = 0; attempt < 2000 && found < 10; ++attempt) {
            GammaElement g = attempt % 2 == 0 && !points.empty()
                                 ? points[rng() % points.size()] +
                                       GammaElement::unit(rng() % 5, gen::small_rational(rng, 3))
                                 : gen::small_element(rng, 5, 3);
            if (is_member(g, x) || is_member(g, d)) continue;
            ++found;
            ++nonmembers;
            if (limit_point_probe(g, x, 8)) ++bad;
        }
        if (found < 10) ++short_instances;
    }
    return {bad == 0 && short_instances == 0,
            std::to_string(members) + " derived-set points, " + std::to_string(nonmembers) +
                " outside points, " + std::to_string(bad) + " discrepancies"};
}

Outcome membership_completeness(const std::vector<PsiFunction>& instances) {
    std::mt19937_64 rng(99);
    std::size_t queries = 0, bad = 0;
    for (const auto& f : instances) {
        const auto labels = f.labels();
        std::vector<Rational> q;
        for (auto l : labels) q.push_back(f.coeffs().at(l));
        const auto window = oracle::index_window(labels.size(), 6);
        std::vector<GammaElement> targets;
        for (int i = 0; i < 5; ++i) {
            const auto& n = window[rng() % window.size()];
            targets.push_back(oracle::staircase_sum(q, n, f.offset()));
        }
        for (int i = 0; i < 5; ++i)
            targets.push_back(targets[static_cast<std::size_t>(i)] +
                              GammaElement::unit(rng() % 7, gen::small_rational(rng, 3)));
        for (const auto& gamma : targets) {
            ++queries;
            std::set<IndexAssignment> brute, solved;
            for (const auto& n : window)
                if (oracle::staircase_sum(q, n, f.offset()) == gamma) {
                    IndexAssignment a;
                    for (std::size_t i = 0; i < labels.size(); ++i) a[labels[i]] = n[i];
                    brute.insert(a);
                }
            for (const auto& sol : member(gamma, f))
                for (const auto& a : sol.expand(f, 6)) solved.insert(a);
            if (brute != solved) ++bad;
        }
    }
    return {bad == 0, count_text(bad, queries, "disagreements with {1..6}^I enumeration")};
}

Outcome rank_bound(const std::vector<PsiFunction>& instances) {
    std::mt19937_64 rng(5);
    std::vector<PsiFunction> all = instances;
    for (int i = 0; i < 300; ++i) all.push_back(gen::psi_function(rng, 1 + rng() % 5, 2));
    std::size_t bad = 0, worst_gap = 0;
    for (const auto& f : all) {
        const std::size_t r = d_rank({f});
        if (r > f.arity()) ++bad;
        worst_gap = std::max(worst_gap, r);
    }
    return {bad == 0, count_text(bad, all.size(), "violations") + ", largest d_rank " + std::to_string(worst_gap)};
}

Outcome witness_construction() {
    std::mt19937_64 rng(17);
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
        GammaElement eps = logcouple::random_element(rng);
        if (eps.is_zero()) eps = GammaElement::unit(3);
        if (eps.sign() < 0) eps = -eps;
        const SmallDiffWitness w = small_diff_witness(eps);
        const GammaElement d0 = w.delta0.element(), d1 = w.delta1.element();
        const GammaExt pe = psi(GammaExt(eps));
        const bool ok = GammaExt(d0) >= pe && GammaExt(d1) >= pe && (d0 - d1).sign() > 0 &&
                        psi(GammaExt(d0 - d1)) > pe && as_psi_point(d0) && as_psi_point(d1);
        if (!ok) ++bad;
    }
    return {bad == 0, count_text(bad, 100, "failed witnesses")};
}

using Pair = std::pair<ImageUnion, ImageUnion>;

bool pair_contains(const std::set<Pair>& s, const GammaElement& a, const GammaElement& c) {
    for (const auto& [p, q] : s)
        if (is_member(a, p) && is_member(c, q)) return true;
    return false;
}

Outcome product_formula() {
    std::mt19937_64 rng(61);
    std::size_t probes = 0, bad = 0, probe_route = 0;
    for (int pair = 0; pair < 20; ++pair) {
        const auto closure = [](const ImageUnion& u) {
            ImageUnion out = u;
            const ImageUnion d = derived_set(u);
            out.insert(out.end(), d.begin(), d.end());
            return normalize(out);
        };
        const ImageUnion a = closure(gen::image_union(rng, 2, 3, 2));
        const ImageUnion c = closure(gen::image_union(rng, 2, 3, 2));
        std::vector<ImageUnion> da{a}, dc{c};
        for (int k = 0; k < 3; ++k) {
            da.push_back(derived_set(da.back()));
            dc.push_back(derived_set(dc.back()));
        }

        // left side: iterate (P x Q)' = P' x Q u P x Q' on closed factors
        std::set<Pair> level{{a, c}};
        for (std::size_t k = 1; k <= 3; ++k) {
            std::set<Pair> next;
            for (const auto& [p, q] : level) {
                const ImageUnion dp = normalize(derived_set(p)), dq = normalize(derived_set(q));
                if (!dp.empty()) next.insert({dp, q});
                if (!dq.empty()) next.insert({p, dq});
            }
            const std::set<Pair> previous = level;
            level = next;

            // probes: half from the right side, the rest from earlier levels and noise
            std::vector<std::pair<GammaElement, GammaElement>> points;
            for (std::size_t m = 0; m <= k; ++m) {
                const auto pa = sample_image(as_core(da[m]), 8);
                const auto pc = sample_image(as_core(dc[k - m]), 8);
                for (std::size_t i = 0; i < pa.size() && i < pc.size(); ++i) points.emplace_back(pa[i], pc[(i * 3) % pc.size()]);
            }
            const auto pa = sample_image(as_core(a), 30), pc = sample_image(as_core(c), 30);
            while (points.size() < 100) {
                GammaElement x = pa.empty() ? gen::small_element(rng, 4, 2) : pa[rng() % pa.size()];
                GammaElement y = pc.empty() ? gen::small_element(rng, 4, 2) : pc[rng() % pc.size()];
                if (rng() % 4 == 0) x = gen::small_element(rng, 4, 2);
                points.emplace_back(x, y);
            }
            points.resize(100);

            for (const auto& [x, y] : points) {
                ++probes;
                bool rhs = false;
                for (std::size_t m = 0; m <= k; ++m) rhs = rhs || (is_member(x, da[m]) && is_member(y, dc[k - m]));
                const bool lhs = pair_contains(level, x, y);
                if (lhs != rhs) ++bad;
                // derived set of the previous level through the limit-point probe,
                // depth past the last nonzero coordinate, where the probe is exact
                const auto depth = [](const GammaElement& g) { return 8 + g.support_end(); };
                bool probe = false;
                for (const auto& [p, q] : previous)
                    probe = probe || (limit_point_probe(x, p, depth(x)) && is_member(y, q)) ||
                            (is_member(x, p) && limit_point_probe(y, q, depth(y)));
                if (probe != lhs) ++probe_route;
            }
        }
    }
    return {bad == 0 && probe_route == 0,
            std::to_string(probes) + " probes over 20 pairs and k=1..3, " + std::to_string(bad) +
                " formula discrepancies, " + std::to_string(probe_route) + " limit-probe discrepancies"};
}

Outcome dimension_crosschecks() {
    std::mt19937_64 rng(300);
    std::vector<UnaryRep> reps;
    for (int i = 0; i < 300; ++i) reps.push_back(gen::unary_rep(rng));
    const auto grid = gen::phi_grid();
    std::size_t bad = 0, checks = 0;
    const auto check = [&](bool ok) {
        ++checks;
        if (!ok) ++bad;
    };
    for (std::size_t r = 0; r < reps.size(); ++r) {
        const UnaryRep& a = reps[r];
        const UnaryRep& b = reps[(r * 13 + 5) % reps.size()];
        for (std::size_t p = 0; p < grid.size(); ++p) {
            const Phi& phi = grid[p];
            check(sst_crosscheck(a, phi).consistent());
            check(dim(unite(a, b), phi) == std::max(dim(a, phi), dim(b, phi)));
            check(dim_product({a, b}, phi) == dim(a, phi) + dim(b, phi));
            check(dim(product(NaryRep::from_unary(a), NaryRep::from_unary(b)), phi) == dim(a, phi) + dim(b, phi));
            if (p + 1 < grid.size()) check(dim(a, phi) <= dim(a, grid[p + 1]));
            check(dim(a, phi).is_empty() == a.is_empty());
        }
        check(dim(a, Phi::finite(8)) == dim(a, Phi::infinity()));
        // (D1): a singleton has dimension 0
        if (const auto* t = std::get_if<ThickenedSmall>(a.components.empty() ? nullptr : &a.components[0])) {
            if (const auto s = t->sample()) {
                const UnaryRep single{{ThickenedSmall{ImageUnion{PsiFunction::constant(*s)}}}};
                for (const auto& phi : grid) check(dim(single, phi) == Dimension(0));
            }
        }
    }
    const UnaryRep line{{Interval{}}};
    for (const auto& phi : grid) {
        check(dim(UnaryRep{}, phi).is_empty());
        check(dim(line, phi) == Dimension(1));
    }
    return {bad == 0, count_text(bad, checks, "failed checks") + " (300 reps x 7 phi)"};
}

Outcome quotient_certificates() {
    std::mt19937_64 rng(301);
    std::size_t small = 0, bad = 0;
    for (int i = 0; i < 300; ++i) {
        const UnaryRep a = gen::unary_rep(rng);
        for (std::size_t k = 1; k <= 6; ++k) {
            if (Dimension(0) < dim(a, Phi::finite(k))) continue;
            ++small;
            const auto img = quotient_image(a, k);
            if (!img) {
                ++bad;
                continue;
            }
            std::set<TruncatedVector> brute;
            for (const auto& c : a.components) {
                if (const auto* iv = std::get_if<Interval>(&c)) {
                    if (!iv->is_empty()) brute.insert(project(*iv->lo + Rational(1, 3) * *iv->width(), k));
                    continue;
                }
                // generated lower bounds and gaps put every index pattern below k + 10
                for (const auto& y : gen::core_points(std::get<ThickenedSmall>(c).small_core(), k + 10))
                    brute.insert(project(y, k));
            }
            if (brute != *img) ++bad;
        }
    }
    return {bad == 0, count_text(bad, small, "mismatches") + " phi-small (rep, k) cases"};
}

Outcome recovery() {
    std::mt19937_64 rng(404);
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
        const PsiFunction hidden = gen::psi_function(rng, rng() % 5, 9, 4);
        std::vector<Evaluation> evals;
        for (const auto& args : recovery_probes(hidden.arity())) {
            IndexAssignment n;
            for (std::size_t l = 0; l < args.size(); ++l) n[l] = args[l];
            evals.push_back({args, hidden.eval(n)});
        }
        try {
            if (!(recover(evals) == hidden)) ++bad;
        } catch (const DomainError&) {
            ++bad;
        }
    }
    return {bad == 0, count_text(bad, 100, "functions not recovered exactly")};
}

Outcome anti_equilateral() {
    std::mt19937_64 rng(505);
    std::size_t grew = 0, grew_later = 0, runs = 0, largest = 0;
    for (int i = 0; i < 50; ++i) {
        const SmallCore x = as_core(gen::image_union(rng, 2, 2, 3));
        const auto small = sample_image(x, 12), large = sample_image(x, 24), larger = sample_image(x, 48);
        for (std::size_t j = 2; j <= 5; ++j) {
            ++runs;
            const std::size_t a = equilateral_max_clique(small, Phi::finite(j)).size();
            const std::size_t b = equilateral_max_clique(large, Phi::finite(j)).size();
            const std::size_t c = equilateral_max_clique(larger, Phi::finite(j)).size();
            largest = std::max(largest, c);
            if (a != b) ++grew;
            if (b != c) ++grew_later;
        }
    }
    return {grew == 0, count_text(grew, runs, "cases of growth from N=12 to N=24") + "; " +
                           count_text(grew_later, runs, "from N=24 to N=48") + ", largest clique " +
                           std::to_string(largest)};
}

}  // namespace

int main() {
    const auto instances = shared_instances();
    const std::vector<Criterion> criteria{
        {1, "identity suite", 10, true, identity_suite},
        {2, "two-bump derived chain", 30, true, two_bump_chain},
        {3, "counting polynomial", 30, true, counting_polynomial},
        {4, "derived set vs limit probe", 120, true, [&] { return derived_oracle(instances); }},
        {5, "membership completeness", 60, true, [&] { return membership_completeness(instances); }},
        {6, "d-rank bound", 0, true, [&] { return rank_bound(instances); }},
        {7, "small difference witness", 0, true, witness_construction},
        {8, "product derived formula", 0, true, product_formula},
        {9, "dimension crosschecks", 120, true, dimension_crosschecks},
        {10, "quotient certificates", 0, true, quotient_certificates},
        {11, "recovery", 0, true, recovery},
        {12, "anti-equilateral monitoring (reported)", 0, false, anti_equilateral},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_seconds == 0 || seconds < c.limit_seconds;
        const bool pass = o.pass && in_time;
        if (!pass && c.counts) ++failures;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " (" << seconds
             << " s" << (c.limit_seconds > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit_seconds)) + " s" : "")
             << ")";
        std::cout << line.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
