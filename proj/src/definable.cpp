#include "logcouple/definable.hpp"

#include <algorithm>

namespace logcouple {

std::optional<GammaElement> Interval::width() const {
    if (!lo || !hi) return std::nullopt;
    return *hi - *lo;
}

SmallCore ThickenedSmall::small_core() const {
    return std::visit([](const auto& c) { return as_core(c); }, core);
}

std::optional<GammaElement> ThickenedSmall::sample() const {
    for (const auto& c : small_core()) {
        const auto labels = c.base.labels();
        const auto n = c.constraints.solve({labels.begin(), labels.end()});
        if (n) return c.base.eval(*n);
    }
    return std::nullopt;
}

bool ThickenedSmall::is_empty() const { return !sample().has_value(); }

bool ThickenedSmall::contains(const GammaElement& x) const {
    if (thicken.is_inf()) return is_member(x, small_core());
    // x is in core + Delta_{s^j 0} iff some core point shares its first j coordinates
    const std::size_t j = thicken.k();
    const auto target = x.dense(j);
    bool found = false;
    for (const auto& c : small_core()) {
        if (found) break;
        for_each_profile(c, j, [&](const CappedProfile& p) { found = found || p.truncation == target; });
    }
    return found;
}

namespace {

bool component_empty(const UnaryComponent& c) {
    return std::visit([](const auto& x) { return x.is_empty(); }, c);
}

bool component_contains(const UnaryComponent& c, const GammaElement& x) {
    return std::visit([&](const auto& v) { return v.contains(x); }, c);
}

}  // namespace

bool UnaryRep::is_empty() const { return std::all_of(components.begin(), components.end(), component_empty); }

bool UnaryRep::contains(const GammaElement& x) const {
    return std::any_of(components.begin(), components.end(),
                       [&](const UnaryComponent& c) { return component_contains(c, x); });
}

bool NaryRep::is_empty() const {
    return std::all_of(products.begin(), products.end(), [](const std::vector<UnaryRep>& p) {
        return std::any_of(p.begin(), p.end(), [](const UnaryRep& u) { return u.is_empty(); });
    });
}

bool NaryRep::contains(const std::vector<GammaElement>& x) const {
    if (x.size() != arity) throw DomainError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                                             std::to_string(arity));
    for (const auto& p : products) {
        bool all = true;
        for (std::size_t i = 0; i < arity && all; ++i) all = p[i].contains(x[i]);
        if (all) return true;
    }
    return false;
}

UnaryRep NaryRep::as_unary() const {
    if (arity != 1) throw DomainError("expected a unary representation");
    UnaryRep out;
    for (const auto& p : products)
        out.components.insert(out.components.end(), p[0].components.begin(), p[0].components.end());
    return out;
}

NaryRep NaryRep::from_unary(const UnaryRep& u) { return {1, {{u}}}; }

Dimension dim(const UnaryComponent& c, const Phi& phi) {
    if (component_empty(c)) return Dimension::empty();
    if (const auto* i = std::get_if<Interval>(&c)) {
        const auto w = i->width();
        return Dimension(!w || !in_delta(*w, phi) ? 1 : 0);
    }
    return Dimension(std::get<ThickenedSmall>(c).thicken >= phi ? 0 : 1);
}

Dimension dim(const UnaryRep& rep, const Phi& phi) {
    Dimension out = Dimension::empty();
    for (const auto& c : rep.components) out = std::max(out, dim(c, phi));
    return out;
}

Dimension dim_product(const std::vector<UnaryRep>& factors, const Phi& phi) {
    Dimension out(0);
    for (const auto& f : factors) out = out + dim(f, phi);
    return out;
}

Dimension dim(const NaryRep& rep, const Phi& phi) {
    Dimension out = Dimension::empty();
    for (const auto& p : rep.products) out = std::max(out, dim_product(p, phi));
    return out;
}

std::optional<Interval> wide_interval(const UnaryRep& rep, const Phi& phi) {
    for (const auto& c : rep.components) {
        if (const auto* i = std::get_if<Interval>(&c)) {
            if (i->is_empty()) continue;
            const auto w = i->width();
            if (!w || !in_delta(*w, phi)) return *i;
            continue;
        }
        const auto& t = std::get<ThickenedSmall>(c);
        if (t.thicken.is_inf()) continue;
        const auto centre = t.sample();
        if (!centre) continue;
        // (c - e_j, c + e_j) lies in c + Delta_{s^j 0}
        const GammaElement radius = GammaElement::unit(t.thicken.k());
        if (!in_delta(radius + radius, phi)) return Interval{*centre - radius, *centre + radius};
    }
    return std::nullopt;
}

bool has_wide_box(const NaryRep& rep, const Phi& phi) {
    for (const auto& p : rep.products)
        if (std::all_of(p.begin(), p.end(), [&](const UnaryRep& u) { return wide_interval(u, phi).has_value(); }))
            return true;
    return false;
}

UnaryRep unite(const UnaryRep& a, const UnaryRep& b) {
    UnaryRep out = a;
    out.components.insert(out.components.end(), b.components.begin(), b.components.end());
    return out;
}

NaryRep unite(const NaryRep& a, const NaryRep& b) {
    if (a.arity != b.arity) throw DomainError("union of representations of different arity");
    NaryRep out = a;
    out.products.insert(out.products.end(), b.products.begin(), b.products.end());
    return out;
}

NaryRep product(const NaryRep& a, const NaryRep& b) {
    NaryRep out{a.arity + b.arity, {}};
    for (const auto& p : a.products)
        for (const auto& q : b.products) {
            auto r = p;
            r.insert(r.end(), q.begin(), q.end());
            out.products.push_back(std::move(r));
        }
    return out;
}

std::optional<std::set<TruncatedVector>> quotient_image(const UnaryRep& rep, std::size_t k) {
    if (k == 0) throw DomainError("quotient_image requires k >= 1");
    const Phi phi = Phi::finite(k);
    std::set<TruncatedVector> out;
    for (const auto& c : rep.components) {
        if (component_empty(c)) continue;
        if (const auto* i = std::get_if<Interval>(&c)) {
            const auto w = i->width();
            if (!w || !in_delta(*w, phi)) return std::nullopt;
            // every point differs from lo by an element of Delta_phi
            out.insert(project(*i->lo, k));
            continue;
        }
        const auto& t = std::get<ThickenedSmall>(c);
        if (t.thicken < phi) return std::nullopt;
        const auto img = project_set(t.small_core(), k);
        out.insert(img.begin(), img.end());
    }
    return out;
}

namespace {

// Points of a claimed wide interval that must belong to the set.
std::vector<GammaElement> interval_probes(const Interval& i) {
    if (i.lo && i.hi) {
        const GammaElement w = *i.hi - *i.lo;
        return {*i.lo + Rational(1, 2) * w, *i.lo + Rational(1, 8) * w, *i.hi - Rational(1, 8) * w};
    }
    const GammaElement step = GammaElement::unit(0);
    if (i.lo) return {*i.lo + step, *i.lo + Rational(1000) * step};
    if (i.hi) return {*i.hi - step, *i.hi - Rational(1000) * step};
    return {GammaElement{}, step, -step};
}

}  // namespace

CrosscheckReport sst_crosscheck(const UnaryRep& rep, const Phi& phi) {
    CrosscheckReport r{phi, dim(rep, phi), Dimension::empty(), wide_interval(rep, phi), {}, {}, {}};
    if (r.wide_witness) r.by_interval = Dimension(1);
    else if (!rep.is_empty()) r.by_interval = Dimension(0);

    if (r.by_rules != r.by_interval)
        r.discrepancies.push_back("dimension rules give " + r.by_rules.to_string() + ", interval scan gives " +
                                  r.by_interval.to_string());
    if (r.wide_witness)
        for (const auto& x : interval_probes(*r.wide_witness))
            if (!rep.contains(x)) r.discrepancies.push_back("wide interval witness misses " + x.to_string());

    const bool small = r.by_rules <= Dimension(0);
    if (!phi.is_inf()) {
        const auto img = quotient_image(rep, phi.k());
        if (small && !img) r.discrepancies.push_back("small set with an infinite quotient image");
        if (!small && img) r.discrepancies.push_back("wide set with a finite quotient image");
        if (img) {
            r.quotient_size = img->size();
            if (img->empty() != rep.is_empty()) r.discrepancies.push_back("quotient image emptiness mismatch");
        }
    } else if (small) {
        ImageUnion cores;
        bool plain = true;
        for (const auto& c : rep.components) {
            if (component_empty(c)) continue;
            const auto* t = std::get_if<ThickenedSmall>(&c);
            const auto* u = t ? std::get_if<ImageUnion>(&t->core) : nullptr;
            if (!u) {
                plain = false;
                break;
            }
            cores.insert(cores.end(), u->begin(), u->end());
        }
        if (plain) {
            r.d_rank = d_rank(cores);
            if ((*r.d_rank == 0) != rep.is_empty()) r.discrepancies.push_back("d-rank emptiness mismatch");
        }
    }
    return r;
}

}  // namespace logcouple
