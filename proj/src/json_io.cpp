#include "logcouple/json_io.hpp"

#include <fstream>
#include <set>

namespace logcouple {

namespace {

[[noreturn]] void schema(const std::string& what) { throw DomainError("invalid JSON: " + what); }

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) schema(std::string("missing field '") + name + "'");
    return j.at(name);
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    schema("expected a rational as \"p/q\" or an integer");
}

long integer_from_json(const json& j, const char* what) {
    if (!j.is_number_integer()) schema(std::string("expected an integer for '") + what + "'");
    return j.get<long>();
}

std::size_t label_from_json(const json& j, const char* what) {
    const long v = integer_from_json(j, what);
    if (v < 0) schema(std::string("negative label for '") + what + "'");
    return static_cast<std::size_t>(v);
}

std::size_t label_from_name(const std::string& name) {
    if (name.size() < 2 || name[0] != 'x' || name.find_first_not_of("0123456789", 1) != std::string::npos)
        schema("variable names must look like x0, x1, ...: '" + name + "'");
    return std::stoul(name.substr(1));
}

std::string label_name(std::size_t l) { return "x" + std::to_string(l); }

const char* kind_name(DiffAtom::Kind k) {
    switch (k) {
        case DiffAtom::Kind::diff_le: return "diff_le";
        case DiffAtom::Kind::diff_eq: return "diff_eq";
        case DiffAtom::Kind::ge: return "ge";
        case DiffAtom::Kind::le: return "le";
    }
    return "?";
}

json component_to_json(const UnaryComponent& c) {
    if (const auto* i = std::get_if<Interval>(&c))
        return {{"kind", "interval"},
                {"lo", i->lo ? json(i->lo->to_string()) : json("-inf")},
                {"hi", i->hi ? json(i->hi->to_string()) : json("+inf")}};
    const auto& t = std::get<ThickenedSmall>(c);
    json core = std::visit([](const auto& x) { return to_json(x); }, t.core);
    return {{"kind", "small"}, {"core", core}, {"thicken", t.thicken.to_string()}};
}

std::optional<GammaElement> bound_from_json(const json& j, const char* marker) {
    if (j.is_string() && j.get<std::string>() == marker) return std::nullopt;
    return gamma_from_json(j);
}

UnaryComponent component_from_json(const json& j) {
    const json& kind = field(j, "kind");
    if (kind == "interval") return Interval{bound_from_json(field(j, "lo"), "-inf"), bound_from_json(field(j, "hi"), "+inf")};
    if (kind != "small") schema("unknown component kind " + kind.dump());
    const json& core = field(j, "core");
    ThickenedSmall t;
    if (core.is_array() || core.is_string()) t.core = image_union_from_json(core);
    else t.core = constrained_image_from_json(core);
    if (j.contains("thicken")) {
        if (!j.at("thicken").is_string()) schema("'thicken' must be a string");
        t.thicken = Phi::parse(j.at("thicken").get<std::string>());
    }
    return t;
}

UnaryRep factor_from_json(const json& j) {
    UnaryRep out;
    if (j.is_array())
        for (const auto& c : j) out.components.push_back(component_from_json(c));
    else out.components.push_back(component_from_json(j));
    return out;
}

}  // namespace

json to_json(const GammaExt& g) { return g.to_string(); }

GammaExt gamma_ext_from_json(const json& j) {
    if (j.is_string()) return parse_gamma_ext(j.get<std::string>());
    if (j.is_array()) {
        std::vector<Rational> d;
        for (const auto& x : j) d.push_back(rational_from_json(x));
        return GammaElement::from_dense(d);
    }
    schema("expected an element such as \"[1, 1/2]\" or \"inf\"");
}

GammaElement gamma_from_json(const json& j) {
    const GammaExt g = gamma_ext_from_json(j);
    if (g.is_inf()) schema("infinity is not allowed here");
    return g.finite();
}

json to_json(const PsiFunction& f) {
    json vars = json::array(), coeffs = json::object();
    for (const auto& [l, q] : f.coeffs()) {
        vars.push_back(label_name(l));
        coeffs[label_name(l)] = q.to_string();
    }
    return {{"vars", vars}, {"coeffs", coeffs}, {"offset", f.offset().to_string()}};
}

PsiFunction psi_function_from_json(const json& j) {
    if (j.is_string()) return parse_psi_function(j.get<std::string>());
    const json& coeffs = field(j, "coeffs");
    if (!coeffs.is_object()) schema("'coeffs' must be an object");
    PsiFunction::Coeffs c;
    for (const auto& [name, q] : coeffs.items()) {
        const Rational r = rational_from_json(q);
        if (!r.is_zero()) c[label_from_name(name)] = r;
    }
    if (j.contains("vars")) {
        std::set<std::size_t> declared;
        for (const auto& v : j.at("vars")) {
            if (!v.is_string()) schema("'vars' entries must be strings");
            declared.insert(label_from_name(v.get<std::string>()));
        }
        for (const auto& [l, q] : c)
            if (!declared.contains(l)) schema("coefficient for undeclared variable " + label_name(l));
    }
    return PsiFunction(c, j.contains("offset") ? gamma_from_json(j.at("offset")) : GammaElement{});
}

json to_json(const ConstrainedImage& c) {
    json out = to_json(c.base);
    json atoms = json::array();
    for (const auto& a : c.constraints.atoms()) {
        json atom = {{"kind", kind_name(a.kind)}, {"i", a.i}, {"c", a.c}};
        if (a.kind == DiffAtom::Kind::diff_le || a.kind == DiffAtom::Kind::diff_eq) atom["j"] = a.j;
        atoms.push_back(atom);
    }
    out["constraints"] = atoms;
    return out;
}

ConstrainedImage constrained_image_from_json(const json& j) {
    ConstrainedImage out{psi_function_from_json(j), {}};
    if (!j.is_object() || !j.contains("constraints")) return out;
    for (const auto& a : j.at("constraints")) {
        const json& kind = field(a, "kind");
        const std::size_t i = label_from_json(field(a, "i"), "i");
        const long c = integer_from_json(field(a, "c"), "c");
        if (kind == "diff_le") out.constraints.diff_le(i, label_from_json(field(a, "j"), "j"), c);
        else if (kind == "diff_eq") out.constraints.diff_eq(i, label_from_json(field(a, "j"), "j"), c);
        else if (kind == "ge") out.constraints.at_least(i, c);
        else if (kind == "le") out.constraints.at_most(i, c);
        else schema("unknown constraint kind " + kind.dump());
    }
    return out;
}

json to_json(const ImageUnion& u) {
    json out = json::array();
    for (const auto& f : u) out.push_back(to_json(f));
    return out;
}

ImageUnion image_union_from_json(const json& j) {
    if (j.is_string()) return parse_image_union(j.get<std::string>());
    if (!j.is_array()) schema("an image union must be an array");
    ImageUnion out;
    for (const auto& f : j) out.push_back(psi_function_from_json(f));
    return out;
}

json to_json(const GenSFunction& f) {
    json terms = json::array();
    for (std::size_t i = 0; i < f.arity(); ++i)
        for (std::size_t k = 0; k < f.shifts().size(); ++k)
            terms.push_back({{"var", i}, {"shift", f.shifts()[k]}, {"coeff", f.coeffs()[i][k].to_string()}});
    return {{"arity", f.arity()}, {"terms", terms}, {"offset", f.offset().to_string()}};
}

GenSFunction gensfun_from_json(const json& j) {
    const std::size_t arity = label_from_json(field(j, "arity"), "arity");
    std::vector<long> shifts;
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
    for (const auto& t : field(j, "terms")) {
        const std::size_t var = label_from_json(field(t, "var"), "var");
        if (var >= arity) schema("term variable " + std::to_string(var) + " out of range");
        const long shift = integer_from_json(field(t, "shift"), "shift");
        auto it = std::find(shifts.begin(), shifts.end(), shift);
        if (it == shifts.end()) it = shifts.insert(shifts.end(), shift);
        entries.emplace_back(var, static_cast<std::size_t>(it - shifts.begin()), rational_from_json(field(t, "coeff")));
    }
    std::vector<std::vector<Rational>> q(arity, std::vector<Rational>(shifts.size()));
    for (const auto& [i, k, c] : entries) q[i][k] += c;
    return GenSFunction(arity, shifts, q, j.contains("offset") ? gamma_ext_from_json(j.at("offset")) : GammaExt{});
}

json to_json(const NaryRep& rep) {
    json products = json::array();
    for (const auto& p : rep.products) {
        json factors = json::array();
        for (const auto& u : p) {
            if (u.components.size() == 1) {
                factors.push_back(component_to_json(u.components[0]));
                continue;
            }
            json alts = json::array();
            for (const auto& c : u.components) alts.push_back(component_to_json(c));
            factors.push_back(alts);
        }
        products.push_back(factors);
    }
    return {{"arity", rep.arity}, {"products", products}};
}

NaryRep rep_from_json(const json& j) {
    NaryRep out;
    out.arity = label_from_json(field(j, "arity"), "arity");
    if (out.arity == 0) schema("arity must be at least 1");
    for (const auto& p : field(j, "products")) {
        if (!p.is_array() || p.size() != out.arity)
            schema("each product needs exactly " + std::to_string(out.arity) + " factors");
        std::vector<UnaryRep> factors;
        for (const auto& f : p) factors.push_back(factor_from_json(f));
        out.products.push_back(std::move(factors));
    }
    return out;
}

json to_json(const TruncatedVector& v) {
    json out = json::array();
    for (const auto& q : v.entries) out.push_back(q.to_string());
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DomainError(path + ": " + e.what());
    }
}

}  // namespace logcouple
