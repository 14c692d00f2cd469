#include "cli.hpp"

#include "logcouple/identities.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace logcouple::cli {

namespace {

struct Options {
    bool json = false;
    std::uint64_t seed = 1;
    std::vector<std::string> positional;
    std::vector<std::string> env;
    std::string k;
    std::string phi;
    std::string rep;
    std::string image_union;
    std::string core;
    std::string radius;
    std::string evals;
    std::string hidden;
    std::string args;
    std::size_t n = 10000;
    std::size_t window = 12;
    std::size_t depth = 8;
    bool fit = false;
};

struct Context {
    Options& o;
    Session& session;
    std::ostream& out;
    std::ostream& err;
};

// A session name or element text.
GammaExt element_arg(const Context& c, const std::string& text) {
    const auto it = c.session.elements.find(text);
    if (it != c.session.elements.end()) return it->second;
    return parse_gamma_ext(text);
}

GammaElement finite_arg(const Context& c, const std::string& text) {
    const GammaExt g = element_arg(c, text);
    if (g.is_inf()) throw DomainError("expected a finite element, got inf");
    return g.finite();
}

const std::string& single_positional(const Context& c, const char* what) {
    if (c.o.positional.size() != 1) throw DomainError(std::string("expected exactly one ") + what);
    return c.o.positional[0];
}

std::pair<std::size_t, std::size_t> k_range(const std::string& text, std::pair<std::size_t, std::size_t> fallback) {
    if (text.empty()) return fallback;
    const auto dots = text.find("..");
    std::size_t a = 0, b = 0;
    try {
        a = std::stoul(text.substr(0, dots));
        b = dots == std::string::npos ? a : std::stoul(text.substr(dots + 2));
    } catch (const std::exception&) {
        throw ParseError("malformed range '" + text + "', expected a..b", 0);
    }
    if (a == 0 || b < a) throw DomainError("range must satisfy 1 <= a <= b");
    return {a, b};
}

std::vector<Phi> phi_list(const std::string& text) {
    if (text.empty()) throw DomainError("--phi is required");
    std::vector<Phi> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Phi::parse(item));
    return out;
}

NaryRep load_rep(const Context& c) {
    const auto it = c.session.reps.find(c.o.rep);
    if (it != c.session.reps.end()) return it->second;
    return rep_from_json(read_json_file(c.o.rep));
}

struct SetSource {
    SmallCore core;
    std::optional<ImageUnion> plain;
    std::optional<UnaryRep> rep;
};

SetSource load_source(const Context& c) {
    const int given = !c.o.image_union.empty() + !c.o.core.empty() + !c.o.rep.empty();
    if (given != 1) throw DomainError("give exactly one of --union, --core, --rep");
    SetSource s;
    if (!c.o.image_union.empty()) {
        s.plain = parse_image_union(c.o.image_union);
        s.core = as_core(*s.plain);
    } else if (!c.o.core.empty()) {
        const json j = read_json_file(c.o.core);
        if (j.is_array() || j.is_string()) {
            s.plain = image_union_from_json(j);
            s.core = as_core(*s.plain);
        } else {
            s.core = as_core(constrained_image_from_json(j));
        }
    } else {
        s.rep = load_rep(c).as_unary();
    }
    return s;
}

ImageUnion plain_union(const Context& c) {
    const SetSource s = load_source(c);
    if (!s.plain) throw DomainError("this command needs an image union (--union or --core with an array)");
    return *s.plain;
}

std::string assignment_text(const IndexAssignment& n) {
    std::string out;
    for (const auto& [l, v] : n) out += (out.empty() ? "" : " ") + ("x" + std::to_string(l)) + "=" + std::to_string(v);
    return out.empty() ? "-" : out;
}

json assignment_json(const IndexAssignment& n) {
    json out = json::object();
    for (const auto& [l, v] : n) out["x" + std::to_string(l)] = v;
    return out;
}

void print_element(const Context& c, const GammaExt& g) {
    if (c.o.json) c.out << json{{"value", g.to_string()}}.dump() << "\n";
    else c.out << g.to_string() << "\n";
}

int unary_op(const Context& c, GammaExt (*op)(const GammaExt&)) {
    print_element(c, op(element_arg(c, single_positional(c, "element"))));
    return ok;
}

Env build_env(const Context& c) {
    Env env = c.session.elements;
    for (const auto& binding : c.o.env) {
        const auto eq = binding.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("--env expects name=element, got '" + binding + "'", 0);
        env[binding.substr(0, eq)] = element_arg(c, binding.substr(eq + 1));
    }
    return env;
}

int cmd_eval(const Context& c) {
    const TermPtr t = parse_term(single_positional(c, "term"));
    print_element(c, eval(*t, build_env(c)));
    return ok;
}

int cmd_dset(const Context& c) {
    const ImageUnion d = derived_set(plain_union(c));
    if (c.o.json) {
        c.out << to_json(d).dump() << "\n";
        return ok;
    }
    for (const auto& f : d) c.out << f.to_string() << "\n";
    return ok;
}

int cmd_drank(const Context& c) {
    const std::size_t r = d_rank(plain_union(c));
    if (c.o.json) c.out << json{{"d_rank", r}}.dump() << "\n";
    else c.out << r << "\n";
    return ok;
}

int cmd_member(const Context& c) {
    const SetSource s = load_source(c);
    if (s.rep) {
        std::vector<GammaElement> point;
        for (const auto& p : c.o.positional) point.push_back(finite_arg(c, p));
        const NaryRep full = load_rep(c);
        const bool in = full.contains(point);
        if (c.o.json) c.out << json{{"member", in}}.dump() << "\n";
        else c.out << (in ? "true" : "false") << "\n";
        return ok;
    }
    const GammaElement gamma = finite_arg(c, single_positional(c, "element"));
    json witnesses = json::array();
    std::vector<std::string> lines;
    if (s.plain) {
        for (std::size_t i = 0; i < s.plain->size(); ++i)
            for (const auto& sol : member(gamma, (*s.plain)[i])) {
                std::string line = "component " + std::to_string(i) + "\t" + assignment_text(sol.fixed);
                json w = {{"component", i}, {"fixed", assignment_json(sol.fixed)}, {"witness", assignment_json(sol.witness)}};
                if (sol.parametric()) {
                    std::string tail;
                    for (auto l : sol.tail) tail += (tail.empty() ? "x" : ",x") + std::to_string(l);
                    line += "\ttail {" + tail + "} > " + std::to_string(sol.tail_floor) + "\te.g. " +
                            assignment_text(sol.witness);
                    w["tail"] = sol.tail;
                    w["tail_floor"] = sol.tail_floor;
                }
                lines.push_back(line);
                witnesses.push_back(w);
            }
    } else {
        for (std::size_t i = 0; i < s.core.size(); ++i)
            if (const auto w = member_constrained(gamma, s.core[i])) {
                lines.push_back("component " + std::to_string(i) + "\t" + assignment_text(*w));
                witnesses.push_back({{"component", i}, {"witness", assignment_json(*w)}});
            }
    }
    if (c.o.json) {
        c.out << json{{"member", !witnesses.empty()}, {"solutions", witnesses}}.dump() << "\n";
        return ok;
    }
    c.out << (witnesses.empty() ? "false" : "true") << "\n";
    for (const auto& l : lines) c.out << l << "\n";
    return ok;
}

int cmd_limit(const Context& c) {
    const GammaElement gamma = finite_arg(c, single_positional(c, "element"));
    const SetSource s = load_source(c);
    if (s.rep) throw DomainError("limit needs --union or --core");
    const bool hit = limit_point_probe(gamma, s.core, c.o.depth);
    if (c.o.json) c.out << json{{"limit_point", hit}, {"depth", c.o.depth}}.dump() << "\n";
    else c.out << (hit ? "true" : "false") << "\n";
    return ok;
}

int cmd_project(const Context& c) {
    const auto [k, k2] = k_range(c.o.k, {0, 0});
    if (k == 0 || k2 != k) throw DomainError("project needs --k K");
    const TruncatedVector v = project(finite_arg(c, single_positional(c, "element")), k);
    if (c.o.json) c.out << to_json(v).dump() << "\n";
    else c.out << v.to_string() << "\n";
    return ok;
}

std::set<TruncatedVector> quotient_of(const SetSource& s, std::size_t k) {
    if (!s.rep) return project_set(s.core, k);
    const auto img = quotient_image(*s.rep, k);
    if (!img) throw DomainError("the set is wide at s^" + std::to_string(k) + "0, so its quotient image is infinite");
    return *img;
}

int cmd_project_set(const Context& c) {
    const auto [k, k2] = k_range(c.o.k, {0, 0});
    if (k == 0 || k2 != k) throw DomainError("project-set needs --k K");
    const auto img = quotient_of(load_source(c), k);
    if (c.o.json) {
        json arr = json::array();
        for (const auto& v : img) arr.push_back(to_json(v));
        c.out << arr.dump() << "\n";
        return ok;
    }
    for (const auto& v : img) c.out << v.to_string() << "\n";
    return ok;
}

int cmd_count(const Context& c) {
    const auto [first, last] = k_range(c.o.k, {1, 8});
    const SetSource s = load_source(c);
    std::vector<std::pair<std::size_t, std::size_t>> table;
    for (std::size_t k = first; k <= last; ++k) table.emplace_back(k, quotient_of(s, k).size());
    const auto fit = c.o.fit ? fit_eventual_polynomial(table) : std::nullopt;
    if (c.o.json) {
        json rows = json::array();
        for (const auto& [k, n] : table) rows.push_back({{"k", k}, {"count", n}});
        json out = {{"counts", rows}};
        if (c.o.fit) out["fit"] = fit ? json{{"polynomial", fit->to_string()}, {"conjectural", true}} : json(nullptr);
        c.out << out.dump() << "\n";
        return ok;
    }
    c.out << "k\tcount\n";
    for (const auto& [k, n] : table) c.out << k << "\t" << n << "\n";
    if (c.o.fit) c.out << "# conjectural fit: " << (fit ? fit->to_string() : "none up to degree 4") << "\n";
    return ok;
}

int cmd_dim(const Context& c) {
    const NaryRep rep = load_rep(c);
    const auto phis = phi_list(c.o.phi);
    if (c.o.json) {
        json rows = json::array();
        for (const auto& phi : phis) rows.push_back({{"phi", phi.to_string()}, {"dim", dim(rep, phi).to_string()}});
        c.out << rows.dump() << "\n";
        return ok;
    }
    c.out << "phi\tdim\n";
    for (const auto& phi : phis) c.out << phi.to_string() << "\t" << dim(rep, phi).to_string() << "\n";
    return ok;
}

int cmd_crosscheck(const Context& c) {
    const UnaryRep rep = load_rep(c).as_unary();
    const auto phis = phi_list(c.o.phi);
    json rows = json::array();
    bool all_ok = true;
    if (!c.o.json) c.out << "phi\tdim_rules\tdim_interval\tquotient_size\td_rank\tstatus\n";
    for (const auto& phi : phis) {
        const CrosscheckReport r = sst_crosscheck(rep, phi);
        all_ok = all_ok && r.consistent();
        const auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
        if (c.o.json) {
            rows.push_back({{"phi", phi.to_string()},
                            {"dim_rules", r.by_rules.to_string()},
                            {"dim_interval", r.by_interval.to_string()},
                            {"quotient_size", r.quotient_size ? json(*r.quotient_size) : json(nullptr)},
                            {"d_rank", r.d_rank ? json(*r.d_rank) : json(nullptr)},
                            {"consistent", r.consistent()},
                            {"discrepancies", r.discrepancies}});
        } else {
            c.out << phi.to_string() << "\t" << r.by_rules.to_string() << "\t" << r.by_interval.to_string() << "\t"
                  << opt(r.quotient_size) << "\t" << opt(r.d_rank) << "\t"
                  << (r.consistent() ? "consistent" : "DISCREPANCY") << "\n";
        }
        for (const auto& d : r.discrepancies) c.err << "discrepancy at " << phi.to_string() << ": " << d << "\n";
    }
    if (c.o.json) c.out << rows.dump() << "\n";
    return all_ok ? ok : discrepancy;
}

int cmd_witness(const Context& c) {
    const GammaElement eps = finite_arg(c, single_positional(c, "element"));
    const SmallDiffWitness w = small_diff_witness(eps);
    const GammaElement d0 = w.delta0.element(), d1 = w.delta1.element();
    if (c.o.json) {
        c.out << json{{"delta0", d0.to_string()}, {"delta1", d1.to_string()}, {"difference", (d0 - d1).to_string()}}.dump()
              << "\n";
        return ok;
    }
    c.out << "name\tvalue\n"
          << "delta0\t" << d0.to_string() << "\n"
          << "delta1\t" << d1.to_string() << "\n"
          << "difference\t" << (d0 - d1).to_string() << "\n";
    return ok;
}

int cmd_clique(const Context& c) {
    const auto phis = phi_list(c.o.phi);
    if (phis.size() != 1) throw DomainError("clique needs a single --phi");
    std::vector<GammaElement> sample;
    if (!c.o.positional.empty()) {
        for (const auto& p : c.o.positional) sample.push_back(finite_arg(c, p));
    } else {
        const SetSource s = load_source(c);
        if (s.rep) throw DomainError("clique samples from --union or --core");
        sample = sample_image(s.core, c.o.window);
    }
    const auto clique = equilateral_max_clique(sample, phis[0]);
    if (c.o.json) {
        json members = json::array();
        for (const auto& g : clique) members.push_back(g.to_string());
        c.out << json{{"sample_size", sample.size()}, {"clique_size", clique.size()}, {"clique", members}}.dump() << "\n";
        return ok;
    }
    c.out << clique.size() << "\n";
    for (const auto& g : clique) c.out << g.to_string() << "\n";
    return ok;
}

int cmd_recover(const Context& c) {
    std::vector<Evaluation> evals;
    if (!c.o.hidden.empty()) {
        const PsiFunction hidden = parse_psi_function(c.o.hidden);
        const auto labels = hidden.labels();
        const std::size_t arity = labels.empty() ? 0 : labels.back() + 1;
        for (const auto& args : recovery_probes(arity)) {
            IndexAssignment n;
            for (std::size_t i = 0; i < arity; ++i) n[i] = args[i];
            evals.push_back({args, hidden.eval(n)});
        }
    } else if (!c.o.evals.empty()) {
        const json j = read_json_file(c.o.evals);
        if (!j.is_array()) throw DomainError("invalid JSON: evaluations must be an array");
        for (const auto& e : j) {
            if (!e.is_object() || !e.contains("args") || !e.contains("value") || !e.at("args").is_array())
                throw DomainError("invalid JSON: each evaluation needs \"args\" and \"value\"");
            Evaluation ev{{}, gamma_from_json(e.at("value"))};
            for (const auto& a : e.at("args")) {
                if (!a.is_number_unsigned() || a.get<std::size_t>() == 0)
                    throw DomainError("invalid JSON: args must be positive integers");
                ev.args.push_back(a.get<std::size_t>());
            }
            evals.push_back(std::move(ev));
        }
    } else {
        throw DomainError("recover needs --evals FILE or --hidden FUNCTION");
    }
    const PsiFunction f = recover(evals);
    if (c.o.json) c.out << to_json(f).dump() << "\n";
    else c.out << f.to_string() << "\n";
    return ok;
}

int cmd_identities(const Context& c) {
    const IdentityReport r = run_identity_suite(c.o.n, c.o.seed);
    if (c.o.json) {
        json rows = json::object();
        for (const auto& [name, n] : r.checked) {
            const auto f = r.failed.find(name);
            rows[name] = {{"checked", n}, {"failed", f == r.failed.end() ? 0 : f->second}};
        }
        c.out << json{{"elements", r.elements}, {"seed", c.o.seed}, {"identities", rows}, {"ok", r.ok()}}.dump() << "\n";
    } else {
        c.out << "identity\tchecked\tfailed\n";
        for (const auto& [name, n] : r.checked) {
            const auto f = r.failed.find(name);
            c.out << name << "\t" << n << "\t" << (f == r.failed.end() ? 0 : f->second) << "\n";
        }
    }
    for (const auto& e : r.examples) c.err << "counterexample: " << e << "\n";
    return r.ok() ? ok : discrepancy;
}

std::vector<PsiPoint> psi_points(const std::string& text) {
    std::vector<PsiPoint> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const long n = std::stol(item);
            if (n < 1) throw DomainError("Psi arguments are indices n >= 1 of E_n");
            out.emplace_back(static_cast<std::size_t>(n));
        } catch (const std::logic_error&) {
            throw ParseError("malformed index list '" + text + "'", 0);
        }
    }
    return out;
}

int cmd_gensfun(const Context& c) {
    const GenSFunction f = gensfun_from_json(read_json_file(single_positional(c, "JSON file")));
    print_element(c, f.eval(psi_points(c.o.args)));
    return ok;
}

int cmd_cover(const Context& c) {
    const GenSFunction f = gensfun_from_json(read_json_file(single_positional(c, "JSON file")));
    const GenSCover cover = gensfun_cover(f);
    const auto args = psi_points(c.o.args);
    const auto witness = args.empty() ? std::nullopt : cover.witness(f, args);
    if (c.o.json) {
        json sources = json::array();
        for (const auto& [i, j] : cover.sources) sources.push_back({{"var", i}, {"shift", f.shifts()[j]}});
        json out = {{"cover", to_json(cover.g)}, {"sources", sources}};
        if (witness) out["witness"] = assignment_json(*witness);
        c.out << out.dump() << "\n";
        return ok;
    }
    c.out << cover.g.to_string() << "\n";
    for (std::size_t l = 0; l < cover.sources.size(); ++l)
        c.out << "x" << l << "\ts^" << f.shifts()[cover.sources[l].second] << "(a" << cover.sources[l].first << ")\n";
    if (witness) c.out << "witness\t" << assignment_text(*witness) << "\n";
    return ok;
}

int cmd_slope(const Context& c) {
    const TermPtr t = parse_term(single_positional(c, "term"));
    std::map<std::string, GammaElement> at;
    for (const auto& [name, v] : build_env(c)) {
        if (v.is_inf()) throw DomainError("local_slope needs finite values, '" + name + "' is inf");
        at.emplace(name, v.finite());
    }
    if (c.o.radius.empty()) throw DomainError("slope needs --radius");
    const SlopeResult r = local_slope(*t, at, finite_arg(c, c.o.radius));
    if (const auto* n = std::get_if<NotAffine>(&r)) {
        if (c.o.json) c.out << json{{"affine", false}, {"reason", n->reason}}.dump() << "\n";
        else c.out << "not affine on probe set: " << n->reason << "\n";
        return ok;
    }
    const auto& a = std::get<AffineReport>(r);
    if (c.o.json) {
        json slopes = json::object();
        for (const auto& [v, q] : a.slope) slopes[v] = q.to_string();
        c.out << json{{"affine", true}, {"slope", slopes}, {"value", a.value.to_string()}}.dump() << "\n";
        return ok;
    }
    c.out << "name\tvalue\n";
    for (const auto& [v, q] : a.slope) c.out << "slope " << v << "\t" << q.to_string() << "\n";
    c.out << "value\t" << a.value.to_string() << "\n";
    return ok;
}

void add_source_options(CLI::App* sub, Options& o) {
    sub->add_option("--union", o.image_union, "image union as ;-separated linear forms, e.g. \"x0 - x1; x0\"");
    sub->add_option("--core", o.core, "JSON file with an image union or a constrained image");
    sub->add_option("--rep", o.rep, "JSON file (or session name) with a representation");
}

}  // namespace

int run(const std::vector<std::string>& args, Session& session, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Computations in the standard model of the theory of the logarithmic asymptotic couple", "logcouple"};
    app.fallthrough();
    app.require_subcommand(1);
    app.allow_extras();
    app.add_flag("--json", o.json, "print JSON instead of text");
    app.add_option("--seed", o.seed, "seed for pseudo-random generation");

    using Handler = int (*)(const Context&);
    std::vector<std::pair<CLI::App*, Handler>> verbs;
    const auto verb = [&](const char* name, const char* help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        verbs.emplace_back(sub, h);
        return sub;
    };
    // Operands are collected as extras: CLI11 would split "[1,2]" into a list,
    // and terms such as "-x" look like flags.
    const auto elements = [&](CLI::App* sub, const char* what) {
        sub->allow_extras();
        sub->footer(std::string("operands: ") + what);
    };

    auto* ev = verb("eval", "evaluate a term", cmd_eval);
    elements(ev, "term, e.g. \"psi(int(x))\"");
    ev->add_option("--env", o.env, "binding name=element (repeatable)")->allow_extra_args(false);

    elements(verb("psi", "psi of an element", [](const Context& c) { return unary_op(c, psi); }), "element");
    elements(verb("int", "asymptotic integral of an element", [](const Context& c) { return unary_op(c, integral); }),
             "element");
    elements(verb("s", "successor s = psi o int", [](const Context& c) { return unary_op(c, succ); }), "element");
    elements(verb("p", "predecessor on Psi, inf elsewhere", [](const Context& c) { return unary_op(c, pred); }),
             "element");

    add_source_options(verb("dset", "exact derived set of an image union", cmd_dset), o);
    add_source_options(verb("drank", "d-rank of an image union", cmd_drank), o);

    auto* mem = verb("member", "membership with index witnesses", cmd_member);
    elements(mem, "element (one per coordinate for --rep)");
    add_source_options(mem, o);

    auto* lim = verb("limit", "limit point probe", cmd_limit);
    elements(lim, "element");
    add_source_options(lim, o);
    lim->add_option("--depth", o.depth, "probe depth K (default 8)");

    auto* proj = verb("project", "truncation to the first k coordinates", cmd_project);
    elements(proj, "element");
    proj->add_option("--k", o.k, "k");

    auto* ps = verb("project-set", "image of a small set in the quotient by Delta_{s^k 0}", cmd_project_set);
    add_source_options(ps, o);
    ps->add_option("--k", o.k, "k");

    auto* cnt = verb("count", "counting function k -> |image in the quotient|", cmd_count);
    add_source_options(cnt, o);
    cnt->add_option("--k", o.k, "range a..b (default 1..8)");
    cnt->add_flag("--fit", o.fit, "append a conjectural polynomial fit");

    auto* dm = verb("dim", "dimension under each phi", cmd_dim);
    dm->add_option("--rep", o.rep, "JSON file (or session name) with a representation")->required();
    dm->add_option("--phi", o.phi, "comma-separated list, e.g. s^3,inf")->required();

    auto* cc = verb("crosscheck", "compare dimension routes and certificates", cmd_crosscheck);
    cc->add_option("--rep", o.rep, "JSON file (or session name) with a unary representation")->required();
    cc->add_option("--phi", o.phi, "comma-separated list, e.g. s^1,s^5,inf")->required();

    elements(verb("witness", "delta0, delta1 in Psi with 0 < delta0 - delta1 smaller than eps in psi", cmd_witness),
             "eps > 0");

    auto* cl = verb("clique", "largest phi-equilateral subset of a sample", cmd_clique);
    elements(cl, "sample points (otherwise sampled from --union/--core)");
    add_source_options(cl, o);
    cl->add_option("--phi", o.phi, "phi")->required();
    cl->add_option("--window", o.window, "number of sampled points (default 12)");

    auto* rc = verb("recover", "recover a Psi-function from evaluations", cmd_recover);
    rc->add_option("--evals", o.evals, "JSON array of {\"args\": [n0,...], \"value\": elem}");
    rc->add_option("--hidden", o.hidden, "evaluate this function at the standard probes and recover it");

    auto* id = verb("identities", "run the identity suite on random elements", cmd_identities);
    id->add_option("--n", o.n, "number of elements (default 10000)");

    auto* gs = verb("gensfun", "evaluate a generalized s-function", cmd_gensfun);
    elements(gs, "JSON file");
    gs->add_option("--args", o.args, "comma-separated indices n (argument E_n)")->required();

    auto* cv = verb("cover", "Psi-function cover of a generalized s-function", cmd_cover);
    elements(cv, "JSON file");
    cv->add_option("--args", o.args, "indices n for a cover witness");

    auto* sl = verb("slope", "probe a term for a local affine law", cmd_slope);
    elements(sl, "term");
    sl->add_option("--env", o.env, "binding name=element (repeatable)")->allow_extra_args(false);
    sl->add_option("--radius", o.radius, "probe radius > 0");

    auto* rp = verb("repl", "interactive session (type help inside)", [](const Context& c) {
        return repl(std::cin, c.out, c.err, false);
    });
    (void)rp;

    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--seed") {
            ++i;
            continue;
        }
        if (args[i].starts_with("-")) continue;
        if (!app.get_subcommand_no_throw(args[i])) {
            err << "error: unknown command '" << args[i] << "'\n";
            return invalid_input;
        }
        break;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return invalid_input;
    }

    Context ctx{o, session, out, err};
    try {
        for (const auto& [sub, handler] : verbs) {
            if (!sub->parsed()) continue;
            o.positional = sub->remaining();
            const auto rest = app.remaining();
            o.positional.insert(o.positional.end(), rest.begin(), rest.end());
            for (const auto& a : o.positional)
                if (a.starts_with("--")) throw DomainError("unknown option " + a);
            return handler(ctx);
        }
    } catch (const std::invalid_argument& e) {  // ParseError, DomainError
        err << "error: " << e.what() << "\n";
        return invalid_input;
    } catch (const json::exception& e) {
        err << "error: invalid JSON: " << e.what() << "\n";
        return invalid_input;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return invalid_input;
    }
    return invalid_input;
}

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool in_word = false;
    char quote = 0;
    for (char ch : line) {
        if (quote) {
            if (ch == quote) quote = 0;
            else cur += ch;
        } else if (ch == '"' || ch == '\'') {
            quote = ch;
            in_word = true;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            if (in_word) out.push_back(cur);
            cur.clear();
            in_word = false;
        } else {
            cur += ch;
            in_word = true;
        }
    }
    if (quote) throw ParseError("unterminated quote", line.size());
    if (in_word) out.push_back(cur);
    return out;
}

namespace {

const char* repl_help =
    "let NAME = TERM      evaluate a term and bind the result\n"
    "rep NAME = FILE      load a representation under a name\n"
    "env                  list bindings\n"
    "save FILE | load FILE\n"
    "quit\n"
    "anything else is a command line, e.g.  psi [0,1]  or  dim --rep NAME --phi s^2,inf\n";

void save_session(const Session& s, const std::string& path) {
    json elements = json::object(), reps = json::object();
    for (const auto& [name, v] : s.elements) elements[name] = v.to_string();
    for (const auto& [name, r] : s.reps) reps[name] = to_json(r);
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write " + path);
    f << json{{"elements", elements}, {"reps", reps}}.dump(2) << "\n";
}

void load_session(Session& s, const std::string& path) {
    const json j = read_json_file(path);
    if (!j.is_object()) throw DomainError("invalid JSON: a session file is an object");
    Session loaded;
    if (j.contains("elements"))
        for (const auto& [name, v] : j.at("elements").items()) loaded.elements[name] = gamma_ext_from_json(v);
    if (j.contains("reps"))
        for (const auto& [name, r] : j.at("reps").items()) loaded.reps[name] = rep_from_json(r);
    s = std::move(loaded);
}

// "NAME = REST" after a keyword
std::pair<std::string, std::string> binding(const std::string& rest) {
    const auto eq = rest.find('=');
    if (eq == std::string::npos) throw ParseError("expected NAME = ...", rest.size());
    const auto trim = [](std::string x) {
        const auto a = x.find_first_not_of(" \t"), b = x.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
    };
    std::string name = trim(rest.substr(0, eq));
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
        throw ParseError("bad name '" + name + "'", 0);
    return {name, trim(rest.substr(eq + 1))};
}

}  // namespace

int repl(std::istream& in, std::ostream& out, std::ostream& err, bool prompt) {
    Session session;
    std::string line;
    int last = ok;
    while (true) {
        if (prompt) out << "> " << std::flush;
        if (!std::getline(in, line)) break;
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const std::string body = line.substr(start);
        const std::string head = body.substr(0, body.find_first_of(" \t"));
        const std::string rest = head.size() < body.size() ? body.substr(head.size() + 1) : "";
        try {
            if (head == "quit" || head == "exit") break;
            if (head == "help") {
                out << repl_help;
            } else if (head == "let") {
                const auto [name, text] = binding(rest);
                session.elements[name] = eval(*parse_term(text), session.elements);
                out << name << " = " << session.elements[name].to_string() << "\n";
            } else if (head == "rep") {
                const auto [name, path] = binding(rest);
                session.reps[name] = rep_from_json(read_json_file(path));
                out << name << ": arity " << session.reps[name].arity << "\n";
            } else if (head == "env") {
                for (const auto& [name, v] : session.elements) out << name << " = " << v.to_string() << "\n";
                for (const auto& [name, r] : session.reps) out << name << ": representation, arity " << r.arity << "\n";
            } else if (head == "save") {
                save_session(session, split_words(rest).at(0));
            } else if (head == "load") {
                load_session(session, split_words(rest).at(0));
            } else {
                last = run(split_words(body), session, out, err);
                continue;
            }
            last = ok;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            last = invalid_input;
        }
    }
    return last;
}

}  // namespace logcouple::cli
