#include "logcouple/term.hpp"

#include <cctype>

namespace logcouple {

TermPtr Term::var(std::string name) { return std::make_shared<const Term>(Var{std::move(name)}); }
TermPtr Term::constant(GammaExt value) { return std::make_shared<const Term>(Const{std::move(value)}); }
TermPtr Term::add(TermPtr lhs, TermPtr rhs) {
    return std::make_shared<const Term>(Add{std::move(lhs), std::move(rhs)});
}
TermPtr Term::sub(TermPtr lhs, TermPtr rhs) { return add(std::move(lhs), neg(std::move(rhs))); }
TermPtr Term::neg(TermPtr arg) { return std::make_shared<const Term>(Neg{std::move(arg)}); }
TermPtr Term::delta(std::size_t n, TermPtr arg) {
    if (n == 0) throw DomainError("d_n requires n >= 1");
    return std::make_shared<const Term>(Delta{n, std::move(arg)});
}
TermPtr Term::apply(Primitive fn, TermPtr arg) { return std::make_shared<const Term>(Apply{fn, std::move(arg)}); }

bool same_structure(const Term& a, const Term& b) {
    if (a.node().index() != b.node().index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node());
            if constexpr (std::is_same_v<T, Term::Var>) return x.name == y.name;
            else if constexpr (std::is_same_v<T, Term::Const>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, Term::Add>)
                return same_structure(*x.lhs, *y.lhs) && same_structure(*x.rhs, *y.rhs);
            else if constexpr (std::is_same_v<T, Term::Neg>) return same_structure(*x.arg, *y.arg);
            else if constexpr (std::is_same_v<T, Term::Delta>) return x.n == y.n && same_structure(*x.arg, *y.arg);
            else return x.fn == y.fn && same_structure(*x.arg, *y.arg);
        },
        a.node());
}

namespace {

const char* primitive_name(Primitive fn) {
    switch (fn) {
        case Primitive::psi: return "psi";
        case Primitive::succ: return "s";
        case Primitive::pred: return "p";
        case Primitive::integ: return "int";
    }
    return "?";
}

std::optional<Primitive> primitive_by_name(std::string_view name) {
    if (name == "psi") return Primitive::psi;
    if (name == "s") return Primitive::succ;
    if (name == "p") return Primitive::pred;
    if (name == "int") return Primitive::integ;
    return std::nullopt;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// "d" followed by digits only
std::optional<std::size_t> delta_index(std::string_view name) {
    if (name.size() < 2 || name[0] != 'd') return std::nullopt;
    std::size_t n = 0;
    for (char c : name.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    return n;
}

class TermParser {
public:
    explicit TermParser(std::string_view text) : s_(text) {}

    TermPtr run() {
        TermPtr t = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return t;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    TermPtr expr() {
        TermPtr t = unary();
        for (;;) {
            if (eat('+')) t = Term::add(t, unary());
            else if (eat('-')) t = Term::sub(t, unary());
            else return t;
        }
    }

    TermPtr unary() {
        if (eat('-')) return Term::neg(unary());
        return primary();
    }

    TermPtr primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            TermPtr t = expr();
            expect(')');
            return t;
        }
        if (c == '[') return Term::constant(scan_gamma_ext(s_, pos_));
        if (!ident_start(c)) throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);

        const std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        const std::string_view name = s_.substr(start, pos_ - start);
        if (name == "inf") return Term::constant(inf);

        const auto fn = primitive_by_name(name);
        const auto d = delta_index(name);
        skip();
        const bool call = pos_ < s_.size() && s_[pos_] == '(';
        if (!call) {
            if (fn || d) throw ParseError("'" + std::string(name) + "' needs an argument", pos_);
            return Term::var(std::string(name));
        }
        if (!fn && !d) throw ParseError("unknown function '" + std::string(name) + "'", start);
        if (d && *d == 0) throw ParseError("d_n requires n >= 1", start);
        ++pos_;
        TermPtr arg = expr();
        expect(')');
        return fn ? Term::apply(*fn, arg) : Term::delta(*d, arg);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string operand(const Term& t);

std::string print(const Term& t) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Term::Var>) return x.name;
            else if constexpr (std::is_same_v<T, Term::Const>) return x.value.to_string();
            else if constexpr (std::is_same_v<T, Term::Add>) {
                if (const auto* n = std::get_if<Term::Neg>(&x.rhs->node()))
                    return print(*x.lhs) + " - " + operand(*n->arg);
                return print(*x.lhs) + " + " + operand(*x.rhs);
            } else if constexpr (std::is_same_v<T, Term::Neg>) return "-" + operand(*x.arg);
            else if constexpr (std::is_same_v<T, Term::Delta>)
                return "d" + std::to_string(x.n) + "(" + print(*x.arg) + ")";
            else return std::string(primitive_name(x.fn)) + "(" + print(*x.arg) + ")";
        },
        t.node());
}

std::string operand(const Term& t) {
    if (std::holds_alternative<Term::Add>(t.node())) return "(" + print(t) + ")";
    return print(t);
}

void collect_vars(const Term& t, std::set<std::string>& out) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Term::Var>) out.insert(x.name);
            else if constexpr (std::is_same_v<T, Term::Add>) {
                collect_vars(*x.lhs, out);
                collect_vars(*x.rhs, out);
            } else if constexpr (!std::is_same_v<T, Term::Const>) collect_vars(*x.arg, out);
        },
        t.node());
}

}  // namespace

TermPtr parse_term(std::string_view text) { return TermParser(text).run(); }

std::string print_term(const Term& t) { return print(t); }

std::set<std::string> free_variables(const Term& t) {
    std::set<std::string> out;
    collect_vars(t, out);
    return out;
}

GammaExt eval(const Term& t, const Env& env) {
    return std::visit(
        [&](const auto& x) -> GammaExt {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Term::Var>) {
                const auto it = env.find(x.name);
                if (it == env.end()) throw DomainError("unbound variable '" + x.name + "'");
                return it->second;
            } else if constexpr (std::is_same_v<T, Term::Const>) return x.value;
            else if constexpr (std::is_same_v<T, Term::Add>) return add(eval(*x.lhs, env), eval(*x.rhs, env));
            else if constexpr (std::is_same_v<T, Term::Neg>) return negate(eval(*x.arg, env));
            else if constexpr (std::is_same_v<T, Term::Delta>) return divide(eval(*x.arg, env), x.n);
            else {
                const GammaExt v = eval(*x.arg, env);
                switch (x.fn) {
                    case Primitive::psi: return psi(v);
                    case Primitive::succ: return succ(v);
                    case Primitive::pred: return pred(v);
                    case Primitive::integ: return subtract(v, succ(v));
                }
                return inf;
            }
        },
        t.node());
}

namespace {

// c with diff == c * h, if one exists.
std::optional<Rational> ratio(const GammaElement& diff, const GammaElement& h) {
    if (diff.is_zero()) return Rational(0);
    const Rational c = diff.coeff(h.leading_index()) / h.coeff(h.leading_index());
    if (c * h != diff) return std::nullopt;
    return c;
}

}  // namespace

SlopeResult local_slope(const Term& t, const std::map<std::string, GammaElement>& at, const GammaElement& radius) {
    if (radius.sign() <= 0) throw DomainError("local_slope requires radius > 0");
    Env env;
    for (const auto& [name, v] : at) env.emplace(name, v);
    const auto vars = free_variables(t);
    for (const auto& v : vars)
        if (!at.contains(v)) throw DomainError("unbound variable '" + v + "'");

    const GammaExt value = eval(t, env);
    std::vector<GammaElement> offsets;
    for (int i = 1; i <= 4; ++i) {
        const GammaElement h = Rational(1, 1L << i) * radius;
        offsets.push_back(h);
        offsets.push_back(-h);
    }

    const auto probe = [&](const std::map<std::string, GammaElement>& shift) {
        Env e = env;
        for (const auto& [name, h] : shift) e[name] = add(e.at(name), h);
        return eval(t, e);
    };

    AffineReport report{{}, value};
    if (value.is_inf()) {
        // only the constant-infinity law is affine here
        for (const auto& v : vars)
            for (const auto& h : offsets)
                if (!probe({{v, h}}).is_inf()) return NotAffine{"infinite at the point but finite nearby"};
        for (const auto& v : vars) report.slope.emplace(v, Rational(0));
        return report;
    }

    const GammaElement& base = value.finite();
    for (const auto& v : vars) {
        std::optional<Rational> slope;
        for (const auto& h : offsets) {
            const GammaExt y = probe({{v, h}});
            if (y.is_inf()) return NotAffine{"infinite value near the point along " + v};
            const auto c = ratio(y.finite() - base, h);
            if (!c) return NotAffine{"difference along " + v + " is not a rational multiple of the offset"};
            if (slope && *slope != *c) return NotAffine{"slopes along " + v + " disagree"};
            slope = c;
        }
        report.slope.emplace(v, *slope);
    }

    if (vars.size() > 1) {
        Rational total;
        for (const auto& [v, c] : report.slope) total += c;
        for (const auto& h : offsets) {
            std::map<std::string, GammaElement> shift;
            for (const auto& v : vars) shift.emplace(v, h);
            const GammaExt y = probe(shift);
            if (y.is_inf() || y.finite() != base + total * h) return NotAffine{"diagonal probe breaks additivity"};
        }
    }
    return report;
}

}  // namespace logcouple
