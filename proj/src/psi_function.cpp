#include "logcouple/psi_function.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cctype>
#include <numeric>

namespace logcouple {

PsiFunction::PsiFunction(Coeffs coeffs, GammaElement offset)
    : coeffs_(std::move(coeffs)), offset_(std::move(offset)) {
    for (const auto& [label, q] : coeffs_)
        if (q.is_zero())
            throw DomainError("Psi-function coefficient for x" + std::to_string(label) + " is zero");
}

std::vector<std::size_t> PsiFunction::labels() const {
    std::vector<std::size_t> out;
    out.reserve(coeffs_.size());
    for (const auto& [label, q] : coeffs_) out.push_back(label);
    return out;
}

Rational PsiFunction::norm() const {
    Rational sum;
    for (const auto& [label, q] : coeffs_) sum += q;
    return sum;
}

PsiFunction PsiFunction::restrict(const std::set<std::size_t>& subset) const {
    Coeffs kept;
    for (auto label : subset) {
        const auto it = coeffs_.find(label);
        if (it == coeffs_.end())
            throw DomainError("restrict: x" + std::to_string(label) + " is not in the index set");
        kept.emplace(label, it->second);
    }
    return PsiFunction(std::move(kept), offset_);
}

GammaElement PsiFunction::eval(const IndexAssignment& n) const {
    std::size_t len = offset_.support_end();
    for (const auto& [label, q] : coeffs_) len = std::max(len, n.at(label));
    std::vector<Rational> dense = offset_.dense(len);
    for (const auto& [label, q] : coeffs_) {
        const std::size_t ones = n.at(label);
        if (ones == 0) throw DomainError("Psi indices start at 1");
        for (std::size_t j = 0; j < ones; ++j) dense[j] += q;
    }
    return GammaElement::from_dense(dense);
}

std::vector<Rational> PsiFunction::truncated_eval(const IndexAssignment& n, std::size_t k) const {
    std::vector<Rational> dense = offset_.dense(k);
    for (const auto& [label, q] : coeffs_) {
        const std::size_t ones = std::min(n.at(label), k);
        for (std::size_t j = 0; j < ones; ++j) dense[j] += q;
    }
    return dense;
}

std::string PsiFunction::to_string() const {
    std::string out;
    for (const auto& [label, q] : coeffs_) {
        const bool negative = q.sign() < 0;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        const Rational mag = negative ? -q : q;
        if (mag != Rational(1)) out += mag.is_integer() ? mag.to_string() : mag.to_string() + "*";
        out += "x" + std::to_string(label);
    }
    if (out.empty()) return offset_.to_string();
    if (!offset_.is_zero()) out += " + " + offset_.to_string();
    return out;
}

namespace {

class LinearFormScanner {
public:
    explicit LinearFormScanner(std::string_view text) : text_(text) {}

    PsiFunction parse() {
        PsiFunction::Coeffs coeffs;
        GammaElement offset;
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty linear form", pos_);
        bool first = true;
        while (pos_ < text_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            first = false;
            if (peek() == '[') {
                const GammaExt e = scan_gamma_ext(text_, pos_);
                offset += Rational(sign) * e.finite();
            } else {
                const auto [label, q] = scan_monomial();
                Rational& slot = coeffs[label];
                slot += Rational(sign) * q;
            }
            skip_ws();
        }
        std::erase_if(coeffs, [](const auto& kv) { return kv.second.is_zero(); });
        return PsiFunction(std::move(coeffs), std::move(offset));
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool digit() const { return std::isdigit(static_cast<unsigned char>(peek())); }

    std::pair<std::size_t, Rational> scan_monomial() {
        Rational q(1);
        if (digit()) {
            const std::size_t start = pos_;
            while (digit()) ++pos_;
            if (peek() == '/') {
                ++pos_;
                if (!digit()) throw ParseError("expected denominator", pos_);
                while (digit()) ++pos_;
            }
            try {
                q = Rational::parse(text_.substr(start, pos_ - start));
            } catch (const std::invalid_argument&) {
                throw ParseError("malformed coefficient", start);
            }
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            }
        }
        if (peek() != 'x') throw ParseError("expected variable x<n>", pos_);
        ++pos_;
        if (!digit()) throw ParseError("expected variable number", pos_);
        std::size_t label = 0;
        while (digit()) label = label * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
        return {label, q};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

PsiFunction parse_psi_function(std::string_view text) { return LinearFormScanner(text).parse(); }

ImageUnion parse_image_union(std::string_view text) {
    ImageUnion out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(';', start), text.size());
        const auto piece = text.substr(start, end - start);
        if (piece.find_first_not_of(" \t\n") != std::string_view::npos) out.push_back(parse_psi_function(piece));
        start = end + 1;
    }
    return out;
}

SmallCore as_core(const ImageUnion& u) {
    SmallCore out;
    for (const auto& f : u) out.push_back({f, {}});
    return out;
}

SmallCore as_core(const ConstrainedImage& c) { return {c}; }

ImageUnion normalize(ImageUnion u) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

ImageUnion derived_set(const ImageUnion& x) {
    ImageUnion out;
    for (const auto& f : x) {
        const auto labels = f.labels();
        const std::size_t n = labels.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
            Rational sum;
            std::set<std::size_t> rest;
            for (std::size_t b = 0; b < n; ++b) {
                if (mask >> b & 1)
                    sum += f.coeffs().at(labels[b]);
                else
                    rest.insert(labels[b]);
            }
            if (sum.is_zero()) out.push_back(f.restrict(rest));
        }
    }
    return normalize(std::move(out));
}

std::size_t d_rank(const ImageUnion& x) {
    std::size_t rank = 0;
    for (ImageUnion cur = normalize(x); !cur.empty(); cur = derived_set(cur)) ++rank;
    return rank;
}

std::vector<IndexAssignment> MemberSolution::expand(const PsiFunction& f, std::size_t bound) const {
    std::vector<IndexAssignment> out;
    for (const auto& [label, v] : fixed)
        if (v > bound) return out;
    if (tail.empty()) {
        out.push_back(fixed);
        return out;
    }
    if (tail_floor + 1 > bound) return out;
    std::vector<std::size_t> vals(tail.size(), tail_floor + 1);
    for (;;) {
        std::map<std::size_t, Rational> group;
        for (std::size_t t = 0; t < tail.size(); ++t) group[vals[t]] += f.coeffs().at(tail[t]);
        if (std::all_of(group.begin(), group.end(), [](const auto& g) { return g.second.is_zero(); })) {
            IndexAssignment a = fixed;
            for (std::size_t t = 0; t < tail.size(); ++t) a[tail[t]] = vals[t];
            out.push_back(std::move(a));
        }
        std::size_t i = 0;
        while (i < vals.size() && vals[i] == bound) vals[i++] = tail_floor + 1;
        if (i == vals.size()) break;
        ++vals[i];
    }
    return out;
}

namespace {

struct StaircaseSolver {
    const PsiFunction& f;
    std::vector<std::size_t> labels;
    std::vector<Rational> jumps;  // jumps[v-1] = required coefficient sum at n_i = v
    std::vector<MemberSolution> solutions;

    void run(std::size_t v, std::size_t remaining, IndexAssignment& fixed) {
        if (v > jumps.size()) {
            Rational rest;
            std::vector<std::size_t> tail;
            for (std::size_t b = 0; b < labels.size(); ++b)
                if (remaining >> b & 1) {
                    rest += f.coeffs().at(labels[b]);
                    tail.push_back(labels[b]);
                }
            if (!rest.is_zero()) return;
            MemberSolution s;
            s.fixed = fixed;
            s.tail = tail;
            s.tail_floor = jumps.size();
            s.witness = fixed;
            for (auto t : tail) s.witness[t] = jumps.size() + 1;
            solutions.push_back(std::move(s));
            return;
        }
        // every subset of the remaining labels whose coefficients sum to the jump
        for (std::size_t sub = remaining;; sub = (sub - 1) & remaining) {
            Rational sum;
            for (std::size_t b = 0; b < labels.size(); ++b)
                if (sub >> b & 1) sum += f.coeffs().at(labels[b]);
            if (sum == jumps[v - 1]) {
                for (std::size_t b = 0; b < labels.size(); ++b)
                    if (sub >> b & 1) fixed[labels[b]] = v;
                run(v + 1, remaining & ~sub, fixed);
                for (std::size_t b = 0; b < labels.size(); ++b)
                    if (sub >> b & 1) fixed.erase(labels[b]);
            }
            if (sub == 0) break;
        }
    }
};

}  // namespace

// Coordinate j of sum_i q_i E_{n_i} is the sum of q_i over n_i > j, so the
// drop from coordinate v-1 to v is the coefficient mass sitting at n_i = v.
// Past the support every drop is 0: the remaining labels must sum to 0.
std::vector<MemberSolution> member(const GammaElement& gamma, const PsiFunction& f) {
    const GammaElement delta = gamma - f.offset();
    const std::size_t len = delta.support_end();
    StaircaseSolver solver{f, f.labels(), {}, {}};
    solver.jumps.reserve(len);
    for (std::size_t v = 1; v <= len; ++v) solver.jumps.push_back(delta.coeff(v - 1) - delta.coeff(v));
    IndexAssignment fixed;
    solver.run(1, (std::size_t{1} << solver.labels.size()) - 1, fixed);
    return std::move(solver.solutions);
}

bool is_member(const GammaElement& gamma, const ImageUnion& x) {
    return std::any_of(x.begin(), x.end(), [&](const PsiFunction& f) { return !member(gamma, f).empty(); });
}

namespace {

// Set partitions of `items`, as block lists.
void for_each_partition(const std::vector<std::size_t>& items,
                        const std::function<void(const std::vector<std::vector<std::size_t>>&)>& visit) {
    std::vector<std::vector<std::size_t>> blocks;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == items.size()) {
            visit(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(items[i]);
            go(i + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({items[i]});
        go(i + 1);
        blocks.pop_back();
    };
    go(0);
}

}  // namespace

std::optional<IndexAssignment> member_constrained(const GammaElement& gamma, const ConstrainedImage& c) {
    const auto labels = c.base.labels();
    const std::set<std::size_t> label_set(labels.begin(), labels.end());
    for (const auto& s : member(gamma, c.base)) {
        if (!s.parametric()) {
            if (c.constraints.holds(s.fixed)) return s.fixed;
            continue;
        }
        // Tail labels sharing a value form zero-sum blocks; blocks that happen
        // to coincide are covered by the coarser partition.
        std::optional<IndexAssignment> found;
        for_each_partition(s.tail, [&](const std::vector<std::vector<std::size_t>>& blocks) {
            if (found) return;
            for (const auto& block : blocks) {
                Rational sum;
                for (auto t : block) sum += c.base.coeffs().at(t);
                if (!sum.is_zero()) return;
            }
            DifferenceConstraints sys = c.constraints;
            for (const auto& [label, v] : s.fixed) sys.exactly(label, static_cast<long>(v));
            for (const auto& block : blocks)
                for (std::size_t b = 1; b < block.size(); ++b) sys.diff_eq(block[b], block[0], 0);
            for (auto t : s.tail) sys.at_least(t, static_cast<long>(s.tail_floor) + 1);
            if (auto sol = sys.solve(label_set)) {
                IndexAssignment w;
                for (auto label : labels) w[label] = sol->at(label);
                found = std::move(w);
            }
        });
        if (found) return found;
    }
    return std::nullopt;
}

bool is_member(const GammaElement& gamma, const SmallCore& x) {
    return std::any_of(x.begin(), x.end(),
                       [&](const ConstrainedImage& c) { return member_constrained(gamma, c).has_value(); });
}

void for_each_profile(const ConstrainedImage& c, std::size_t cap,
                      const std::function<void(const CappedProfile&)>& visit) {
    const auto labels = c.base.labels();
    const std::set<std::size_t> label_set(labels.begin(), labels.end());
    CappedProfile profile;
    for (auto label : labels) profile.values[label] = 1;
    for (;;) {
        bool feasible = true;
        if (!c.constraints.empty()) {
            DifferenceConstraints sys = c.constraints;
            for (const auto& [label, v] : profile.values) {
                if (v < cap)
                    sys.exactly(label, static_cast<long>(v));
                else
                    sys.at_least(label, static_cast<long>(cap));
            }
            feasible = sys.satisfiable(label_set);
        }
        if (feasible) {
            profile.truncation = c.base.truncated_eval(profile.values, cap);
            visit(profile);
        }
        auto it = profile.values.begin();
        while (it != profile.values.end() && it->second == cap) (it++)->second = 1;
        if (it == profile.values.end()) break;
        ++it->second;
    }
}

namespace {

// Searches the capped labels of a feasible profile for a constraint-satisfying
// point different from gamma. Points above A = max(k, bound constants) can
// have their gaps compressed to C+1 without changing which atoms hold, and
// shifting the upper clusters by one changes the value unless their
// coefficient groups vanish, so the window [k, A + |capped|(C+1) + 1] decides.
bool capped_region_has_other_point(const GammaElement& gamma, const ConstrainedImage& c,
                                   const IndexAssignment& profile, std::size_t k) {
    std::vector<std::size_t> capped;
    for (const auto& [label, v] : profile)
        if (v == k) capped.push_back(label);
    const std::size_t anchor = std::max<std::size_t>(k, static_cast<std::size_t>(c.constraints.max_bound_constant()));
    const std::size_t hi =
        anchor + capped.size() * static_cast<std::size_t>(c.constraints.max_diff_constant() + 1) + 1;
    IndexAssignment n = profile;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == capped.size()) return c.constraints.holds(n) && c.base.eval(n) != gamma;
        for (std::size_t v = k; v <= hi; ++v) {
            n[capped[i]] = v;
            if (go(i + 1)) return true;
        }
        return false;
    };
    return go(0);
}

}  // namespace

bool has_nearby_point(const GammaElement& gamma, const SmallCore& x, std::size_t k) {
    const std::vector<Rational> target = gamma.dense(k);
    for (const auto& c : x) {
        bool found = false;
        for_each_profile(c, k, [&](const CappedProfile& p) {
            if (found || p.truncation != target) return;
            const bool any_capped =
                std::any_of(p.values.begin(), p.values.end(), [&](const auto& kv) { return kv.second == k; });
            if (!any_capped) {
                found = c.base.eval(p.values) != gamma;
            } else if (c.constraints.empty()) {
                // moving one capped index alone already yields two distinct values
                found = true;
            } else {
                found = capped_region_has_other_point(gamma, c, p.values, k);
            }
        });
        if (found) return true;
    }
    return false;
}

bool limit_point_probe(const GammaElement& gamma, const SmallCore& x, std::size_t max_k) {
    if (max_k == 0) throw DomainError("limit_point_probe requires K >= 1");
    for (std::size_t k = 1; k <= max_k; ++k)
        if (!has_nearby_point(gamma, x, k)) return false;
    return true;
}

std::vector<std::pair<IndexAssignment, GammaElement>> enumerate_window(const ConstrainedImage& c,
                                                                      std::size_t bound) {
    std::vector<std::pair<IndexAssignment, GammaElement>> out;
    IndexAssignment n;
    for (auto label : c.base.labels()) n[label] = 1;
    if (bound == 0) return out;
    for (;;) {
        if (c.constraints.holds(n)) out.emplace_back(n, c.base.eval(n));
        auto it = n.begin();
        while (it != n.end() && it->second == bound) (it++)->second = 1;
        if (it == n.end()) break;
        ++it->second;
    }
    return out;
}

std::vector<GammaElement> sample_image(const SmallCore& x, std::size_t count) {
    std::vector<GammaElement> out;
    std::set<GammaElement> seen;
    std::size_t budget = 200000;
    for (std::size_t bound = 1; bound <= count + 8 && out.size() < count; ++bound) {
        for (const auto& c : x) {
            std::size_t size = 1;
            for (std::size_t i = 0; i < c.base.arity() && size <= budget; ++i) size *= bound;
            if (size > budget) continue;
            budget -= size;
            for (const auto& [n, value] : enumerate_window(c, bound)) {
                if (out.size() == count) break;
                if (seen.insert(value).second) out.push_back(value);
            }
        }
    }
    return out;
}

std::vector<std::vector<std::size_t>> recovery_probes(std::size_t arity) {
    std::vector<std::vector<std::size_t>> out;
    out.emplace_back(arity, 1);
    for (std::size_t i = 0; i < arity; ++i) {
        std::vector<std::size_t> p(arity, 1);
        p[i] = 2;
        out.push_back(std::move(p));
    }
    return out;
}

// Differences of evaluations eliminate beta and leave a linear system for q,
// one equation per coordinate; Psi being linearly independent makes any
// spanning probe set determine q uniquely.
PsiFunction recover(const std::vector<Evaluation>& evals) {
    if (evals.empty()) throw DomainError("recover: no evaluations");
    const std::size_t m = evals.front().args.size();
    for (const auto& e : evals) {
        if (e.args.size() != m) throw DomainError("recover: evaluations disagree on arity");
        for (auto n : e.args)
            if (n == 0) throw DomainError("recover: Psi indices start at 1");
    }
    const auto& ref = evals.front();

    std::vector<std::vector<Rational>> rows;  // m coefficients + right-hand side
    for (std::size_t e = 1; e < evals.size(); ++e) {
        const GammaElement diff = evals[e].value - ref.value;
        std::size_t len = diff.support_end();
        for (auto n : evals[e].args) len = std::max(len, n);
        for (auto n : ref.args) len = std::max(len, n);
        for (std::size_t j = 0; j < len; ++j) {
            std::vector<Rational> row(m + 1);
            for (std::size_t i = 0; i < m; ++i)
                row[i] = Rational((evals[e].args[i] > j ? 1 : 0) - (ref.args[i] > j ? 1 : 0));
            row[m] = diff.coeff(j);
            rows.push_back(std::move(row));
        }
    }

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][col].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        const Rational lead = rows[r][col];
        for (auto& x : rows[r]) x /= lead;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col].is_zero()) continue;
            const Rational factor = rows[i][col];
            for (std::size_t c = col; c <= m; ++c) rows[i][c] -= factor * rows[r][c];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (!rows[i][m].is_zero()) throw DomainError("recover: evaluations are inconsistent");
    if (pivot_col.size() < m) throw DomainError("recover: probes do not determine the coefficients");

    std::vector<Rational> q(m);
    for (std::size_t i = 0; i < r; ++i) q[pivot_col[i]] = rows[i][m];

    GammaElement beta = ref.value;
    for (std::size_t i = 0; i < m; ++i) beta -= q[i] * staircase(ref.args[i]);

    PsiFunction::Coeffs coeffs;
    for (std::size_t i = 0; i < m; ++i)
        if (!q[i].is_zero()) coeffs.emplace(i, q[i]);
    PsiFunction out(std::move(coeffs), std::move(beta));

    for (const auto& e : evals) {
        IndexAssignment n;
        for (std::size_t i = 0; i < m; ++i) n[i] = e.args[i];
        if (out.eval(n) != e.value) throw DomainError("recover: evaluations are inconsistent");
    }
    return out;
}

std::vector<GammaElement> equilateral_max_clique(const std::vector<GammaElement>& sample, const Phi& phi) {
    if (phi.is_inf()) throw DomainError("equilateral sets need a finite phi");
    const std::size_t n = sample.size();
    if (n > 64) throw DomainError("equilateral_max_clique supports at most 64 points");
    const GammaExt target = phi.value();
    std::vector<std::uint64_t> adj(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const GammaElement d = sample[a] - sample[b];
            if (d.is_zero()) throw DomainError("equilateral_max_clique: sample points must be distinct");
            if (psi(GammaExt(d)) == target) {
                adj[a] |= std::uint64_t{1} << b;
                adj[b] |= std::uint64_t{1} << a;
            }
        }

    std::uint64_t best = 0;
    std::function<void(std::uint64_t, std::uint64_t)> grow = [&](std::uint64_t clique, std::uint64_t cand) {
        if (std::popcount(clique) + std::popcount(cand) <= std::popcount(best)) return;
        if (cand == 0) {
            best = clique;
            return;
        }
        const int v = std::countr_zero(cand);
        const std::uint64_t bit = std::uint64_t{1} << v;
        grow(clique | bit, cand & adj[v]);
        grow(clique, cand & ~bit);
    };
    if (n > 0) grow(0, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);

    std::vector<GammaElement> out;
    for (std::size_t i = 0; i < n; ++i)
        if (best >> i & 1) out.push_back(sample[i]);
    return out;
}

}  // namespace logcouple
