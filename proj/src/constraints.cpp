#include "logcouple/constraints.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace logcouple {

bool DiffAtom::holds(const IndexAssignment& n) const {
    const auto value = [&](std::size_t v) { return static_cast<long>(n.at(v)); };
    switch (kind) {
        case Kind::diff_le: return value(i) - value(j) <= c;
        case Kind::diff_eq: return value(i) - value(j) == c;
        case Kind::ge: return value(i) >= c;
        case Kind::le: return value(i) <= c;
    }
    return false;
}

DifferenceConstraints& DifferenceConstraints::diff_le(std::size_t i, std::size_t j, long c) {
    atoms_.push_back({DiffAtom::Kind::diff_le, i, j, c});
    return *this;
}

DifferenceConstraints& DifferenceConstraints::diff_eq(std::size_t i, std::size_t j, long c) {
    atoms_.push_back({DiffAtom::Kind::diff_eq, i, j, c});
    return *this;
}

DifferenceConstraints& DifferenceConstraints::at_least(std::size_t i, long c) {
    atoms_.push_back({DiffAtom::Kind::ge, i, 0, c});
    return *this;
}

DifferenceConstraints& DifferenceConstraints::at_most(std::size_t i, long c) {
    atoms_.push_back({DiffAtom::Kind::le, i, 0, c});
    return *this;
}

DifferenceConstraints& DifferenceConstraints::exactly(std::size_t i, long c) {
    at_least(i, c);
    return at_most(i, c);
}

std::set<std::size_t> DifferenceConstraints::variables() const {
    std::set<std::size_t> out;
    for (const auto& a : atoms_) {
        out.insert(a.i);
        if (a.kind == DiffAtom::Kind::diff_le || a.kind == DiffAtom::Kind::diff_eq) out.insert(a.j);
    }
    return out;
}

long DifferenceConstraints::max_diff_constant() const {
    long out = 0;
    for (const auto& a : atoms_)
        if (a.kind == DiffAtom::Kind::diff_le || a.kind == DiffAtom::Kind::diff_eq)
            out = std::max(out, std::labs(a.c));
    return out;
}

long DifferenceConstraints::max_bound_constant() const {
    long out = 0;
    for (const auto& a : atoms_)
        if (a.kind == DiffAtom::Kind::ge || a.kind == DiffAtom::Kind::le) out = std::max(out, a.c);
    return out;
}

bool DifferenceConstraints::holds(const IndexAssignment& n) const {
    for (const auto& [v, value] : n)
        if (value < 1) return false;
    return std::all_of(atoms_.begin(), atoms_.end(), [&](const DiffAtom& a) { return a.holds(n); });
}

namespace {

struct Edge {
    std::size_t from;
    std::size_t to;
    long weight;  // x_to - x_from <= weight
};

}  // namespace

std::optional<IndexAssignment> DifferenceConstraints::solve(const std::set<std::size_t>& vars) const {
    std::set<std::size_t> all = variables();
    all.insert(vars.begin(), vars.end());

    // node 0 is the reference point "zero"; variables are 1..|all|
    std::map<std::size_t, std::size_t> node;
    for (auto v : all) node.emplace(v, node.size() + 1);
    const std::size_t count = node.size() + 1;

    std::vector<Edge> edges;
    const auto le = [&](std::size_t a, std::size_t b, long c) {  // x_a - x_b <= c
        edges.push_back({b, a, c});
    };
    for (const auto& [v, id] : node) le(0, id, -1);  // x_v >= 1
    for (const auto& a : atoms_) {
        const std::size_t i = node.at(a.i);
        switch (a.kind) {
            case DiffAtom::Kind::diff_le: le(i, node.at(a.j), a.c); break;
            case DiffAtom::Kind::diff_eq:
                le(i, node.at(a.j), a.c);
                le(node.at(a.j), i, -a.c);
                break;
            case DiffAtom::Kind::ge: le(0, i, -a.c); break;
            case DiffAtom::Kind::le: le(i, 0, a.c); break;
        }
    }

    // virtual source at distance 0 to every node
    std::vector<long> dist(count, 0);
    for (std::size_t round = 0; round < count; ++round) {
        bool changed = false;
        for (const auto& e : edges) {
            if (dist[e.from] + e.weight < dist[e.to]) {
                dist[e.to] = dist[e.from] + e.weight;
                changed = true;
            }
        }
        if (!changed) {
            IndexAssignment out;
            for (const auto& [v, id] : node) out.emplace(v, static_cast<std::size_t>(dist[id] - dist[0]));
            return out;
        }
    }
    return std::nullopt;
}

DifferenceConstraints DifferenceConstraints::conjoin(const DifferenceConstraints& other) const {
    DifferenceConstraints out = *this;
    out.atoms_.insert(out.atoms_.end(), other.atoms_.begin(), other.atoms_.end());
    return out;
}

}  // namespace logcouple
