#include "logcouple/gensfun.hpp"

#include <set>

namespace logcouple {

GenSFunction::GenSFunction(std::size_t arity, std::vector<long> shifts, std::vector<std::vector<Rational>> coeffs,
                           GammaExt offset)
    : arity_(arity), shifts_(std::move(shifts)), coeffs_(std::move(coeffs)), offset_(std::move(offset)) {
    if (std::set<long>(shifts_.begin(), shifts_.end()).size() != shifts_.size())
        throw DomainError("shift exponents must be distinct");
    if (coeffs_.size() != arity_) throw DomainError("coefficient table needs one row per argument");
    for (const auto& row : coeffs_)
        if (row.size() != shifts_.size()) throw DomainError("coefficient table needs one column per shift");
}

namespace {

// Index of s^k(E_n) in Psi, or nullopt when p falls off.
std::optional<std::size_t> shifted(std::size_t n, long k) {
    const long m = static_cast<long>(n) + k;
    if (m < 1) return std::nullopt;
    return static_cast<std::size_t>(m);
}

}  // namespace

GammaExt GenSFunction::eval(const std::vector<PsiPoint>& args) const {
    if (args.size() != arity_) throw DomainError("expected " + std::to_string(arity_) + " arguments");
    if (offset_.is_inf()) return inf;
    GammaElement acc = offset_.finite();
    for (std::size_t i = 0; i < arity_; ++i)
        for (std::size_t j = 0; j < shifts_.size(); ++j) {
            if (coeffs_[i][j].is_zero()) continue;
            const auto n = shifted(args[i].ones(), shifts_[j]);
            if (!n) return inf;
            acc += coeffs_[i][j] * staircase(*n);
        }
    return acc;
}

GenSCover gensfun_cover(const GenSFunction& f) {
    GenSCover out{PsiFunction::constant(f.offset().is_inf() ? GammaElement{} : f.offset().finite()), {}};
    PsiFunction::Coeffs c;
    for (std::size_t i = 0; i < f.arity(); ++i)
        for (std::size_t j = 0; j < f.shifts().size(); ++j) {
            if (f.coeffs()[i][j].is_zero()) continue;
            c.emplace(out.sources.size(), f.coeffs()[i][j]);
            out.sources.emplace_back(i, j);
        }
    out.g = PsiFunction(c, out.g.offset());
    return out;
}

std::optional<IndexAssignment> GenSCover::witness(const GenSFunction& f, const std::vector<PsiPoint>& args) const {
    if (f.eval(args).is_inf()) return std::nullopt;
    IndexAssignment n;
    for (std::size_t l = 0; l < sources.size(); ++l) {
        const auto [i, j] = sources[l];
        n[l] = *shifted(args[i].ones(), f.shifts()[j]);
    }
    return n;
}

}  // namespace logcouple
