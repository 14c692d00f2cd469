#pragma once

#include "logcouple/psi_function.hpp"

#include <utility>
#include <vector>

namespace logcouple {

/// F(a_0..a_{m-1}) = sum_{i,j} q_{i,j} s^{k_j}(a_i) + offset over Psi^m, where
/// s^k for negative k means p^{-k}. Zero coefficients are stored so the table
/// keeps its shape.
class GenSFunction {
public:
    /// coeffs[i][j] pairs argument i with shifts[j]. Throws DomainError on a
    /// ragged table or repeated shifts.
    GenSFunction(std::size_t arity, std::vector<long> shifts, std::vector<std::vector<Rational>> coeffs,
                 GammaExt offset);

    std::size_t arity() const { return arity_; }
    const std::vector<long>& shifts() const { return shifts_; }
    const std::vector<std::vector<Rational>>& coeffs() const { return coeffs_; }
    const GammaExt& offset() const { return offset_; }

    /// Infinity as soon as a p applied to a nonzero term falls off Psi.
    GammaExt eval(const std::vector<PsiPoint>& args) const;

private:
    std::size_t arity_;
    std::vector<long> shifts_;
    std::vector<std::vector<Rational>> coeffs_;
    GammaExt offset_;
};

/// A Psi-function G with image(F) in image(G) + {inf}: label l of G stands for
/// s^{k_j}(a_i) where sources[l] = (i, j).
struct GenSCover {
    PsiFunction g;
    std::vector<std::pair<std::size_t, std::size_t>> sources;

    /// Indices of G reproducing F(args); nullopt when F(args) is infinite.
    std::optional<IndexAssignment> witness(const GenSFunction& f, const std::vector<PsiPoint>& args) const;
};

GenSCover gensfun_cover(const GenSFunction& f);

}  // namespace logcouple
