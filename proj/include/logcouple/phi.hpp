#pragma once

#include "logcouple/gamma.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace logcouple {

/// A member of Psi_inf: either s^k 0 = E_k (k >= 1) or infinity.
class Phi {
public:
    static Phi finite(std::size_t k);
    static Phi infinity() { return Phi(); }

    bool is_inf() const { return k_ == 0; }
    /// Requires a finite Phi.
    std::size_t k() const;
    GammaExt value() const;

    /// Accepts `s^k0`, `s^k 0`, `s^{k}0`, `s^k` (single-digit k), `E_k`, a bare
    /// positive integer k, or `inf`. In `s^k0` the final 0 is the zero element.
    static Phi parse(std::string_view text);
    std::string to_string() const;

    friend auto operator<=>(const Phi& a, const Phi& b) {
        if (a.is_inf() || b.is_inf()) return a.is_inf() <=> b.is_inf();
        return a.k_ <=> b.k_;
    }
    friend bool operator==(const Phi&, const Phi&) = default;

private:
    Phi() = default;
    std::size_t k_ = 0;  // 0 encodes infinity
};

/// gamma lies in Delta_phi = {x : psi(x) > phi}: for phi = E_k the first k
/// coordinates vanish; for phi = inf, gamma = 0.
bool in_delta(const GammaElement& gamma, const Phi& phi);

}  // namespace logcouple
