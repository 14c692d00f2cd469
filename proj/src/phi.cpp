#include "logcouple/phi.hpp"

#include <cctype>

namespace logcouple {

Phi Phi::finite(std::size_t k) {
    if (k == 0) throw DomainError("phi = s^k0 requires k >= 1");
    Phi out;
    out.k_ = k;
    return out;
}

std::size_t Phi::k() const {
    if (is_inf()) throw DomainError("phi = inf has no finite index");
    return k_;
}

GammaExt Phi::value() const {
    if (is_inf()) return inf;
    return staircase(k_);
}

Phi Phi::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "inf") return infinity();
    std::string_view digits = s;
    if (digits.starts_with("s^{") && digits.find('}') != std::string_view::npos) {
        const std::size_t close = digits.find('}');
        const std::string_view rest = digits.substr(close + 1);
        if (rest != "" && rest != "0") throw ParseError("malformed phi '" + std::string(text) + "'", 0);
        digits = digits.substr(3, close - 3);
    } else if (digits.starts_with("s^")) {
        // "s^k0" with the trailing zero element, or plain "s^k"
        digits.remove_prefix(2);
        if (digits.size() > 1 && digits.ends_with("0")) digits.remove_suffix(1);
    } else if (digits.starts_with("E_") || digits.starts_with("E")) {
        digits.remove_prefix(digits.starts_with("E_") ? 2 : 1);
    }
    if (digits.empty()) throw ParseError("malformed phi '" + std::string(text) + "'", 0);
    std::size_t k = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed phi '" + std::string(text) + "'", 0);
        k = k * 10 + static_cast<std::size_t>(c - '0');
    }
    return finite(k);
}

std::string Phi::to_string() const { return is_inf() ? "inf" : "s^" + std::to_string(k_) + "0"; }

bool in_delta(const GammaElement& gamma, const Phi& phi) {
    if (gamma.is_zero()) return true;
    if (phi.is_inf()) return false;
    return gamma.leading_index() >= phi.k();
}

}  // namespace logcouple
