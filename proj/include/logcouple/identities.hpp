#pragma once

#include "logcouple/gamma.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace logcouple {

/// Up to 8 nonzero coordinates among the first 12, numerators and
/// denominators at most 100. A quarter of the draws start with a run of 1s so
/// that every branch of the integral is exercised.
GammaElement random_element(std::mt19937_64& rng);

struct IdentityReport {
    std::size_t elements = 0;
    std::map<std::string, std::size_t> checked;  // identity -> instances
    std::map<std::string, std::size_t> failed;
    std::vector<std::string> examples;           // first few counterexamples

    bool ok() const { return failed.empty(); }
};

/// Integral, fixed point and successor identities, integral round trip and
/// monotonicity, valuation axioms, and s/p on Psi, on n seeded random elements.
IdentityReport run_identity_suite(std::size_t n, std::uint64_t seed);

}  // namespace logcouple
