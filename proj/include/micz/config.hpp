#pragma once

#include <cstdint>

#include "micz/rational.hpp"

namespace micz {

enum class Mode { exact, floating };

// The problem instance: dimension D = 2n and magnetic charge mu = two_mu/2.
// c and a are always recomputed so they cannot drift out of sync.
struct ProblemConfig {
    int n = 2;
    int two_mu = 1;
    Mode mode = Mode::exact;
    int points = 20;
    std::uint64_t seed = 1;

    int D() const { return 2 * n; }
    Rat mu() const { return rat(two_mu, 2); }
    Rat c() const { return Rat(n - 1) * mu(); }
    Rat a() const { return rat(2 * n - 1, 2) - c(); }
};

} // namespace micz
