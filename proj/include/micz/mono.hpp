#pragma once

#include <cassert>
#include <cstdint>
#include <string>

namespace micz {

// Monomial exponent vector packed into a uint64: one byte per variable,
// variable 0 in the most significant byte. Consequences used throughout:
//   - integer comparison == lexicographic order with x1 dominant,
//   - monomial product == integer addition (exponents stay < 256).
// Supports up to 8 variables; D <= 6 here. Also reused for derivative
// multi-indices, which share the same shape.
using Mono = std::uint64_t;

inline constexpr int kMaxVars = 8;

inline int mono_exp(Mono m, int var) {
    assert(var >= 0 && var < kMaxVars);
    return static_cast<int>((m >> (8 * (kMaxVars - 1 - var))) & 0xff);
}

inline Mono mono_var(int var, int e = 1) {
    assert(var >= 0 && var < kMaxVars && e >= 0 && e < 256);
    return static_cast<Mono>(static_cast<std::uint64_t>(e) << (8 * (kMaxVars - 1 - var)));
}

inline Mono mono_mul(Mono a, Mono b) { return a + b; }

// a / b assuming b divides a (every exponent of b <= that of a).
inline Mono mono_div(Mono a, Mono b) { return a - b; }

inline bool mono_divides(Mono b, Mono a) {
    for (int v = 0; v < kMaxVars; ++v)
        if (mono_exp(b, v) > mono_exp(a, v)) return false;
    return true;
}

inline int mono_total_deg(Mono m) {
    int d = 0;
    for (int v = 0; v < kMaxVars; ++v) d += mono_exp(m, v);
    return d;
}

std::string mono_str(Mono m, int nvars);

} // namespace micz
