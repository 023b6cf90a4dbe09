#pragma once

#include <map>
#include <utility>
#include <vector>

#include "micz/diffop.hpp"
#include "micz/gauge.hpp"

namespace micz {

// The full family J_AB (and the sqrt(r)-conjugated Jhat_AB) indexed by
// A, B in {-1, 0, 1..D, D+1}, with metric eta = diag(+,+,-,...,-) in that
// index order. Stored for A < B; access is antisymmetric.
struct GeneratorSet {
    ProblemConfig cfg;
    int dim = 1;
    GaugeField gauge;
    std::vector<DiffOp> pi; // pi_alpha = -i d_alpha + A_alpha
    DiffOp pi2;
    std::map<std::pair<int, int>, DiffOp> j, jhat;

    std::vector<int> indices() const;
    static int eta(int A) { return (A == -1 || A == 0) ? 1 : -1; }

    DiffOp J(int A, int B) const;
    DiffOp Jhat(int A, int B) const;
};

GeneratorSet build_generators(const GaugeField& gf);

} // namespace micz
