#pragma once

#include <vector>

#include "micz/matrix.hpp"
#include "micz/rational.hpp"

namespace micz {

// Representation of so(2n-1) by the generators gamma_ab, 1 <= a < b <= 2n-1.
// two_mu selects: 0 = trivial (dim 1), 1 = fundamental spin (dim 2^{n-1}),
// 2 = spin 1 (n = 2 only; the negative control).
struct Rep {
    int n = 0;
    int two_mu = 0;
    int dim = 0;
    std::vector<Mat<GaussRat>> gens; // packed over pairs a < b

    int num_gammas() const { return 2 * n - 1; }

    // gamma_ab with antisymmetry built in; a, b are 0-based, a == b gives 0.
    Mat<GaussRat> gamma(int a, int b) const;

    Mat<GaussRat> id() const { return Mat<GaussRat>::identity(dim, GaussRat(1)); }
};

// The 2n-1 hermitian generators of the Clifford algebra of R^{2n-1},
// size 2^{n-1}, via the fixed Pauli tensor recursion.
std::vector<Mat<GaussRat>> gamma_matrices(int n);

Rep rep_s2mu(int n, int two_mu);

// Scalar lambda with (1/2) sum_{a,b} gamma_ab gamma_ab = lambda * I,
// equivalently sum_{a<b} gamma_ab^2. Throws NotScalar otherwise.
Rat casimir(const Rep& rep);

} // namespace micz
