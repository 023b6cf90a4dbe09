#pragma once

#include <vector>

#include "micz/clifford.hpp"
#include "micz/config.hpp"
#include "micz/matrix.hpp"
#include "micz/scalar.hpp"

namespace micz {

// Gauge potential A_alpha and field strength F_{alpha beta} as order-0
// matrix coefficients. F is stored twice: from the curvature formula
// F = dA + i[A, A] and from the closed form; their agreement is an oracle
// asserted by the gauge suite (disagreement is fatal).
struct GaugeField {
    ProblemConfig cfg;
    Rep rep;
    std::vector<Mat<ScalarExpr>> A;                     // size D, A[D-1] = 0
    std::vector<std::vector<Mat<ScalarExpr>>> F;        // curvature formula
    std::vector<std::vector<Mat<ScalarExpr>>> F_closed; // closed form
};

// Builds A_b = -(1/(r(r+x_D))) sum_a x_a gamma_ab, A_D = 0.
GaugeField gauge_potential(const ProblemConfig& cfg);

// Fills both F families; requires gauge_potential output.
void field_strength(GaugeField& gf);

// Constant matrix lifted to ScalarExpr entries.
Mat<ScalarExpr> lift_const(int D, const Mat<GaussRat>& m);

// Matrix with every entry multiplied by a polynomial: p * m.
Mat<ScalarExpr> lift_poly(int D, const Poly& p, const Mat<GaussRat>& m);

} // namespace micz
