#pragma once

#include "micz/radial.hpp"
#include "micz/suites.hpp"

namespace micz {

// Floating-point cross-checks over the same identity coverage as the exact
// suites.  One item per identity; the residual is the maximum relative
// deviation over the sample points and the witness names the worst point.

constexpr double kFloatTol = 1e-9;  // relative, operator identities
constexpr double kQuadratureTol = 1e-10; // absolute, radial Gram entries

std::vector<RationalPoint> float_points(int D, int count, std::uint64_t seed);

VerificationReport float_gauge_identities(const GaugeField& gf);
VerificationReport float_closed_forms(const GeneratorSet& g);
VerificationReport float_commutation_relations(const GeneratorSet& g);
VerificationReport float_quadratic_relations(const GeneratorSet& g);
VerificationReport float_radial_gram(const ProblemConfig& cfg, int kmax, int lmax);

} // namespace micz
