#pragma once

#include <map>
#include <string>

#include "micz/config.hpp"
#include "micz/poly.hpp"
#include "micz/report.hpp"
#include "micz/scalar.hpp"

namespace micz {

// Laurent polynomial in the radius r: exponent -> coefficient, no zeros stored.
using LaurentR = std::map<int, GaussRat>;

LaurentR laurent_add(const LaurentR& a, const LaurentR& b);
LaurentR laurent_mul(const LaurentR& a, const LaurentR& b);
LaurentR laurent_scaled(const LaurentR& a, const GaussRat& c);
LaurentR laurent_derivative(const LaurentR& a);
std::string laurent_str(const LaurentR& a);

// sqrt(c2) * poly(r) * r^{half_exponent/2} * e^{-decay r}; poly(0) != 0 unless
// the function is identically zero. Keeping the normalization squared in c2
// lets half-integer-power constants like (k+l_mu)^{n+1/2} stay exact.
struct RadialFunction {
    Poly poly; // univariate, variable 0
    int half_exponent = 0;
    Rat decay = 1;
    Rat c2 = 1;

    bool is_zero() const { return poly.is_zero(); }
    RadialFunction scaled(const GaussRat& c) const;
};

std::string radial_str(const RadialFunction& f);

// Spectral sector (k, l) of the problem (n, mu); derived quantities are
// recomputed on demand so they cannot go stale.
struct SpectralLabel {
    int k = 1;
    int l = 0;
    int n = 2;
    int two_mu = 0;

    Rat mu() const { return rat(two_mu, 2); }
    Rat l_mu() const { return mu() + rat(2 * l + 2 * n - 3, 2); }
    int level() const { return k + l - 1; }
    Rat big_n() const { return Rat(k) + l_mu(); }
    int alpha() const; // 2 l_mu + 1, an integer for mu in {0, 1/2}
};

// Bound-state energy at level I: -(1/2) / (I + n + mu - 1/2)^2.
Rat energy(int I, int n, const Rat& mu);

// Generalized Laguerre polynomial L_m^alpha by the three-term recurrence,
// univariate in variable 0.
Poly laguerre_poly(int m, const Rat& alpha);

// Normalized radial factor under the measure r^{2n-1} dr. Untwisted is the
// bound eigenfunction r^{l+mu} L^{2l_mu+1}_{k-1}(2r/N) e^{-r/N}, N = k + l_mu;
// twisted is its half-density image with unit decay.
RadialFunction radial_eigenfunction(const SpectralLabel& lab, bool twisted);

// <f, g> with f conjugated, against the measure r^{2n-1} dr, via the moments
// int r^m e^{-c r} dr = m! / c^{m+1}.
QVal radial_inner(const RadialFunction& f, const RadialFunction& g, int n);

// Normal-ordered 1-D operator sum_j c_j(r) (d/dr)^j with Laurent coefficients.
struct RadialOp {
    std::map<int, LaurentR> terms;

    void add(int order, const LaurentR& c);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const RadialOp& o) const { return terms == o.terms; }
    bool operator!=(const RadialOp& o) const { return !(*this == o); }
};

std::string radop_str(const RadialOp& op);

RadialOp radop_add(const RadialOp& a, const RadialOp& b);
RadialOp radop_scaled(const RadialOp& a, const GaussRat& c);
RadialOp radop_compose(const RadialOp& a, const RadialOp& b);
// r^{-1/2} op r^{1/2} in normal form.
RadialOp radop_conjugate(const RadialOp& a);
RadialFunction radop_apply(const RadialOp& op, const RadialFunction& f);

enum class RadialName { H, GammaMinus, GammaPlus, T };

// Radial reduction to the angular sector l. The centrifugal coefficient is
// l_mu(l_mu+1) - (n-1/2)(n-3/2); twisted = true wraps the operator in the
// half-density conjugation r^{-1/2} op r^{1/2}.
RadialOp radial_operator(RadialName name, const SpectralLabel& lab, bool twisted);

// Scaling-and-divide map psi(r) -> N^{n+1/2} psi(N r) / sqrt(r) applied to the
// normalized untwisted eigenfunction, N = k + l_mu.
RadialFunction twist_map(const SpectralLabel& lab);

// Sector-by-sector checks for 1 <= k <= kmax, 0 <= l <= lmax: Schrodinger
// eigenvalues, the hatted Gamma_{-1} eigenvalue k + l_mu, the ladder pair
// T-hat -+ i Gamma-hat_{D+1}, orthonormality, matrix-element symmetry, the
// two assemblies of Gamma_{-1}|_l, and the twist map's norm preservation.
VerificationReport verify_radial_eigensystem(const ProblemConfig& cfg, int kmax, int lmax);

// mu = 0 only: the same Gamma-hat_{-1} eigenvalue on full-dimensional sections
// (x_1 + i x_2)^l r^{-1/2} L^{2l_mu+1}_{k-1}(2r) e^{-r}, plus the operator
// identity -Jhat(a, 0) = i (r d_a + x_a r / (2|x|^2)) for every a.
VerificationReport verify_full_scalar(const ProblemConfig& cfg, int kmax, int lmax);

} // namespace micz
