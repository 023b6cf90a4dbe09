#pragma once

#include <functional>
#include <map>
#include <vector>

#include "micz/matrix.hpp"
#include "micz/scalar.hpp"

namespace micz {

// Suites never produce derivative order above this; exceeding it signals a
// normal-ordering bug, not a bigger computation.
inline constexpr int kMaxDerivOrder = 4;

// Normal-ordered matrix-coefficient differential operator
//   sum_beta M_beta(x, r) d^beta
// with all derivatives to the right of all coefficients and no zero matrices
// stored, so map equality is operator equality.
class DiffOp {
public:
    using TermMap = std::map<Mono, Mat<ScalarExpr>, std::greater<Mono>>;

    DiffOp() : D_(0), dim_(0) {}
    DiffOp(int D, int dim) : D_(D), dim_(dim) {}

    static DiffOp mult(int D, Mat<ScalarExpr> coeff);
    static DiffOp mult_scalar(int D, int dim, const ScalarExpr& e);
    static DiffOp partial(int D, int dim, int var);

    int D() const { return D_; }
    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_order() const;

    void add_term(Mono beta, const Mat<ScalarExpr>& m);

    DiffOp operator-() const;
    DiffOp operator+(const DiffOp& o) const;
    DiffOp operator-(const DiffOp& o) const;
    DiffOp& operator+=(const DiffOp& o);
    DiffOp scaled(const GaussRat& c) const;
    // Left multiplication by the function e (e commutes with coefficients).
    DiffOp scaled_expr(const ScalarExpr& e) const;

    bool operator==(const DiffOp& o) const;
    bool operator!=(const DiffOp& o) const { return !(*this == o); }

    // True when every coefficient denominator is a power of |x|^2, i.e. the
    // operator lies in the subring where normal-form comparison is used.
    bool r_laurent() const;

    std::map<Mono, Mat<QVal>, std::greater<Mono>> eval_at(const RationalPoint& p) const;

private:
    int D_, dim_;
    TermMap terms_;
};

DiffOp compose(const DiffOp& P, const DiffOp& Q);
inline DiffOp operator*(const DiffOp& P, const DiffOp& Q) { return compose(P, Q); }
DiffOp commutator(const DiffOp& P, const DiffOp& Q);
DiffOp anticommutator(const DiffOp& P, const DiffOp& Q);

// r^{-1/2} P r^{1/2} in normal form; half powers cancel so coefficients stay
// in the ScalarExpr field.
DiffOp conjugate_sqrt_r(const DiffOp& P);

// Enumerate all multi-indices gamma <= beta with the product of binomial
// coefficients prod_v C(beta_v, gamma_v).
void for_each_subindex(Mono beta, int nvars, const std::function<void(Mono, long)>& fn);

// Test function poly(x) * r^{half_r_exponent/2} * e^{-decay*r} * spinor.
struct Section {
    Poly poly;
    int half_r_exponent = 0;
    Rat decay;
    std::vector<GaussRat> spinor;
};

// Exact image of s under P as a merged formal sum; spinor components are
// split onto standard basis vectors. Throws NonPolynomialCoefficient if a
// coefficient denominator is not a power of |x|^2.
std::vector<Section> apply(const DiffOp& P, const Section& s);

// Canonical merge of a formal sum, identifying |x|^2 r^{m/2} with
// r^{(m+4)/2}; used for comparing images.
std::vector<Section> normalize_sections(const std::vector<Section>& in, int dim, int D);

bool sections_equal(const std::vector<Section>& a, const std::vector<Section>& b, int dim, int D);

} // namespace micz
