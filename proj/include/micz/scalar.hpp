#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "micz/poly.hpp"
#include "micz/rational.hpp"

namespace micz {

// Evaluation site with all coordinates nonzero and rho = sum_{a<D} x_a^2 != 0,
// so every rationalized denominator in the library is invertible at it.
struct RationalPoint {
    int D = 0;
    std::vector<Rat> x;
    Rat s;   // |x|^2
    Rat rho; // |x|^2 - x_D^2

    RationalPoint() = default;
    explicit RationalPoint(std::vector<Rat> coords);

    const Rat& power(int var, int e) const;

    std::vector<double> coords_double() const;

private:
    mutable std::vector<std::vector<Rat>> pow_;
};

// Coordinates uniform over {-9..-1, 1..9} / den with den in {1,2,3}.
RationalPoint random_point(int D, SplitMix64& rng);

// Random rational point whose radius |x| is itself rational (a scaled
// stereographic chart of the sphere), so r collapses to a rational at the
// point and QVal arithmetic stays in Q(i). Rejects draws with a zero
// coordinate, rho = 0, or x_D = ±|x|.
RationalPoint random_sphere_point(int D, SplitMix64& rng);

std::string point_str(const RationalPoint& p);

// Exact value a + b*sqrt(s) over Q(i); collapses to b = 0 when s is a
// perfect square. Mixed-s arithmetic is a logic error.
struct QVal {
    GaussRat a, b;
    Rat s;

    QVal() : s(0) {}
    QVal(GaussRat a_, GaussRat b_, Rat s_);

    static QVal rational(const GaussRat& v) { return QVal(v, GaussRat(0), Rat(0)); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    QVal operator-() const;
    QVal operator+(const QVal& o) const;
    QVal operator-(const QVal& o) const;
    QVal operator*(const QVal& o) const;
    QVal scaled(const GaussRat& c) const;
    QVal conj() const { return QVal(a.conj(), b.conj(), s); }

    bool operator==(const QVal& o) const;
    bool operator!=(const QVal& o) const { return !(*this == o); }

    std::string str() const;
};

// Element (f + g*r) / (prod_i base_i^{e_i}) of Q(i)(x_1..x_D)[r]/(r^2-|x|^2).
// Denominator bases are monic polynomials from a per-dimension registry;
// bases 0 and 1 are always |x|^2 and rho, which are irreducible over Q(i)
// for D >= 4, so trial exact division keeps the form canonical on the
// subring where all the geometry lives. Ad-hoc bases appear only through
// general inversion and fall back to cross-multiplied equality.
class ScalarExpr {
public:
    using DenMap = std::map<int, int>; // base id -> exponent > 0

    ScalarExpr() : D_(0) {}
    explicit ScalarExpr(int D) : D_(D) {}
    ScalarExpr(int D, Poly f, Poly g, DenMap den = {});

    static ScalarExpr constant(int D, const GaussRat& c) { return ScalarExpr(D, Poly(c), Poly()); }
    static ScalarExpr variable(int D, int var) {
        return ScalarExpr(D, Poly::variable(var), Poly());
    }
    static ScalarExpr r(int D) { return ScalarExpr(D, Poly(), Poly(GaussRat(1))); }

    int dim_vars() const { return D_; }
    bool is_zero() const { return f_.is_zero() && g_.is_zero(); }
    const Poly& f() const { return f_; }
    const Poly& g() const { return g_; }
    const DenMap& den() const { return den_; }
    Poly den_poly() const;

    // True when the denominator is a power of |x|^2 only (no rho, no ad-hoc
    // bases): the subring closed under application to Sections.
    bool r_laurent() const;

    ScalarExpr operator-() const;
    ScalarExpr operator+(const ScalarExpr& o) const;
    ScalarExpr operator-(const ScalarExpr& o) const;
    ScalarExpr operator*(const ScalarExpr& o) const;
    ScalarExpr& operator+=(const ScalarExpr& o);
    ScalarExpr& operator-=(const ScalarExpr& o);
    ScalarExpr scaled(const GaussRat& c) const;

    ScalarExpr inverse() const;
    ScalarExpr conj() const; // complex conjugation (r is real)

    ScalarExpr derivative(int var) const;

    // Canonicalization is maintained by every operation; normalized() exists
    // to make idempotence checkable and to canonicalize hand-built raws.
    ScalarExpr normalized() const;

    QVal eval(const RationalPoint& p) const;
    std::complex<double> eval_double(const std::vector<double>& coords, double r) const;

    bool operator==(const ScalarExpr& o) const;
    bool operator!=(const ScalarExpr& o) const { return !(*this == o); }

    std::string str() const;

private:
    int D_;
    Poly f_, g_;
    DenMap den_;

    void reduce();
    static const Poly& base_poly(int D, int id);
    friend class DenRegistry;
};

ScalarExpr operator*(const GaussRat& c, const ScalarExpr& e);

} // namespace micz
