#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "micz/mono.hpp"
#include "micz/rational.hpp"

namespace micz {

struct RationalPoint;

// Sparse multivariate polynomial over Q(i). Terms kept in descending lex
// order so begin() is the leading term (used by exact division).
class Poly {
public:
    using TermMap = std::map<Mono, GaussRat, std::greater<Mono>>;

    Poly() = default;
    explicit Poly(const GaussRat& c) {
        if (!c.is_zero()) terms_[0] = c;
    }
    static Poly variable(int var) {
        Poly p;
        p.terms_[mono_var(var)] = GaussRat(1);
        return p;
    }
    static Poly term(Mono m, const GaussRat& c) {
        Poly p;
        if (!c.is_zero()) p.terms_[m] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }
    GaussRat constant_value() const;
    std::size_t term_count() const { return terms_.size(); }
    int total_degree() const;
    const TermMap& terms() const { return terms_; }
    Mono leading_mono() const { return terms_.begin()->first; }
    const GaussRat& leading_coeff() const { return terms_.begin()->second; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);

    Poly scaled(const GaussRat& c) const;
    Poly derivative(int var) const;

    // Exact division: returns true and sets q with *this == q * divisor,
    // false if the division leaves a remainder. divisor must be nonzero.
    bool divide_exact(const Poly& divisor, Poly& q) const;

    GaussRat eval(const RationalPoint& p) const;

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string str(int nvars) const;

private:
    TermMap terms_;

    void add_term(Mono m, const GaussRat& c);
};

// |x|^2 = x_1^2 + ... + x_D^2 for the given dimension.
Poly poly_s(int D);
// rho = x_1^2 + ... + x_{D-1}^2, the rationalization denominator of 1/(r+x_D).
Poly poly_rho(int D);

} // namespace micz
