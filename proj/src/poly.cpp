#include "micz/poly.hpp"

#include "micz/scalar.hpp"

namespace micz {

std::string mono_str(Mono m, int nvars) {
    std::string out;
    for (int v = 0; v < nvars; ++v) {
        int e = mono_exp(m, v);
        if (!e) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(v + 1);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

GaussRat Poly::constant_value() const {
    if (terms_.empty()) return GaussRat(0);
    auto it = terms_.find(0);
    return it == terms_.end() ? GaussRat(0) : it->second;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_total_deg(m));
    return d;
}

void Poly::add_term(Mono m, const GaussRat& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, -c);
    return out;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    out += o;
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    out -= o;
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out;
    if (terms_.empty() || o.terms_.empty()) return out;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) out.add_term(mono_mul(m1, m2), c1 * c2);
    return out;
}

Poly Poly::scaled(const GaussRat& c) const {
    Poly out;
    if (c.is_zero()) return out;
    for (const auto& [m, cc] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c * cc);
    return out;
}

Poly Poly::derivative(int var) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
        int e = mono_exp(m, var);
        if (!e) continue;
        out.add_term(mono_div(m, mono_var(var)), c * GaussRat(e));
    }
    return out;
}

bool Poly::divide_exact(const Poly& divisor, Poly& q) const {
    q = Poly();
    if (terms_.empty()) return true;
    Poly rem = *this;
    const Mono lead = divisor.leading_mono();
    const GaussRat& lc = divisor.leading_coeff();
    while (!rem.is_zero()) {
        Mono m = rem.leading_mono();
        if (!mono_divides(lead, m)) return false;
        GaussRat c = rem.leading_coeff() / lc;
        Mono qm = mono_div(m, lead);
        q.add_term(qm, c);
        rem -= divisor * Poly::term(qm, c);
    }
    return true;
}

GaussRat Poly::eval(const RationalPoint& p) const {
    GaussRat acc(0);
    for (const auto& [m, c] : terms_) {
        Rat v(1);
        for (int a = 0; a < p.D; ++a) {
            int e = mono_exp(m, a);
            if (e) v *= p.power(a, e);
        }
        acc += c * GaussRat(v);
    }
    return acc;
}

std::string Poly::str(int nvars) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + gauss_str(c) + ")";
        if (m != 0) out += "*" + mono_str(m, nvars);
    }
    return out;
}

Poly poly_s(int D) {
    Poly p;
    for (int a = 0; a < D; ++a) p += Poly::term(mono_var(a, 2), GaussRat(1));
    return p;
}

Poly poly_rho(int D) {
    Poly p;
    for (int a = 0; a + 1 < D; ++a) p += Poly::term(mono_var(a, 2), GaussRat(1));
    return p;
}

} // namespace micz
