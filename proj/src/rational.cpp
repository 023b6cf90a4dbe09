#include "micz/rational.hpp"

#include "micz/errors.hpp"

namespace micz {

bool rat_is_perfect_square(const Rat& q, Rat& root) {
    if (q < 0) return false;
    if (q == 0) {
        root = 0;
        return true;
    }
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rat(rn, rd);
    root.canonicalize();
    return true;
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), k);
    Rat out = neg ? Rat(den, num) : Rat(num, den);
    if (neg && num == 0) throw DivisionByZeroExpr("rat_pow: negative power of zero");
    out.canonicalize();
    return out;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

double rat_double(const Rat& q) { return q.get_d(); }

GaussRat GaussRat::operator/(const GaussRat& o) const {
    Rat n = o.re * o.re + o.im * o.im;
    if (n == 0) throw DivisionByZeroExpr("GaussRat: division by zero");
    GaussRat t = *this * o.conj();
    return GaussRat(t.re / n, t.im / n);
}

std::string gauss_str(const GaussRat& z) {
    if (z.im == 0) return rat_str(z.re);
    std::string im = rat_str(z.im) + "i";
    if (z.re == 0) return im;
    if (z.im > 0) return rat_str(z.re) + "+" + im;
    return rat_str(z.re) + im;
}

} // namespace micz
