#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "micz/errors.hpp"
#include "micz/scalar.hpp"

using namespace micz;

namespace {

ScalarExpr random_expr(int D, SplitMix64& rng) {
    auto random_poly = [&](int terms) {
        Poly p;
        for (int t = 0; t < terms; ++t) {
            Mono m = 0;
            for (int v = 0; v < D; ++v) m = mono_mul(m, mono_var(v, static_cast<int>(rng.below(3))));
            long num = static_cast<long>(rng.below(9)) - 4;
            p += Poly::term(m, GaussRat(rat(num, 1 + static_cast<long>(rng.below(2)))));
        }
        return p;
    };
    ScalarExpr::DenMap den;
    if (rng.below(2)) den[0] = 1 + static_cast<int>(rng.below(2));
    if (rng.below(3) == 0) den[1] = 1;
    return ScalarExpr(D, random_poly(3), random_poly(2), den);
}

} // namespace

TEST_CASE("defining relation r^2 = |x|^2") {
    int D = 4;
    ScalarExpr r = ScalarExpr::r(D);
    ScalarExpr rr = r * r;
    CHECK(rr == ScalarExpr(D, poly_s(D), Poly()));
    CHECK(rr.g().is_zero());
}

TEST_CASE("rationalization of 1/(r+x_D)") {
    int D = 4;
    ScalarExpr e = (ScalarExpr::r(D) + ScalarExpr::variable(D, 3)).inverse();
    // (-x_D + r)/rho
    ScalarExpr expect(D, -Poly::variable(3), Poly(GaussRat(1)), {{1, 1}});
    CHECK(e == expect);
    CHECK(e * (ScalarExpr::r(D) + ScalarExpr::variable(D, 3)) ==
          ScalarExpr::constant(D, GaussRat(1)));
}

TEST_CASE("difference of squares collapses the r part") {
    int D = 4;
    ScalarExpr x1 = ScalarExpr::variable(D, 0), r = ScalarExpr::r(D);
    ScalarExpr p = (x1 + r) * (x1 - r);
    CHECK(p.g().is_zero());
    CHECK(p == ScalarExpr(D, Poly::variable(0) * Poly::variable(0) - poly_s(D), Poly()));
}

TEST_CASE("inverse of zero expression throws") {
    int D = 4;
    ScalarExpr r = ScalarExpr::r(D);
    ScalarExpr zero = r * r - ScalarExpr(D, poly_s(D), Poly());
    CHECK(zero.is_zero());
    CHECK_THROWS_AS(zero.inverse(), DivisionByZeroExpr);
}

TEST_CASE("derivatives") {
    int D = 4;
    ScalarExpr x1 = ScalarExpr::variable(D, 0), r = ScalarExpr::r(D);
    CHECK(x1.derivative(0) == ScalarExpr::constant(D, GaussRat(1)));
    CHECK(x1.derivative(1).is_zero());
    // d_1 r = x_1 r / |x|^2
    CHECK(r.derivative(0) == ScalarExpr(D, Poly(), Poly::variable(0), {{0, 1}}));
    // d_1 (1/r) = -x_1 r / |x|^4
    ScalarExpr inv_r = r.inverse();
    CHECK(inv_r == ScalarExpr(D, Poly(), Poly(GaussRat(1)), {{0, 1}}));
    CHECK(inv_r.derivative(0) == ScalarExpr(D, Poly(), -Poly::variable(0), {{0, 2}}));
}

TEST_CASE("exact evaluation") {
    ScalarExpr r = ScalarExpr::r(4);
    RationalPoint p345({rat(3), rat(4), rat(0), rat(0)});
    QVal v = r.eval(p345);
    CHECK(v.a == GaussRat(5));
    CHECK(v.b.is_zero());

    ScalarExpr e = (r + ScalarExpr::variable(4, 3)).inverse();
    RationalPoint p({rat(1), rat(0), rat(0), rat(2)});
    QVal w = e.eval(p);
    CHECK(w.a == GaussRat(-2));
    CHECK(w.b == GaussRat(1));
    CHECK(w.s == 5);

    ScalarExpr x1r = ScalarExpr::variable(4, 0) * r;
    RationalPoint ones({rat(1), rat(1), rat(1), rat(1)});
    QVal u = x1r.eval(ones);
    CHECK(u.a == GaussRat(2));
    CHECK(u.b.is_zero());
}

TEST_CASE("pole detection") {
    ScalarExpr e = (ScalarExpr::r(4) + ScalarExpr::variable(4, 3)).inverse();
    RationalPoint axis({rat(0), rat(0), rat(0), rat(2)}); // rho = 0
    CHECK_THROWS_AS(e.eval(axis), PoleAtPoint);
}

TEST_CASE("evaluation is a homomorphism on random pairs") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        ScalarExpr a = random_expr(4, rng), b = random_expr(4, rng);
        for (int k = 0; k < 10; ++k) {
            RationalPoint p = random_point(4, rng);
            CHECK((a + b).eval(p) == a.eval(p) + b.eval(p));
            CHECK((a * b).eval(p) == a.eval(p) * b.eval(p));
        }
    }
}

TEST_CASE("Leibniz rule on random products") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        ScalarExpr a = random_expr(4, rng), b = random_expr(4, rng);
        int v = static_cast<int>(rng.below(4));
        CHECK((a * b).derivative(v) == a.derivative(v) * b + a * b.derivative(v));
    }
}

TEST_CASE("mixed partials commute") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        ScalarExpr a = random_expr(4, rng);
        CHECK(a.derivative(0).derivative(3) == a.derivative(3).derivative(0));
    }
}

TEST_CASE("normalization is idempotent") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        ScalarExpr a = random_expr(4, rng);
        ScalarExpr n1 = a.normalized();
        CHECK(n1 == a);
        CHECK(n1.normalized().str() == n1.str());
    }
}

TEST_CASE("general inversion registers ad-hoc denominators and round-trips") {
    int D = 4;
    ScalarExpr e = ScalarExpr::variable(D, 0) + ScalarExpr::r(D); // x1 + r
    ScalarExpr inv = e.inverse();
    CHECK(inv * e == ScalarExpr::constant(D, GaussRat(1)));
    CHECK(inv.inverse() == e);
    SplitMix64 rng(11);
    RationalPoint p = random_point(D, rng);
    CHECK(inv.eval(p) * e.eval(p) == QVal::rational(GaussRat(1)));
}

TEST_CASE("complex conjugation fixes r and conjugates coefficients") {
    int D = 4;
    ScalarExpr e = ScalarExpr::variable(D, 0).scaled(GaussRat::i()) + ScalarExpr::r(D);
    ScalarExpr c = e.conj();
    CHECK(c == ScalarExpr::variable(D, 0).scaled(-GaussRat::i()) + ScalarExpr::r(D));
    // (i x1 + r)(-i x1 + r) = x1^2 + |x|^2, real and r-free
    ScalarExpr prod = e * c;
    CHECK(prod.g().is_zero());
    CHECK(prod == ScalarExpr(D, Poly::variable(0) * Poly::variable(0) + poly_s(D), Poly()));
    CHECK(ScalarExpr::r(D).conj() == ScalarExpr::r(D));
}

TEST_CASE("nonzero expressions evaluate nonzero at some random point") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        ScalarExpr a = random_expr(4, rng);
        if (a.is_zero()) continue;
        bool hit = false;
        for (int k = 0; k < 20 && !hit; ++k) {
            RationalPoint p = random_point(4, rng);
            if (!a.eval(p).is_zero()) hit = true;
        }
        CHECK(hit);
    }
}

TEST_CASE("random points have the advertised shape") {
    SplitMix64 rng(1);
    for (int k = 0; k < 50; ++k) {
        RationalPoint p = random_point(6, rng);
        CHECK(p.D == 6);
        CHECK(p.s > 0);
        CHECK(p.rho > 0);
        for (const Rat& c : p.x) {
            CHECK(c != 0);
            Rat mag = c > 0 ? c : Rat(-c);
            CHECK(mag * 3 >= 1); // numerator >= 1 over den <= 3
            CHECK(mag <= 9);
        }
    }
    SplitMix64 r1(42), r2(42);
    RationalPoint a = random_point(4, r1), b = random_point(4, r2);
    CHECK(a.x == b.x);
}

TEST_CASE("QVal arithmetic in a quadratic extension") {
    QVal a(GaussRat(-2), GaussRat(1), Rat(5)); // -2 + sqrt(5)
    QVal b(GaussRat(2), GaussRat(1), Rat(5));  //  2 + sqrt(5)
    CHECK(a * b == QVal::rational(GaussRat(1)));
    CHECK((a + b) == QVal(GaussRat(0), GaussRat(2), Rat(5)));
    QVal collapsed(GaussRat(1), GaussRat(3), Rat(4)); // 1 + 3*2
    CHECK(collapsed.a == GaussRat(7));
    CHECK(collapsed.s == 0);
    CHECK_THROWS_AS(a + QVal(GaussRat(0), GaussRat(1), Rat(7)), Error);
}

TEST_CASE("float evaluation matches exact evaluation") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarExpr a = random_expr(4, rng);
        RationalPoint p = random_point(4, rng);
        QVal exact = a.eval(p);
        double rs = std::sqrt(rat_double(p.s));
        std::complex<double> approx = a.eval_double(p.coords_double(), rs);
        std::complex<double> expect(rat_double(exact.a.re) + rat_double(exact.b.re) * rs,
                                    rat_double(exact.a.im) + rat_double(exact.b.im) * rs);
        CHECK(std::abs(approx - expect) < 1e-9 * (1.0 + std::abs(expect)));
    }
}
