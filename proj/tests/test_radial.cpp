#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "micz/errors.hpp"
#include "micz/radial.hpp"

using namespace micz;

namespace {

bool same_fn(const RadialFunction& a, const RadialFunction& b) {
    return a.poly == b.poly && a.half_exponent == b.half_exponent && a.decay == b.decay &&
           a.c2 == b.c2;
}

Rat binom(const Rat& top, int k) {
    Rat num(1), den(1);
    for (int i = 0; i < k; ++i) {
        num *= top - i;
        den *= i + 1;
    }
    return num / den;
}

} // namespace

TEST_CASE("ground state energies") {
    CHECK(energy(0, 2, rat(1, 2)) == rat(-1, 8));
    CHECK(energy(0, 2, Rat(0)) == rat(-2, 9));
    CHECK(energy(1, 3, Rat(0)) == rat(-2, 49));
    CHECK(energy(1, 2, rat(1, 2)) == rat(-1, 18));
}

TEST_CASE("energy depends on the sector only through N = k + l_mu") {
    for (int n : {2, 3})
        for (int tm : {0, 1})
            for (int k = 1; k <= 3; ++k)
                for (int l = 0; l <= 3; ++l) {
                    SpectralLabel lab{k, l, n, tm};
                    Rat N = lab.big_n();
                    CHECK(energy(lab.level(), n, lab.mu()) == Rat(-1) / (2 * N * N));
                }
}

TEST_CASE("each level splits into level+1 sectors") {
    for (int I = 0; I <= 6; ++I) {
        int count = 0;
        for (int k = 1; k <= I + 1; ++k)
            for (int l = 0; l <= I; ++l)
                if (SpectralLabel{k, l, 2, 1}.level() == I) ++count;
        CHECK(count == I + 1);
    }
}

TEST_CASE("laguerre polynomials match the closed-form coefficient sum") {
    Poly L12 = laguerre_poly(2, Rat(1));
    CHECK(L12.terms().at(Mono(0)) == GaussRat(3));
    CHECK(L12.terms().at(mono_var(0)) == GaussRat(-3));
    CHECK(L12.terms().at(mono_var(0, 2)) == GaussRat(rat(1, 2)));

    for (int m = 0; m <= 5; ++m)
        for (const Rat& alpha : {Rat(1), Rat(2), rat(5, 2), Rat(7)}) {
            Poly L = laguerre_poly(m, alpha);
            CHECK(L.terms().size() == static_cast<std::size_t>(m + 1));
            for (int j = 0; j <= m; ++j) {
                Rat fact(1);
                for (int i = 2; i <= j; ++i) fact *= i;
                Rat want = binom(Rat(m) + alpha, m - j) / fact;
                if (j % 2) want = -want;
                CHECK(L.terms().at(mono_var(0, j)) == GaussRat(want));
            }
        }
}

TEST_CASE("bottom twisted eigenfunction is 2 r^{-1/2} e^{-r}") {
    RadialFunction f = radial_eigenfunction({1, 0, 2, 0}, true);
    CHECK(f.poly == Poly(GaussRat(1)));
    CHECK(f.half_exponent == -1);
    CHECK(f.decay == 1);
    CHECK(f.c2 == 4);
}

TEST_CASE("twisted eigenfunctions are orthonormal within a sector") {
    for (int n : {2, 3})
        for (int tm : {0, 1})
            for (int l : {0, 2}) {
                RadialFunction a = radial_eigenfunction({1, l, n, tm}, true);
                RadialFunction b = radial_eigenfunction({3, l, n, tm}, true);
                CHECK(radial_inner(a, a, n) == QVal::rational(GaussRat(1)));
                CHECK(radial_inner(b, b, n) == QVal::rational(GaussRat(1)));
                CHECK(radial_inner(a, b, n) == QVal::rational(GaussRat(0)));
                CHECK(radial_inner(b, a, n) == QVal::rational(GaussRat(0)));
            }
}

TEST_CASE("untwisted eigenfunctions carry the sector-dependent decay 1/N") {
    RadialFunction a = radial_eigenfunction({1, 0, 2, 0}, false);
    RadialFunction b = radial_eigenfunction({2, 0, 2, 0}, false);
    CHECK(a.decay == rat(2, 3));
    CHECK(b.decay == rat(2, 5));
    CHECK(radial_inner(a, a, 2) == QVal::rational(GaussRat(1)));
    CHECK(radial_inner(a, b, 2) == QVal::rational(GaussRat(0)));
    CHECK(radial_eigenfunction({1, 0, 2, 0}, true).decay == 1);
    CHECK(radial_eigenfunction({2, 0, 2, 0}, true).decay == 1);
}

TEST_CASE("hatted Gamma_{-1} eigenvalue is k + l_mu") {
    {
        SpectralLabel lab{1, 0, 2, 0}; // N = 3/2
        RadialFunction f = radial_eigenfunction(lab, true);
        RadialOp G = radial_operator(RadialName::GammaMinus, lab, true);
        CHECK(same_fn(radop_apply(G, f), f.scaled(GaussRat(rat(3, 2)))));
    }
    {
        SpectralLabel lab{2, 1, 2, 1}; // N = 4
        RadialFunction f = radial_eigenfunction(lab, true);
        RadialOp G = radial_operator(RadialName::GammaMinus, lab, true);
        CHECK(same_fn(radop_apply(G, f), f.scaled(GaussRat(4))));
    }
}

TEST_CASE("lowering ladder annihilates the bottom of each tower") {
    for (int n : {2, 3})
        for (int tm : {0, 1}) {
            SpectralLabel lab{1, 2, n, tm};
            RadialOp lower = radop_add(radial_operator(RadialName::T, lab, true),
                                       radop_scaled(radial_operator(RadialName::GammaPlus, lab, true),
                                                    GaussRat::i()));
            CHECK(radop_apply(lower, radial_eigenfunction(lab, true)).is_zero());
        }
}

TEST_CASE("twist map lands on a unit vector") {
    for (int n : {2, 3})
        for (int tm : {0, 1})
            for (int k : {1, 3}) {
                RadialFunction tau = twist_map({k, 1, n, tm});
                CHECK(radial_inner(tau, tau, n) == QVal::rational(GaussRat(1)));
            }
}

TEST_CASE("half-density conjugation is an algebra map") {
    SpectralLabel lab{2, 1, 3, 1};
    RadialOp H = radial_operator(RadialName::H, lab, false);
    RadialOp T = radial_operator(RadialName::T, lab, false);
    CHECK(radop_conjugate(radop_compose(H, T)) ==
          radop_compose(radop_conjugate(H), radop_conjugate(T)));
}

TEST_CASE("transverse harmonic factor is annihilated by the flat Laplacian") {
    for (int D : {4, 6})
        for (int l = 1; l <= 4; ++l) {
            Poly base = Poly::variable(0) + Poly::variable(1).scaled(GaussRat::i());
            Poly h(GaussRat(1));
            for (int j = 0; j < l; ++j) h = h * base;
            Poly lap;
            for (int a = 0; a < D; ++a) lap += h.derivative(a).derivative(a);
            CHECK(lap.is_zero());
        }
}

TEST_CASE("radial suite runs clean on a small window") {
    ProblemConfig cfg;
    cfg.n = 2;
    cfg.two_mu = 0;
    VerificationReport rep = verify_radial_eigensystem(cfg, 2, 1);
    CHECK(rep.items.size() == 34);
    CHECK(rep.ok());
    CHECK(rep.count(Status::expected_fail) == 0);
    for (const auto& it : rep.items) {
        CHECK(it.suite == "radial");
        CHECK(it.strategy == "exact-normal-form");
    }
}

TEST_CASE("full-dimension scalar sector matches the radial ladder") {
    ProblemConfig cfg;
    cfg.n = 2;
    cfg.two_mu = 0;
    VerificationReport rep = verify_full_scalar(cfg, 2, 2);
    CHECK(rep.items.size() == 10);
    CHECK(rep.ok());

    ProblemConfig bad = cfg;
    bad.two_mu = 1;
    CHECK_THROWS_AS(verify_full_scalar(bad, 1, 0), ConfigError);
}
