#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "micz/generators.hpp"

using namespace micz;

namespace {

GeneratorSet make(int n, int two_mu) {
    ProblemConfig cfg;
    cfg.n = n;
    cfg.two_mu = two_mu;
    GaugeField gf = gauge_potential(cfg);
    field_strength(gf);
    return build_generators(gf);
}

DiffOp scalar_op(const GeneratorSet& g, const ScalarExpr& e) {
    return DiffOp::mult_scalar(g.cfg.D(), g.dim, e);
}

} // namespace

TEST_CASE("dilation pair reproduces multiplication by r") {
    for (int two_mu : {0, 1}) {
        GeneratorSet g = make(2, two_mu);
        int D = g.cfg.D();
        // J(-1,0) - J(D+1,0) telescopes back to the plain radius operator.
        DiffOp y = g.J(-1, 0) + g.J(0, D + 1);
        CHECK(y == scalar_op(g, ScalarExpr::r(D)));
    }
}

TEST_CASE("coordinate operators arise as brackets with the radius") {
    GeneratorSet g = make(2, 1);
    int D = g.cfg.D();
    DiffOp y = g.J(-1, 0) + g.J(0, D + 1);
    for (int b = 1; b <= D; ++b) {
        DiffOp gamma_b = -g.J(0, b);
        DiffOp w = commutator(gamma_b, y).scaled(GaussRat::i());
        CHECK(w == scalar_op(g, ScalarExpr::variable(D, b - 1)));
    }
}

TEST_CASE("time translation generator has first-order closed form") {
    for (int two_mu : {0, 1}) {
        GeneratorSet g = make(2, two_mu);
        int D = g.cfg.D();
        DiffOp xdotpi(D, g.dim);
        for (int b = 0; b < D; ++b)
            xdotpi += g.pi[static_cast<std::size_t>(b)].scaled_expr(ScalarExpr::variable(D, b));
        DiffOp expected =
            xdotpi + scalar_op(g, ScalarExpr::constant(D, GaussRat(rat(0), rat(-(D - 1), 2))));
        CHECK(-g.J(-1, D + 1) == expected);
    }
}

TEST_CASE("bracket table instances across index blocks") {
    GeneratorSet g = make(2, 1);
    // adjacent Euclidean labels share one index
    CHECK(commutator(g.J(1, 2), g.J(2, 3)) == g.J(1, 3).scaled(-GaussRat::i()));
    // disjoint labels commute
    CHECK(commutator(g.J(1, 2), g.J(3, 4)).is_zero());
    // both extra indices carry the opposite metric sign
    CHECK(commutator(g.J(-1, 0), g.J(0, 5)) == g.J(-1, 5).scaled(GaussRat::i()));
}

TEST_CASE("conjugated angular operators for trivial charge") {
    GeneratorSet g = make(2, 0);
    int D = g.cfg.D();
    ScalarExpr r = ScalarExpr::r(D);
    for (int b = 1; b <= D; ++b) {
        // r d_b picks up the x_b r / (2|x|^2) shift under the half-power twist
        ScalarExpr shift(D, Poly(), Poly::variable(b - 1).scaled(GaussRat(rat(1, 2))), {{0, 1}});
        DiffOp expected =
            (DiffOp::partial(D, g.dim, b - 1).scaled_expr(r) + scalar_op(g, shift))
                .scaled(GaussRat::i());
        CHECK(g.Jhat(0, b) == expected);
    }
}

TEST_CASE("conjugation fixes multiplication operators in the table") {
    GeneratorSet g = make(2, 1);
    int D = g.cfg.D();
    DiffOp yhat = g.Jhat(-1, 0) + g.Jhat(0, D + 1);
    CHECK(yhat == scalar_op(g, ScalarExpr::r(D)));
}
