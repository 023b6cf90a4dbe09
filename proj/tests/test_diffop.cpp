#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "micz/diffop.hpp"
#include "micz/errors.hpp"

using namespace micz;

namespace {

constexpr int D = 4;

DiffOp sc(const ScalarExpr& e) { return DiffOp::mult_scalar(D, 1, e); }
DiffOp dd(int var) { return DiffOp::partial(D, 1, var); }
ScalarExpr x(int v) { return ScalarExpr::variable(D, v); }
ScalarExpr cst(long k) { return ScalarExpr::constant(D, GaussRat(k)); }

DiffOp random_small_op(SplitMix64& rng) {
    DiffOp p(D, 1);
    int nterms = 1 + static_cast<int>(rng.below(3));
    for (int t = 0; t < nterms; ++t) {
        Mono beta = 0;
        int order = static_cast<int>(rng.below(2));
        for (int k = 0; k < order; ++k) beta = mono_mul(beta, mono_var(static_cast<int>(rng.below(D))));
        Poly f;
        for (int j = 0; j < 2; ++j) {
            Mono m = 0;
            for (int v = 0; v < D; ++v) m = mono_mul(m, mono_var(v, static_cast<int>(rng.below(2))));
            f += Poly::term(m, GaussRat(static_cast<long>(rng.below(7)) - 3));
        }
        ScalarExpr::DenMap den;
        if (rng.below(3) == 0) den[0] = 1;
        Mat<ScalarExpr> coeff(1, 1);
        coeff(0, 0) = ScalarExpr(D, f, Poly(), den);
        p.add_term(beta, coeff);
    }
    return p;
}

} // namespace

TEST_CASE("canonical commutation through composition") {
    // d1 ∘ x1 = x1 d1 + 1
    DiffOp composed = compose(dd(0), sc(x(0)));
    DiffOp expect = compose(sc(x(0)), dd(0)) + sc(cst(1));
    CHECK(composed == expect);
}

TEST_CASE("composition past r produces the chain term") {
    // d1 ∘ r = r d1 + x1 r/|x|^2
    DiffOp composed = compose(dd(0), sc(ScalarExpr::r(D)));
    DiffOp expect = sc(ScalarExpr::r(D)) * dd(0) + sc(ScalarExpr(D, Poly(), Poly::variable(0), {{0, 1}}));
    CHECK(composed == expect);
}

TEST_CASE("flat momenta commute") {
    GaussRat mi = -GaussRat::i();
    DiffOp p1 = dd(0).scaled(mi), p2 = dd(1).scaled(mi);
    CHECK(commutator(p1, p2).is_zero());
    CHECK((compose(p1, p2) - compose(p2, p1)).is_zero());
}

TEST_CASE("momentum-position commutator") {
    GaussRat mi = -GaussRat::i();
    for (int al = 0; al < D; ++al)
        for (int be = 0; be < D; ++be) {
            DiffOp c = commutator(dd(al).scaled(mi), sc(x(be)));
            if (al == be)
                CHECK(c == sc(cst(1)).scaled(mi));
            else
                CHECK(c.is_zero());
        }
}

TEST_CASE("anticommutator of identical derivatives") {
    DiffOp a = anticommutator(dd(0), dd(0));
    DiffOp expect = compose(dd(0), dd(0)).scaled(GaussRat(2));
    CHECK(a == expect);
    CHECK(a.max_order() == 2);
}

TEST_CASE("conjugation by sqrt(r)") {
    // r^{-1/2} d1 r^{1/2} = d1 + x1/(2 r^2)
    DiffOp lhs = conjugate_sqrt_r(dd(0));
    DiffOp expect = dd(0) + sc(ScalarExpr(D, Poly::variable(0).scaled(GaussRat(rat(1, 2))), Poly(), {{0, 1}}));
    CHECK(lhs == expect);
    // multiplication operators are fixed
    CHECK(conjugate_sqrt_r(sc(x(0))) == sc(x(0)));
    // r^{-1/2} (r d1) r^{1/2} = r d1 + x1/(2r)
    DiffOp rd1 = dd(0).scaled_expr(ScalarExpr::r(D));
    DiffOp expect2 = rd1 + sc(ScalarExpr(D, Poly(), Poly::variable(0).scaled(GaussRat(rat(1, 2))), {{0, 1}}));
    CHECK(conjugate_sqrt_r(rd1) == expect2);
}

TEST_CASE("conjugation by sqrt(r) is an algebra morphism") {
    SplitMix64 rng(17);
    for (int t = 0; t < 10; ++t) {
        DiffOp p = random_small_op(rng), q = random_small_op(rng);
        CHECK(conjugate_sqrt_r(compose(p, q)) == compose(conjugate_sqrt_r(p), conjugate_sqrt_r(q)));
    }
}

TEST_CASE("associativity of composition") {
    SplitMix64 rng(23);
    for (int t = 0; t < 50; ++t) {
        DiffOp p = random_small_op(rng), q = random_small_op(rng), r = random_small_op(rng);
        CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
    }
}

TEST_CASE("Jacobi identity") {
    SplitMix64 rng(29);
    for (int t = 0; t < 20; ++t) {
        DiffOp p = random_small_op(rng), q = random_small_op(rng), r = random_small_op(rng);
        DiffOp jac = commutator(p, commutator(q, r)) + commutator(q, commutator(r, p)) +
                     commutator(r, commutator(p, q));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("derivative order bound is enforced") {
    DiffOp d2 = compose(dd(0), dd(0));
    DiffOp d4 = compose(d2, d2);
    CHECK(d4.max_order() == 4);
    CHECK_THROWS_AS(compose(d4, dd(1)), Error);
}

TEST_CASE("application to sections") {
    Section s;
    s.poly = Poly::variable(0);
    s.half_r_exponent = 0;
    s.decay = Rat(1);
    s.spinor = {GaussRat(1)};
    // d1 (x1 e^{-r}) = e^{-r} - (x1^2/r) e^{-r}
    auto out = apply(dd(0), s);
    std::vector<Section> expect;
    expect.push_back({Poly(GaussRat(1)), 0, Rat(1), {GaussRat(1)}});
    expect.push_back({-(Poly::variable(0) * Poly::variable(0)), -2, Rat(1), {GaussRat(1)}});
    CHECK(sections_equal(out, expect, 1, D));

    // r * (r^{1/2} e^{-r}) = r^{3/2} e^{-r}
    Section half{Poly(GaussRat(1)), 1, Rat(1), {GaussRat(1)}};
    auto out2 = apply(sc(ScalarExpr::r(D)), half);
    std::vector<Section> expect2{{Poly(GaussRat(1)), 3, Rat(1), {GaussRat(1)}}};
    CHECK(sections_equal(out2, expect2, 1, D));
}

TEST_CASE("harmonic polynomial is killed by the Laplacian") {
    DiffOp lap(D, 1);
    for (int v = 0; v < D; ++v) lap += compose(dd(v), dd(v));
    Section s{Poly::variable(0) * Poly::variable(1), 0, Rat(0), {GaussRat(1)}};
    CHECK(apply(lap, s).empty());
}

TEST_CASE("apply rejects coefficients outside the r-Laurent subring") {
    ScalarExpr bad = (ScalarExpr::r(D) + ScalarExpr::variable(D, 3)).inverse();
    Section s{Poly(GaussRat(1)), 0, Rat(1), {GaussRat(1)}};
    CHECK_THROWS_AS(apply(sc(bad), s), NonPolynomialCoefficient);
}

TEST_CASE("pointwise operator evaluation") {
    DiffOp p = compose(sc(x(0)), dd(1));
    RationalPoint pt({rat(1), rat(2), rat(3), rat(4)});
    auto jets = p.eval_at(pt);
    REQUIRE(jets.size() == 1);
    CHECK(jets.begin()->first == mono_var(1));
    CHECK(jets.begin()->second(0, 0) == QVal::rational(GaussRat(1)));

    DiffOp rr = sc(ScalarExpr::r(D));
    RationalPoint pyth({rat(3), rat(4), rat(1), rat(1)});
    auto jets2 = rr.eval_at(pyth);
    REQUIRE(jets2.size() == 1);
    CHECK(jets2.begin()->second(0, 0) == QVal(GaussRat(0), GaussRat(1), pyth.s));

    CHECK((p - p).eval_at(pt).empty());
}

TEST_CASE("module action: apply respects composition") {
    SplitMix64 rng(41);
    for (int t = 0; t < 10; ++t) {
        DiffOp p = random_small_op(rng), q = random_small_op(rng);
        Section s{Poly::variable(static_cast<int>(rng.below(D))), 2, Rat(1), {GaussRat(1)}};
        auto lhs = apply(compose(p, q), s);
        std::vector<Section> rhs;
        for (const Section& mid : apply(q, s))
            for (Section& piece : apply(p, mid)) rhs.push_back(piece);
        CHECK(sections_equal(lhs, rhs, 1, D));
    }
}

TEST_CASE("pointwise evaluation agrees with application") {
    SplitMix64 rng(43);
    for (int t = 0; t < 10; ++t) {
        DiffOp p = random_small_op(rng);
        Section s{Poly::variable(0) * Poly::variable(2), 2, Rat(2), {GaussRat(1)}};
        RationalPoint pt = random_point(D, rng);
        // left: apply then evaluate (dropping the common e^{-decay r} factor)
        auto image = apply(p, s);
        QVal left = QVal::rational(GaussRat(0));
        for (const Section& sec : image) {
            REQUIRE(sec.half_r_exponent % 2 == 0);
            int k = sec.half_r_exponent / 2;
            QVal rpow = QVal::rational(GaussRat(1));
            QVal rv(GaussRat(0), GaussRat(1), pt.s);
            QVal rinv = QVal(GaussRat(0), GaussRat(1), pt.s).scaled(GaussRat(1) / GaussRat(pt.s));
            for (int j = 0; j < (k >= 0 ? k : -k); ++j) rpow = rpow * (k >= 0 ? rv : rinv);
            left = left + QVal(sec.poly.eval(pt), GaussRat(0), Rat(0)) * rpow * QVal::rational(sec.spinor[0]);
        }
        // right: contract coefficient jets with derivative jets of the section
        auto jets = p.eval_at(pt);
        QVal right = QVal::rational(GaussRat(0));
        for (const auto& [beta, coeff] : jets) {
            Section ds = s;
            std::vector<Section> cur{ds};
            for (int v = 0; v < D; ++v)
                for (int k = 0; k < mono_exp(beta, v); ++k) {
                    std::vector<Section> next;
                    DiffOp dv = dd(v);
                    for (const Section& piece : cur)
                        for (Section& img : apply(dv, piece)) next.push_back(img);
                    cur = std::move(next);
                }
            QVal sval = QVal::rational(GaussRat(0));
            for (const Section& sec : cur) {
                REQUIRE(sec.half_r_exponent % 2 == 0);
                int k = sec.half_r_exponent / 2;
                QVal rpow = QVal::rational(GaussRat(1));
                QVal rv(GaussRat(0), GaussRat(1), pt.s);
                QVal rinv = QVal(GaussRat(0), GaussRat(1), pt.s).scaled(GaussRat(1) / GaussRat(pt.s));
                for (int j = 0; j < (k >= 0 ? k : -k); ++j) rpow = rpow * (k >= 0 ? rv : rinv);
                sval = sval + QVal(sec.poly.eval(pt), GaussRat(0), Rat(0)) * rpow;
            }
            right = right + coeff(0, 0) * sval;
        }
        CHECK(left == right);
    }
}
