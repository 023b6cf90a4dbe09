#include "micz/gauge.hpp"

namespace micz {

Mat<ScalarExpr> lift_const(int D, const Mat<GaussRat>& m) {
    return m.map([&](const GaussRat& c) { return ScalarExpr::constant(D, c); });
}

Mat<ScalarExpr> lift_poly(int D, const Poly& p, const Mat<GaussRat>& m) {
    return m.map([&](const GaussRat& c) { return ScalarExpr(D, p.scaled(c), Poly()); });
}

namespace {

Mat<ScalarExpr> mat_derivative(const Mat<ScalarExpr>& m, int var) {
    return m.map([&](const ScalarExpr& e) { return e.derivative(var); });
}

} // namespace

GaugeField gauge_potential(const ProblemConfig& cfg) {
    GaugeField gf;
    gf.cfg = cfg;
    gf.rep = rep_s2mu(cfg.n, cfg.two_mu);
    int D = cfg.D();
    int dim = gf.rep.dim;
    // 1/(r(r+x_D)) via general inversion; reduces to (|x|^2 - x_D r)/(|x|^2 rho).
    ScalarExpr r = ScalarExpr::r(D);
    ScalarExpr xD = ScalarExpr::variable(D, D - 1);
    ScalarExpr inv_rrxd = (r * (r + xD)).inverse();
    gf.A.assign(static_cast<std::size_t>(D), Mat<ScalarExpr>(dim, dim));
    for (int b = 0; b + 1 < D; ++b) {
        Mat<ScalarExpr> sum(dim, dim);
        for (int a = 0; a + 1 < D; ++a)
            sum += lift_poly(D, Poly::variable(a), gf.rep.gamma(a, b));
        gf.A[static_cast<std::size_t>(b)] =
            sum.map([&](const ScalarExpr& e) { return -(inv_rrxd * e); });
    }
    return gf;
}

void field_strength(GaugeField& gf) {
    const ProblemConfig& cfg = gf.cfg;
    int D = cfg.D();
    int dim = gf.rep.dim;
    GaussRat iu = GaussRat::i();
    gf.F.assign(static_cast<std::size_t>(D),
                std::vector<Mat<ScalarExpr>>(static_cast<std::size_t>(D), Mat<ScalarExpr>(dim, dim)));
    gf.F_closed = gf.F;
    for (int k = 0; k < D; ++k)
        for (int l = k + 1; l < D; ++l) {
            Mat<ScalarExpr> f = mat_derivative(gf.A[static_cast<std::size_t>(l)], k) -
                                mat_derivative(gf.A[static_cast<std::size_t>(k)], l) +
                                commutator(gf.A[static_cast<std::size_t>(k)],
                                           gf.A[static_cast<std::size_t>(l)])
                                    .map([&](const ScalarExpr& e) { return e.scaled(iu); });
            gf.F[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = f;
            gf.F[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] = -f;
        }
    // Closed forms: F_Db = (1/r^3) x_a gamma_ab and the two-term F_ab display.
    ScalarExpr inv_r3(D, Poly(), Poly(GaussRat(1)), {{0, 2}}); // r/|x|^4 = 1/r^3
    ScalarExpr r = ScalarExpr::r(D);
    ScalarExpr xD = ScalarExpr::variable(D, D - 1);
    ScalarExpr inv_rrxd = (r * (r + xD)).inverse();
    ScalarExpr inv_rrxd2 = inv_rrxd * inv_rrxd;
    // 2 + x_D/r = (2|x|^2 + x_D r)/|x|^2
    ScalarExpr two_xdr(D, poly_s(D).scaled(GaussRat(2)), Poly::variable(D - 1), {{0, 1}});
    for (int b = 0; b + 1 < D; ++b) {
        Mat<ScalarExpr> sum(dim, dim);
        for (int a = 0; a + 1 < D; ++a)
            sum += lift_poly(D, Poly::variable(a), gf.rep.gamma(a, b));
        Mat<ScalarExpr> f = sum.map([&](const ScalarExpr& e) { return inv_r3 * e; });
        gf.F_closed[static_cast<std::size_t>(D - 1)][static_cast<std::size_t>(b)] = f;
        gf.F_closed[static_cast<std::size_t>(b)][static_cast<std::size_t>(D - 1)] = -f;
    }
    for (int a = 0; a + 1 < D; ++a)
        for (int b = 0; b + 1 < D; ++b) {
            if (a == b) continue;
            Mat<ScalarExpr> lead =
                lift_const(D, gf.rep.gamma(a, b)).map([&](const ScalarExpr& e) {
                    return (inv_rrxd * e).scaled(GaussRat(-2));
                });
            Mat<ScalarExpr> mid(dim, dim);
            for (int c = 0; c + 1 < D; ++c) {
                mid += lift_poly(D, Poly::variable(c) * Poly::variable(a), gf.rep.gamma(c, b));
                mid -= lift_poly(D, Poly::variable(c) * Poly::variable(b), gf.rep.gamma(c, a));
            }
            mid = mid.map([&](const ScalarExpr& e) { return two_xdr * e; });
            Mat<ScalarExpr> brk(dim, dim);
            for (int d = 0; d + 1 < D; ++d)
                for (int c = 0; c + 1 < D; ++c) {
                    Mat<GaussRat> cm = commutator(gf.rep.gamma(d, a), gf.rep.gamma(c, b));
                    if (cm.is_zero()) continue;
                    brk += lift_poly(D, Poly::variable(d) * Poly::variable(c), cm);
                }
            brk = brk.map([&](const ScalarExpr& e) { return e.scaled(iu); });
            gf.F_closed[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                lead + (mid + brk).map([&](const ScalarExpr& e) { return inv_rrxd2 * e; });
        }
}

} // namespace micz
