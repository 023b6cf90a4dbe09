#include "micz/generators.hpp"

namespace micz {

std::vector<int> GeneratorSet::indices() const {
    std::vector<int> idx = {-1, 0};
    for (int a = 1; a <= cfg.D() + 1; ++a) idx.push_back(a);
    return idx;
}

DiffOp GeneratorSet::J(int A, int B) const {
    if (A == B) return DiffOp(cfg.D(), dim);
    if (A < B) return j.at({A, B});
    return j.at({B, A}).scaled(GaussRat(-1));
}

DiffOp GeneratorSet::Jhat(int A, int B) const {
    if (A == B) return DiffOp(cfg.D(), dim);
    if (A < B) return jhat.at({A, B});
    return jhat.at({B, A}).scaled(GaussRat(-1));
}

GeneratorSet build_generators(const GaugeField& gf) {
    GeneratorSet gs;
    gs.cfg = gf.cfg;
    gs.gauge = gf;
    int D = gf.cfg.D();
    int dim = gf.rep.dim;
    gs.dim = dim;
    GaussRat iu = GaussRat::i();
    GaussRat half(rat(1, 2)), mhalf(rat(-1, 2));
    ScalarExpr r = ScalarExpr::r(D);

    gs.pi.reserve(static_cast<std::size_t>(D));
    for (int al = 0; al < D; ++al) {
        DiffOp p = DiffOp::partial(D, dim, al).scaled(-iu);
        if (!gf.A[static_cast<std::size_t>(al)].is_zero())
            p += DiffOp::mult(D, gf.A[static_cast<std::size_t>(al)]);
        gs.pi.push_back(std::move(p));
    }
    std::vector<DiffOp> Gam;
    Gam.reserve(static_cast<std::size_t>(D));
    for (int al = 0; al < D; ++al) Gam.push_back(gs.pi[static_cast<std::size_t>(al)].scaled_expr(r));

    gs.pi2 = DiffOp(D, dim);
    for (int al = 0; al < D; ++al)
        gs.pi2 += compose(gs.pi[static_cast<std::size_t>(al)], gs.pi[static_cast<std::size_t>(al)]);

    DiffOp X = gs.pi2.scaled_expr(r);
    if (gf.cfg.c() != 0) {
        ScalarExpr c_over_r(D, Poly(), Poly(GaussRat(gf.cfg.c())), {{0, 1}});
        X += DiffOp::mult_scalar(D, dim, c_over_r);
    }
    DiffOp Y = DiffOp::mult_scalar(D, dim, r);

    std::vector<DiffOp> Z, W, Aop, Mop;
    for (int al = 0; al < D; ++al) {
        Z.push_back(commutator(Gam[static_cast<std::size_t>(al)], X).scaled(iu));
        W.push_back(DiffOp::mult_scalar(D, dim, ScalarExpr::variable(D, al)));
        Aop.push_back(Z.back().scaled(half) + W.back().scaled(mhalf));
        Mop.push_back(Z.back().scaled(half) + W.back().scaled(half));
    }
    DiffOp GamD1 = X.scaled(half) + Y.scaled(mhalf);
    DiffOp GamM1 = X.scaled(half) + Y.scaled(half);
    // [Gamma_{D+1}, Gamma_{-1}] = [X, Y]/2 since [X, X] = [Y, Y] = 0
    DiffOp T = commutator(X, Y).scaled(iu * half);

    gs.j.emplace(std::make_pair(-1, 0), GamM1);
    for (int b = 1; b <= D; ++b) {
        gs.j.emplace(std::make_pair(-1, b), Mop[static_cast<std::size_t>(b - 1)].scaled(GaussRat(-1)));
        gs.j.emplace(std::make_pair(0, b), Gam[static_cast<std::size_t>(b - 1)].scaled(GaussRat(-1)));
        gs.j.emplace(std::make_pair(b, D + 1), Aop[static_cast<std::size_t>(b - 1)]);
    }
    gs.j.emplace(std::make_pair(-1, D + 1), T.scaled(GaussRat(-1)));
    gs.j.emplace(std::make_pair(0, D + 1), GamD1.scaled(GaussRat(-1)));
    for (int a = 1; a <= D; ++a)
        for (int b = a + 1; b <= D; ++b)
            gs.j.emplace(std::make_pair(a, b),
                         commutator(Gam[static_cast<std::size_t>(a - 1)],
                                    Gam[static_cast<std::size_t>(b - 1)])
                             .scaled(iu));

    for (const auto& [key, op] : gs.j) gs.jhat.emplace(key, conjugate_sqrt_r(op));
    return gs;
}

} // namespace micz
