#include "micz/clifford.hpp"

#include "micz/errors.hpp"

namespace micz {

namespace {

Mat<GaussRat> pauli(int k) {
    Mat<GaussRat> m(2, 2);
    switch (k) {
    case 1:
        m(0, 1) = GaussRat(1);
        m(1, 0) = GaussRat(1);
        break;
    case 2:
        m(0, 1) = -GaussRat::i();
        m(1, 0) = GaussRat::i();
        break;
    default:
        m(0, 0) = GaussRat(1);
        m(1, 1) = -GaussRat(1);
        break;
    }
    return m;
}

} // namespace

std::vector<Mat<GaussRat>> gamma_matrices(int n) {
    if (n < 2) throw UnsupportedRep("gamma_matrices requires n >= 2");
    std::vector<Mat<GaussRat>> g = {pauli(1), pauli(2), pauli(3)};
    for (int k = 3; k <= n; ++k) {
        // m gammas of size d -> m+2 of size 2d:
        //   sigma1 (x) gamma_a, then sigma2 (x) I, sigma3 (x) I.
        int d = g[0].rows();
        Mat<GaussRat> id = Mat<GaussRat>::identity(d, GaussRat(1));
        std::vector<Mat<GaussRat>> next;
        next.reserve(g.size() + 2);
        for (const auto& ga : g) next.push_back(kron(pauli(1), ga));
        next.push_back(kron(pauli(2), id));
        next.push_back(kron(pauli(3), id));
        g = std::move(next);
    }
    return g;
}

Mat<GaussRat> Rep::gamma(int a, int b) const {
    int m = num_gammas();
    if (a < 0 || b < 0 || a >= m || b >= m) throw DimMismatch("gamma index out of range");
    if (a == b) return Mat<GaussRat>(dim, dim);
    if (a < b) {
        int idx = a * (2 * m - a - 1) / 2 + (b - a - 1);
        return gens[static_cast<std::size_t>(idx)];
    }
    return -gamma(b, a);
}

Rep rep_s2mu(int n, int two_mu) {
    bool ok = (two_mu == 0 || two_mu == 1) || (two_mu == 2 && n == 2);
    if (n < 2 || !ok) throw UnsupportedRep("rep_s2mu: unsupported (n, two_mu)");
    Rep rep;
    rep.n = n;
    rep.two_mu = two_mu;
    int m = 2 * n - 1;
    int pairs = m * (m - 1) / 2;
    if (two_mu == 0) {
        rep.dim = 1;
        rep.gens.assign(static_cast<std::size_t>(pairs), Mat<GaussRat>(1, 1));
        return rep;
    }
    if (two_mu == 1) {
        auto g = gamma_matrices(n);
        rep.dim = g[0].rows();
        GaussRat quarter_i = GaussRat::i() * GaussRat(rat(1, 4));
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                rep.gens.push_back(commutator(g[a], g[b]).scaled(quarter_i));
        return rep;
    }
    // Spin 1 for so(3): gamma_ab = -eps_abc J_c with (J_c)_{jk} = -i eps_cjk.
    // The sign is calibrated so that for spin 1/2 the same formula reproduces
    // (i/4)[gamma_a, gamma_b] (gamma_12 = -J_3 there).
    rep.dim = 3;
    auto eps = [](int a, int b, int c) -> int { return (a - b) * (b - c) * (c - a) / 2; };
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            Mat<GaussRat> g(3, 3);
            for (int c = 0; c < 3; ++c) {
                if (eps(a, b, c) == 0) continue;
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k)
                        if (eps(c, j, k) != 0)
                            g(j, k) += GaussRat(-eps(a, b, c)) * GaussRat(Rat(0), Rat(-eps(c, j, k)));
            }
            rep.gens.push_back(std::move(g));
        }
    return rep;
}

Rat casimir(const Rep& rep) {
    Mat<GaussRat> acc(rep.dim, rep.dim);
    int m = rep.num_gammas();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            const Mat<GaussRat> g = rep.gamma(a, b);
            acc += g * g;
        }
    GaussRat lambda = acc(0, 0);
    if (!lambda.is_real()) throw NotScalar("casimir sum has a non-real diagonal");
    if (acc != Mat<GaussRat>::identity(rep.dim, lambda))
        throw NotScalar("casimir sum is not a multiple of the identity");
    return lambda.re;
}

} // namespace micz
