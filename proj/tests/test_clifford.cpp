#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "micz/clifford.hpp"
#include "micz/errors.hpp"

using namespace micz;

namespace {

bool hermitian(const Mat<GaussRat>& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != m(j, i).conj()) return false;
    return true;
}

} // namespace

TEST_CASE("Clifford relations and hermiticity for n = 2, 3, 4") {
    for (int n : {2, 3, 4}) {
        auto g = gamma_matrices(n);
        REQUIRE(static_cast<int>(g.size()) == 2 * n - 1);
        int dim = 1 << (n - 1);
        REQUIRE(g[0].rows() == dim);
        Mat<GaussRat> id = Mat<GaussRat>::identity(dim, GaussRat(1));
        for (std::size_t a = 0; a < g.size(); ++a) {
            CHECK(hermitian(g[a]));
            for (std::size_t b = 0; b <= a; ++b) {
                Mat<GaussRat> anti = anticommutator(g[a], g[b]);
                if (a == b)
                    CHECK(anti == id.scaled(GaussRat(2)));
                else
                    CHECK(anti.is_zero());
            }
        }
    }
}

TEST_CASE("recorded sign of the gamma product for n = 2") {
    auto g = gamma_matrices(2);
    Mat<GaussRat> prod = g[0] * g[1] * g[2];
    CHECK(prod == Mat<GaussRat>::identity(2, GaussRat::i()));
}

TEST_CASE("so(2n-1) bracket relations for the spin representation") {
    for (int n : {2, 3}) {
        Rep rep = rep_s2mu(n, 1);
        int m = rep.num_gammas();
        CHECK(rep.dim == (1 << (n - 1)));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    for (int d = 0; d < m; ++d) {
                        Mat<GaussRat> lhs = commutator(rep.gamma(a, b), rep.gamma(c, d));
                        Mat<GaussRat> rhs(rep.dim, rep.dim);
                        GaussRat iu = GaussRat::i();
                        if (a == c) rhs += rep.gamma(d, b).scaled(iu);
                        if (b == d) rhs += rep.gamma(c, a).scaled(iu);
                        if (a == d) rhs -= rep.gamma(c, b).scaled(iu);
                        if (b == c) rhs -= rep.gamma(d, a).scaled(iu);
                        CHECK(lhs == rhs);
                    }
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) CHECK(hermitian(rep.gamma(a, b)));
    }
}

TEST_CASE("trivial representation") {
    Rep rep = rep_s2mu(3, 0);
    CHECK(rep.dim == 1);
    CHECK(rep.gens.size() == 10);
    for (const auto& g : rep.gens) CHECK(g.is_zero());
    CHECK(casimir(rep) == 0);
}

TEST_CASE("spin-1 negative control matches the spin-1/2 bracket convention") {
    Rep half = rep_s2mu(2, 1);
    Rep one = rep_s2mu(2, 2);
    CHECK(one.dim == 3);
    // [gamma_12, gamma_23] = i * gamma_13 in both representations
    Mat<GaussRat> lhs_h = commutator(half.gamma(0, 1), half.gamma(1, 2));
    CHECK(lhs_h == half.gamma(0, 2).scaled(GaussRat::i()));
    Mat<GaussRat> lhs_1 = commutator(one.gamma(0, 1), one.gamma(1, 2));
    CHECK(lhs_1 == one.gamma(0, 2).scaled(GaussRat::i()));
    for (const auto& g : one.gens) CHECK(hermitian(g));
    CHECK(casimir(one) == 2);
}

TEST_CASE("casimir values against the entrywise oracle") {
    CHECK(casimir(rep_s2mu(2, 1)) == rat(3, 4));
    CHECK(casimir(rep_s2mu(3, 1)) == rat(5, 2));
    // spinor casimir m(m-1)/8 with m gammas
    CHECK(casimir(rep_s2mu(2, 1)) == rat(3 * 2, 8));
    CHECK(casimir(rep_s2mu(3, 1)) == rat(5 * 4, 8));
}

TEST_CASE("unsupported representations are rejected") {
    CHECK_THROWS_AS(rep_s2mu(3, 2), UnsupportedRep);
    CHECK_THROWS_AS(rep_s2mu(2, 3), UnsupportedRep);
    CHECK_THROWS_AS(rep_s2mu(1, 1), UnsupportedRep);
}

TEST_CASE("casimir rejects a broken generator family") {
    Rep rep = rep_s2mu(2, 1);
    rep.gens[0] = Mat<GaussRat>(2, 2);
    rep.gens[0](0, 0) = GaussRat(1); // projector: squared sum no longer scalar
    CHECK_THROWS_AS(casimir(rep), NotScalar);
}
