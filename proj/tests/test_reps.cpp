#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <vector>

#include "micz/errors.hpp"
#include "micz/reps.hpp"

using namespace micz;

namespace {

// Independent rank-2 dimension oracle: Freudenthal's recursion on the grid of
// weights lambda - c1 s1 - c2 s2, summed over all multiplicities. Slow and
// direct, shares nothing with the Weyl product formula under test.
long long freudenthal_dimension(const Weight& w) {
    struct Root {
        Rat e1, e2; // orthogonal coordinates
        int c1, c2; // the same root in simple-root coordinates
    };
    std::vector<Root> positive;
    Rat rho1, rho2;
    if (w.series == Series::B) {
        positive = {{1, -1, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 1}, {1, 1, 1, 2}};
        rho1 = rat(3, 2);
        rho2 = rat(1, 2);
    } else {
        positive = {{1, -1, 1, 0}, {1, 1, 0, 1}};
        rho1 = 1;
        rho2 = 0;
    }
    const Rat& s1e1 = positive[0].e1;
    const Rat& s1e2 = positive[0].e2;
    const Rat& s2e1 = positive[1].e1;
    const Rat& s2e2 = positive[1].e2;

    constexpr int C = 16;
    auto dot = [](const Rat& a1, const Rat& a2, const Rat& b1, const Rat& b2) -> Rat {
        return a1 * b1 + a2 * b2;
    };
    const Rat l1 = w.entries[0], l2 = w.entries[1];
    Rat top = dot(l1 + rho1, l2 + rho2, l1 + rho1, l2 + rho2);

    std::array<std::array<long long, C + 1>, C + 1> mult{};
    mult[0][0] = 1;
    for (int h = 1; h <= 2 * C; ++h)
        for (int c1 = std::max(0, h - C); c1 <= std::min(h, C); ++c1) {
            int c2 = h - c1;
            Rat m1 = l1 - c1 * s1e1 - c2 * s2e1;
            Rat m2 = l2 - c1 * s1e2 - c2 * s2e2;
            Rat numer = 0;
            for (const Root& a : positive)
                for (int k = 1;; ++k) {
                    int u1 = c1 - k * a.c1, u2 = c2 - k * a.c2;
                    if (u1 < 0 || u2 < 0) break;
                    if (mult[u1][u2] == 0) continue;
                    Rat term = dot(m1 + k * a.e1, m2 + k * a.e2, a.e1, a.e2);
                    numer += rat(2 * mult[u1][u2]) * term;
                }
            Rat denom = top - dot(m1 + rho1, m2 + rho2, m1 + rho1, m2 + rho2);
            if (denom == 0) {
                REQUIRE(numer == 0);
                continue;
            }
            Rat m = numer / denom;
            REQUIRE(m.get_den() == 1);
            REQUIRE(m >= 0);
            mult[c1][c2] = m.get_num().get_si();
        }

    long long dim = 0;
    for (const auto& row : mult)
        for (long long m : row) dim += m;
    return dim;
}

Weight wB(const Rat& a, const Rat& b) { return {Series::B, {a, b}}; }
Weight wD(const Rat& a, const Rat& b) { return {Series::D, {a, b}}; }

} // namespace

TEST_CASE("known orthogonal dimensions") {
    CHECK(weyl_dimension(wB(0, 0)) == 1);
    CHECK(weyl_dimension(wB(1, 0)) == 5);
    CHECK(weyl_dimension(wB(1, 1)) == 10);
    CHECK(weyl_dimension(wB(2, 0)) == 14);
    CHECK(weyl_dimension(wB(rat(1, 2), rat(1, 2))) == 4);
    CHECK(weyl_dimension(wB(rat(3, 2), rat(1, 2))) == 16);
    CHECK(weyl_dimension(wD(1, 0)) == 4);
    CHECK(weyl_dimension(wD(rat(3, 2), rat(1, 2))) == 6);
    CHECK(weyl_dimension(wD(rat(3, 2), rat(-1, 2))) == 6);
    CHECK(weyl_dimension({Series::B, {1, 0, 0}}) == 7);
    CHECK(weyl_dimension({Series::B, {rat(1, 2), rat(1, 2), rat(1, 2)}}) == 8);
    CHECK(weyl_dimension({Series::D, {1, 0, 0}}) == 6);
    for (int l = 0; l <= 5; ++l)
        CHECK(weyl_dimension(wD(l, 0)) == static_cast<long long>(l + 1) * (l + 1));
}

TEST_CASE("weyl product formula agrees with freudenthal multiplicity sums") {
    for (int two_a = 0; two_a <= 6; ++two_a)
        for (int two_b = -two_a; two_b <= two_a; two_b += 2) {
            Weight d = wD(rat(two_a, 2), rat(two_b, 2));
            CHECK(weyl_dimension(d) == freudenthal_dimension(d));
            if (two_b < 0) continue;
            Weight b = wB(rat(two_a, 2), rat(two_b, 2));
            CHECK(weyl_dimension(b) == freudenthal_dimension(b));
        }
}

TEST_CASE("non-dominant and mixed-congruence weights are rejected") {
    CHECK_THROWS_AS(weyl_dimension(wB(0, 1)), NonDominant);
    CHECK_THROWS_AS(weyl_dimension(wB(1, -1)), NonDominant);
    CHECK_THROWS_AS(weyl_dimension(wB(1, rat(1, 2))), NonDominant);
    CHECK_THROWS_AS(weyl_dimension(wD(rat(1, 2), 1)), NonDominant);
    CHECK_THROWS_AS(weyl_dimension(wD(0, 1)), NonDominant);
    CHECK_THROWS_AS(branch_B_to_D(wB(0, 1)), NonDominant);
    CHECK_THROWS_AS(branch_B_to_D(wD(1, 0)), NonDominant);
}

TEST_CASE("branching interlaces and preserves dimension") {
    {
        std::vector<Weight> got = branch_B_to_D(wB(1, 0));
        std::vector<Weight> want = {wD(0, 0), wD(1, 0)};
        std::sort(got.begin(), got.end());
        CHECK(got == want);
    }
    {
        std::vector<Weight> got = branch_B_to_D(wB(rat(1, 2), rat(1, 2)));
        std::vector<Weight> want = {wD(rat(1, 2), rat(-1, 2)), wD(rat(1, 2), rat(1, 2))};
        std::sort(got.begin(), got.end());
        CHECK(got == want);
    }
    CHECK(branch_B_to_D(wB(0, 0)) == std::vector<Weight>{wD(0, 0)});

    for (int two_a = 0; two_a <= 6; ++two_a)
        for (int two_b = two_a % 2; two_b <= two_a; two_b += 2) {
            Weight b = wB(rat(two_a, 2), rat(two_b, 2));
            long long total = 0;
            std::vector<Weight> parts = branch_B_to_D(b);
            for (const Weight& d : parts) {
                CHECK(d.series == Series::D);
                total += weyl_dimension(d);
            }
            CHECK(total == weyl_dimension(b));
            std::sort(parts.begin(), parts.end());
            CHECK(std::adjacent_find(parts.begin(), parts.end()) == parts.end());
        }
}

TEST_CASE("k-type ladder start for both charges at n = 2") {
    ProblemConfig cfg;
    cfg.n = 2;
    cfg.two_mu = 1;
    KTypeTable t = k_type_table(cfg, 1);
    CHECK(t.g_weight.series == Series::G);
    CHECK(t.g_weight.entries == std::vector<Rat>{Rat(-2), rat(1, 2), rat(1, 2)});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].l == 0);
    CHECK(t.rows[0].spin2 == Rat(-2));
    CHECK(t.rows[0].so_odd == wB(rat(1, 2), rat(1, 2)));
    CHECK(t.rows[0].dim == 4);
    CHECK(t.rows[1].spin2 == Rat(-3));
    CHECK(t.rows[1].so_odd == wB(rat(3, 2), rat(1, 2)));
    CHECK(t.rows[1].dim == 16);

    cfg.two_mu = 0;
    KTypeTable s = k_type_table(cfg, 0);
    CHECK(s.g_weight.entries == std::vector<Rat>{rat(-3, 2), Rat(0), Rat(0)});
    REQUIRE(s.rows.size() == 1);
    CHECK(s.rows[0].spin2 == rat(-3, 2));
    CHECK(s.rows[0].so_odd == wB(0, 0));
    CHECK(s.rows[0].dim == 1);
}

TEST_CASE("decomposition suite runs clean on the first two levels") {
    ProblemConfig cfg;
    cfg.n = 2;
    cfg.two_mu = 1;
    VerificationReport rep = verify_decompositions(cfg, 1);
    CHECK(rep.items.size() == 9);
    CHECK(rep.ok());
    for (const auto& it : rep.items) CHECK(it.suite == "reps");
}

TEST_CASE("abstract generator matrices satisfy the bracket table") {
    ProblemConfig cfg;
    cfg.n = 2;
    cfg.two_mu = 0;
    VerificationReport rep = abstract_algebra_checks(cfg);
    CHECK(rep.items.size() == 23);
    CHECK(rep.ok());
}
