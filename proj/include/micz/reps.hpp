#pragma once

#include <string>
#include <vector>

#include "micz/config.hpp"
#include "micz/rational.hpp"
#include "micz/report.hpp"

namespace micz {

// B = odd orthogonal, D = even orthogonal, G = the noncompact algebra with
// the Spin(2) coordinate first.
enum class Series { B, D, G };

// Weight in orthogonal coordinates: length n for B_n/D_n, n+1 for G.
struct Weight {
    Series series = Series::B;
    std::vector<Rat> entries;

    bool operator==(const Weight& o) const {
        return series == o.series && entries == o.entries;
    }
    bool operator<(const Weight& o) const { return entries < o.entries; }
};

std::string weight_str(const Weight& w);

// prod_{alpha > 0} <lambda + rho, alpha> / <rho, alpha> over the explicit
// positive-root list of the series.
long long weyl_dimension(const Weight& w);

// All D_n weights m interlacing the B_n weight lambda
// (lambda_1 >= m_1 >= lambda_2 >= ... >= lambda_n >= |m_n|, same congruence
// class); each appears with multiplicity one.
std::vector<Weight> branch_B_to_D(const Weight& lambda);

struct KTypeRow {
    int l = 0;
    Rat spin2; // -(l + mu + n - 3/2) - 1
    Weight so_odd;
    long long dim = 0;
};

struct KTypeTable {
    Weight g_weight; // (-(n + mu - 1/2), mu, ..., mu)
    std::vector<KTypeRow> rows;
};

KTypeTable k_type_table(const ProblemConfig& cfg, int lmax);

// Level-by-level checks for 0 <= I <= imax: the dimension sum, the branching
// multiset, uniqueness of the highest weight against all dominant candidates,
// sector-times-angular degeneracy bookkeeping, and the K-type ladder.
VerificationReport verify_decompositions(const ProblemConfig& cfg, int imax);

// Defining (2n+3)-dimensional matrices, closure of their bracket table,
// Cartan basis and root vectors with [H_i, E_alpha] = alpha_i E_alpha, the
// Spin(2) ladder pair, and seeded Jacobi triples; sqrt(2) stays symbolic.
VerificationReport abstract_algebra_checks(const ProblemConfig& cfg);

} // namespace micz
