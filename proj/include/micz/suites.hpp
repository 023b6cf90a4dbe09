#pragma once

#include <array>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "micz/generators.hpp"
#include "micz/jets.hpp"
#include "micz/report.hpp"

namespace micz {

std::vector<RationalPoint> seeded_points(int D, int count, std::uint64_t seed);

// ---------------------------------------------------------------- gauge ----

// Reference into the shared gauge tables; products are evaluated at points,
// never expanded symbolically.
struct MatRef {
    enum Kind { id, pot, fld, dfld, fld_closed };
    Kind kind = id;
    int pid = 0; // pair index for fld/dfld/fld_closed, coordinate for pot
    int k = 0;   // derivative direction for dfld
};

// coeff * scalar * product(factors); scalar with dim_vars() == 0 means 1.
struct MatTerm {
    GaussRat coeff;
    ScalarExpr scalar;
    std::vector<MatRef> factors;
};

struct GaugeCase {
    std::string id; // "(a)".."(g)", "curvature"
    std::string indices;
    std::vector<MatTerm> lhs, rhs;
};

struct GaugeCaseSet {
    int D = 0, dim = 0;
    std::vector<std::pair<int, int>> pairs; // pid -> (u < v), 0-based
    std::vector<std::vector<int>> pid;      // pid[u][v] for u < v
    std::vector<std::vector<Mat<ScalarExpr>>> dF; // [k][pid]
    std::vector<GaugeCase> cases;
};

GaugeCaseSet gauge_cases(const GaugeField& gf);
const char* gauge_anchor(const std::string& id);

// Per-point evaluation tables for the case set.
template <typename T>
struct GaugeTables {
    Mat<T> ident;
    std::vector<Mat<T>> A;
    std::vector<Mat<T>> F, Fc;          // by pid
    std::vector<std::vector<Mat<T>>> dF; // [k][pid]
};

template <typename T, typename EvalMat>
GaugeTables<T> eval_gauge_tables(const GaugeField& gf, const GaugeCaseSet& cs, const T& one,
                                 EvalMat&& ev) {
    GaugeTables<T> t;
    t.ident = Mat<T>::identity(cs.dim, one);
    for (const auto& m : gf.A) t.A.push_back(ev(m));
    for (const auto& [u, v] : cs.pairs) {
        t.F.push_back(ev(gf.F[u][v]));
        t.Fc.push_back(ev(gf.F_closed[u][v]));
    }
    t.dF.resize(cs.D);
    for (int k = 0; k < cs.D; ++k)
        for (std::size_t p = 0; p < cs.pairs.size(); ++p) t.dF[k].push_back(ev(cs.dF[k][p]));
    return t;
}

template <typename T, typename EvalScalar>
Mat<T> eval_mat_terms(const std::vector<MatTerm>& terms, const GaugeTables<T>& t, int dim,
                      const T& one, EvalScalar&& evs) {
    Mat<T> acc(dim, dim);
    for (const MatTerm& term : terms) {
        Mat<T> prod = Mat<T>::identity(dim, one);
        for (const MatRef& f : term.factors) {
            const Mat<T>* m = nullptr;
            switch (f.kind) {
            case MatRef::id: m = &t.ident; break;
            case MatRef::pot: m = &t.A[f.pid]; break;
            case MatRef::fld: m = &t.F[f.pid]; break;
            case MatRef::dfld: m = &t.dF[f.k][f.pid]; break;
            case MatRef::fld_closed: m = &t.Fc[f.pid]; break;
            }
            prod = prod * *m;
        }
        T c = evs(term);
        acc += prod.scaled(c);
    }
    return acc;
}

// --------------------------------------------------------- closed forms ----

struct ClosedFormCase {
    std::string id;
    std::string anchor;
    DiffOp lhs; // the stored generator, definitional construction
    DiffOp rhs; // independently assembled closed form
};

std::vector<ClosedFormCase> closed_form_cases(const GeneratorSet& g);

// ------------------------------------------------- pair / cell coverage ----

// Verification plan for the commutator table: which generator pairs go
// through normal-form comparison and which through pointwise sampling.
struct PairPlan {
    std::vector<std::array<int, 4>> nf;        // (A, B, C, D')
    std::vector<std::array<int, 4>> pointwise;
};

PairPlan commutation_pairs(const GeneratorSet& g, bool hatted);

// RHS of the commutation relation: list of (E, F, coeff) with J_EF summands.
std::vector<std::tuple<int, int, GaussRat>> eq12_rhs(int A, int B, int C, int Dp);
std::string pair_id(const char* name, int A, int B, int C, int Dp);

struct CellPlan {
    std::vector<std::pair<int, int>> nf, pointwise; // (B, C), B <= C
};

CellPlan quadratic_cells(const GeneratorSet& g);

// ---------------------------------------------------------------- suites ----

VerificationReport verify_gauge_identities(const GaugeField& gf);
VerificationReport verify_closed_forms(const GeneratorSet& g);
VerificationReport verify_commutation_relations(const GeneratorSet& g);
VerificationReport verify_quadratic_relations(const GeneratorSet& g);

extern const char* kCommutationAnchor;
extern const char* kQuadraticAnchor;

} // namespace micz
