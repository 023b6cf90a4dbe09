#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <vector>

#include "micz/diffop.hpp"

namespace micz {

// Symbolic derivative table of an operator's coefficients:
// beta -> delta -> d^delta M_beta for |delta| <= order. Lets compositions be
// evaluated at a point (in exact or double arithmetic) without forming the
// symbolic composition, which keeps the pointwise strategy independent of
// the normal-form path.
struct SymbolicJets {
    int D = 0, dim = 0, order = 0;
    std::map<Mono, std::map<Mono, Mat<ScalarExpr>>> jets;
};

SymbolicJets make_jets(const DiffOp& op, int order);

template <typename T>
using ValueOp = std::map<Mono, Mat<T>, std::greater<Mono>>;

template <typename T>
struct ValueJets {
    int D = 0, dim = 0;
    std::map<Mono, std::map<Mono, Mat<T>>> jets;

    ValueOp<T> slice() const {
        ValueOp<T> out;
        for (const auto& [beta, dmap] : jets) {
            auto it = dmap.find(Mono(0));
            if (it != dmap.end()) out.emplace(beta, it->second);
        }
        return out;
    }
};

// EvalFn: Mat<ScalarExpr> -> Mat<T>
template <typename T, typename EvalFn>
ValueJets<T> eval_jets(const SymbolicJets& sj, EvalFn&& ev) {
    ValueJets<T> out;
    out.D = sj.D;
    out.dim = sj.dim;
    for (const auto& [beta, dmap] : sj.jets)
        for (const auto& [delta, m] : dmap) out.jets[beta].emplace(delta, ev(m));
    return out;
}

template <typename T>
void value_op_add(ValueOp<T>& acc, Mono beta, const Mat<T>& m) {
    auto [it, fresh] = acc.try_emplace(beta, m);
    if (!fresh) it->second += m;
}

template <typename T>
ValueOp<T> value_op_sub(const ValueOp<T>& a, const ValueOp<T>& b) {
    ValueOp<T> out = a;
    for (const auto& [beta, m] : b) value_op_add(out, beta, -m);
    return out;
}

template <typename T>
ValueOp<T> value_op_scaled(const ValueOp<T>& a, const T& c) {
    ValueOp<T> out;
    for (const auto& [beta, m] : a) out.emplace(beta, m.scaled(c));
    return out;
}

// acc += a * b (or -= with negate), without allocating a temporary product.
template <typename T>
void mat_mul_acc(Mat<T>& acc, const Mat<T>& a, const Mat<T>& b, bool negate) {
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const T& av = a(i, k);
            if (ring_is_zero(av)) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const T& bv = b(k, j);
                if (ring_is_zero(bv)) continue;
                acc(i, j) = negate ? acc(i, j) - av * bv : acc(i, j) + av * bv;
            }
        }
}

// Value slice of +-(P composed with Q) accumulated into out, via the Leibniz
// rule; ScalarFromLong turns a binomial coefficient into a T.
template <typename T, typename ScalarFromLong>
void compose_values_into(ValueOp<T>& out, const ValueJets<T>& P, const ValueJets<T>& Q,
                         bool negate, ScalarFromLong&& conv) {
    std::vector<std::pair<Mono, long>> subs;
    for (const auto& [beta, bjets] : P.jets) {
        auto bit = bjets.find(Mono(0));
        if (bit == bjets.end()) continue;
        const Mat<T>& M = bit->second;
        subs.clear();
        for_each_subindex(beta, P.D, [&](Mono delta, long c) { subs.emplace_back(delta, c); });
        for (const auto& [delta, c] : subs) {
            Mat<T> Mc;
            const Mat<T>* lhs = &M;
            if (c != 1) {
                Mc = M.scaled(conv(c));
                lhs = &Mc;
            }
            Mono shift = mono_div(beta, delta);
            for (const auto& [gamma, gjets] : Q.jets) {
                auto dit = gjets.find(delta);
                if (dit == gjets.end()) continue;
                const Mat<T>& B = dit->second;
                auto [oit, fresh] =
                    out.try_emplace(mono_mul(shift, gamma), Mat<T>(M.rows(), B.cols()));
                (void)fresh;
                mat_mul_acc(oit->second, *lhs, B, negate);
            }
        }
    }
}

template <typename T, typename ScalarFromLong>
ValueOp<T> compose_values(const ValueJets<T>& P, const ValueJets<T>& Q, ScalarFromLong&& conv) {
    ValueOp<T> out;
    compose_values_into(out, P, Q, false, conv);
    return out;
}

template <typename T, typename ScalarFromLong>
ValueOp<T> commutator_values(const ValueJets<T>& P, const ValueJets<T>& Q, ScalarFromLong&& conv) {
    ValueOp<T> out;
    compose_values_into(out, P, Q, false, conv);
    compose_values_into(out, Q, P, true, conv);
    return out;
}

template <typename T, typename ScalarFromLong>
ValueOp<T> anticommutator_values(const ValueJets<T>& P, const ValueJets<T>& Q,
                                 ScalarFromLong&& conv) {
    ValueOp<T> out;
    compose_values_into(out, P, Q, false, conv);
    compose_values_into(out, Q, P, false, conv);
    return out;
}

Mat<ScalarExpr> mat_derivative(const Mat<ScalarExpr>& m, int var);

// All multi-indices |delta| <= order over D variables, sorted by total
// degree then packed value, so prefix processing sees lower orders first.
std::vector<Mono> derivative_indices(int D, int order);

// Derivative values of every coefficient entry at a point, computed
// per-monomial from the stored normal form (no symbolic differentiation,
// which is what makes the pointwise strategy cheap at D = 6). Requires
// every coordinate of p nonzero.
ValueJets<QVal> exact_jets_at(const DiffOp& op, const RationalPoint& p, int order);

ValueJets<std::complex<double>> float_jets_at(const DiffOp& op,
                                              const std::vector<double>& coords, double r,
                                              int order);

// All-entries-zero test for exact value ops.
bool value_op_is_zero(const ValueOp<QVal>& op);

// First nonzero entry of an exact value op, as "d^beta [i][j] = value".
std::string value_op_witness_entry(const ValueOp<QVal>& op, int D);

// Max |entry| across all terms of a float value op.
double value_op_norm(const ValueOp<std::complex<double>>& op);

// Max |entry| of a - b computed by merge, without materializing the difference.
double value_op_diff_norm(const ValueOp<std::complex<double>>& a,
                          const ValueOp<std::complex<double>>& b);

} // namespace micz
