#include "micz/jets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

namespace micz {

Mat<ScalarExpr> mat_derivative(const Mat<ScalarExpr>& m, int var) {
    Mat<ScalarExpr> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out(i, j) = m(i, j).derivative(var);
    return out;
}

namespace {

long falling_factor(Mono m, Mono delta) {
    long f = 1;
    for (int v = 0; v < kMaxVars; ++v) {
        int e = mono_exp(m, v), d = mono_exp(delta, v);
        if (d > e) return 0;
        for (int t = 0; t < d; ++t) f *= e - t;
    }
    return f;
}

long binom_vec(Mono sum, Mono part) {
    long b = 1;
    for (int v = 0; v < kMaxVars; ++v) {
        int nn = mono_exp(sum, v), kk = mono_exp(part, v);
        long t = 1;
        for (int i = 0; i < kk; ++i) t = t * (nn - i) / (i + 1);
        b *= t;
    }
    return b;
}

// Index basis for truncated derivative jets at a point, with the
// convolution table (i, j, c): delta_i + delta_j = delta_k, c = C(delta_k, delta_i).
struct JetIndex {
    int D = 0, order = 0;
    std::vector<Mono> deltas; // sorted by |delta| then value
    std::map<Mono, int> pos;
    std::vector<std::vector<std::tuple<int, int, long>>> by_k;
};

const JetIndex& jet_index(int D, int order) {
    static std::map<std::pair<int, int>, JetIndex> cache;
    auto key = std::make_pair(D, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    JetIndex ji;
    ji.D = D;
    ji.order = order;
    std::vector<int> exps(D, 0);
    auto emit = [&](auto&& self, int var, int left) -> void {
        if (var == D) {
            Mono m = 0;
            for (int v = 0; v < D; ++v)
                for (int e = 0; e < exps[v]; ++e) m = mono_mul(m, mono_var(v));
            ji.deltas.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            exps[var] = e;
            self(self, var + 1, left - e);
        }
        exps[var] = 0;
    };
    emit(emit, 0, order);
    std::sort(ji.deltas.begin(), ji.deltas.end(), [](Mono a, Mono b) {
        int da = mono_total_deg(a), db = mono_total_deg(b);
        return da != db ? da < db : a < b;
    });
    for (std::size_t k = 0; k < ji.deltas.size(); ++k) ji.pos.emplace(ji.deltas[k], k);
    ji.by_k.resize(ji.deltas.size());
    for (std::size_t i = 0; i < ji.deltas.size(); ++i)
        for (std::size_t j = 0; j < ji.deltas.size(); ++j) {
            if (mono_total_deg(ji.deltas[i]) + mono_total_deg(ji.deltas[j]) > order) continue;
            Mono sum = mono_mul(ji.deltas[i], ji.deltas[j]);
            auto pit = ji.pos.find(sum);
            if (pit == ji.pos.end()) continue;
            ji.by_k[pit->second].emplace_back(int(i), int(j), binom_vec(sum, ji.deltas[i]));
        }
    return cache.emplace(key, std::move(ji)).first->second;
}

struct ExactField {
    using T = QVal;
    const RationalPoint& p;
    mutable std::map<Mono, QVal> ipow;

    QVal monomial(Mono m, const GaussRat& c) const {
        Rat pw(1);
        for (int v = 0; v < p.D; ++v) {
            int e = mono_exp(m, v);
            if (e) pw *= p.power(v, e);
        }
        return QVal::rational(c * GaussRat(pw));
    }
    QVal inv_power(Mono delta) const {
        auto it = ipow.find(delta);
        if (it != ipow.end()) return it->second;
        Rat pw(1);
        for (int v = 0; v < p.D; ++v) {
            int e = mono_exp(delta, v);
            if (e) pw *= p.power(v, e);
        }
        QVal r = QVal::rational(GaussRat(Rat(1) / pw));
        ipow.emplace(delta, r);
        return r;
    }
    QVal scale_small(const QVal& v, long c) const { return v.scaled(GaussRat(Rat(c))); }
    static QVal inv(const QVal& v) {
        if (v.s == 0) return QVal::rational(GaussRat(Rat(1)) / v.a);
        GaussRat d = v.a * v.a - v.b * v.b * GaussRat(v.s);
        return QVal(v.a / d, -(v.b / d), v.s);
    }
    QVal r0() const { return QVal(GaussRat(Rat(0)), GaussRat(Rat(1)), p.s); }
    static bool is_zero(const QVal& v) { return v.is_zero(); }
};

struct FloatField {
    using T = std::complex<double>;
    const std::vector<double>& x;
    double r;
    mutable std::map<Mono, T> ipow;

    T monomial(Mono m, const GaussRat& c) const {
        double pw = 1.0;
        for (std::size_t v = 0; v < x.size(); ++v)
            for (int e = 0; e < mono_exp(m, int(v)); ++e) pw *= x[v];
        return T(rat_double(c.re), rat_double(c.im)) * pw;
    }
    T inv_power(Mono delta) const {
        double pw = 1.0;
        for (std::size_t v = 0; v < x.size(); ++v)
            for (int e = 0; e < mono_exp(delta, int(v)); ++e) pw *= x[v];
        return T(1.0 / pw, 0.0);
    }
    T scale_small(const T& v, long c) const { return v * double(c); }
    static T inv(const T& v) { return 1.0 / v; }
    T r0() const { return T(r, 0.0); }
    static bool is_zero(const T& v) { return v == T(); }
};

template <typename F>
std::vector<typename F::T> poly_jet(const Poly& p, const F& field, const JetIndex& ji) {
    using T = typename F::T;
    std::vector<T> acc(ji.deltas.size(), T());
    for (const auto& [m, c] : p.terms()) {
        T v = field.monomial(m, c);
        for (std::size_t k = 0; k < ji.deltas.size(); ++k) {
            long f = falling_factor(m, ji.deltas[k]);
            if (f == 0) continue;
            acc[k] = acc[k] + field.scale_small(v, f);
        }
    }
    for (std::size_t k = 1; k < ji.deltas.size(); ++k)
        if (!F::is_zero(acc[k])) acc[k] = acc[k] * field.inv_power(ji.deltas[k]);
    return acc;
}

template <typename F>
std::vector<typename F::T> jet_mul(const std::vector<typename F::T>& a,
                                   const std::vector<typename F::T>& b, const F& field,
                                   const JetIndex& ji) {
    using T = typename F::T;
    std::vector<T> out(ji.deltas.size(), T());
    for (std::size_t k = 0; k < ji.deltas.size(); ++k)
        for (const auto& [i, j, c] : ji.by_k[k]) {
            if (F::is_zero(a[i]) || F::is_zero(b[j])) continue;
            out[k] = out[k] + field.scale_small(a[i] * b[j], c);
        }
    return out;
}

template <typename F>
std::vector<typename F::T> jet_div(const std::vector<typename F::T>& a,
                                   const std::vector<typename F::T>& b, const F& field,
                                   const JetIndex& ji) {
    using T = typename F::T;
    T ib0 = F::inv(b[0]);
    std::vector<T> q(ji.deltas.size(), T());
    for (std::size_t k = 0; k < ji.deltas.size(); ++k) {
        T num = a[k];
        for (const auto& [i, j, c] : ji.by_k[k]) {
            if (i == 0) continue; // the b[0] q[k] term being solved for
            if (F::is_zero(b[i]) || F::is_zero(q[j])) continue;
            num = num - field.scale_small(b[i] * q[j], c);
        }
        if (!F::is_zero(num)) q[k] = num * ib0;
    }
    return q;
}

template <typename F>
std::vector<typename F::T> jet_sqrt(const std::vector<typename F::T>& s, const F& field,
                                    const JetIndex& ji) {
    using T = typename F::T;
    std::vector<T> r(ji.deltas.size(), T());
    r[0] = field.r0();
    T half_inv = F::inv(r[0] + r[0]);
    for (std::size_t k = 1; k < ji.deltas.size(); ++k) {
        T num = s[k];
        for (const auto& [i, j, c] : ji.by_k[k]) {
            if (i == 0 || j == 0 || std::size_t(i) >= k || std::size_t(j) >= k) continue;
            if (F::is_zero(r[i]) || F::is_zero(r[j])) continue;
            num = num - field.scale_small(r[i] * r[j], c);
        }
        if (!F::is_zero(num)) r[k] = num * half_inv;
    }
    return r;
}

template <typename F>
ValueJets<typename F::T> jets_at_impl(const DiffOp& op, const F& field, int order) {
    using T = typename F::T;
    const JetIndex& ji = jet_index(op.D(), order);
    std::vector<T> r_jet = jet_sqrt(poly_jet(poly_s(op.D()), field, ji), field, ji);
    std::map<ScalarExpr::DenMap, std::vector<T>> den_cache;

    ValueJets<T> out;
    out.D = op.D();
    out.dim = op.dim();
    for (const auto& [beta, m] : op.terms()) {
        std::vector<Mat<T>> mats(ji.deltas.size());
        std::vector<char> used(ji.deltas.size(), 0);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                const ScalarExpr& e = m(i, j);
                if (e.is_zero()) continue;
                std::vector<T> jet = poly_jet(e.f(), field, ji);
                if (!e.g().is_zero()) {
                    std::vector<T> jg = jet_mul(poly_jet(e.g(), field, ji), r_jet, field, ji);
                    for (std::size_t k = 0; k < jet.size(); ++k) jet[k] = jet[k] + jg[k];
                }
                if (!e.den().empty()) {
                    auto dit = den_cache.find(e.den());
                    if (dit == den_cache.end())
                        dit = den_cache.emplace(e.den(), poly_jet(e.den_poly(), field, ji))
                                  .first;
                    jet = jet_div(jet, dit->second, field, ji);
                }
                for (std::size_t k = 0; k < jet.size(); ++k) {
                    if (F::is_zero(jet[k])) continue;
                    if (!used[k]) {
                        mats[k] = Mat<T>(m.rows(), m.cols());
                        used[k] = 1;
                    }
                    mats[k](i, j) = jet[k];
                }
            }
        for (std::size_t k = 0; k < ji.deltas.size(); ++k)
            if (used[k]) out.jets[beta].emplace(ji.deltas[k], std::move(mats[k]));
    }
    return out;
}

} // namespace

SymbolicJets make_jets(const DiffOp& op, int order) {
    SymbolicJets sj;
    sj.D = op.D();
    sj.dim = op.dim();
    sj.order = order;
    for (const auto& [beta, m] : op.terms()) {
        auto& dmap = sj.jets[beta];
        dmap.emplace(Mono(0), m);
        // breadth-first over |delta|: derivative of the delta-minus-one jet
        std::vector<Mono> frontier{Mono(0)};
        for (int lvl = 0; lvl < order; ++lvl) {
            std::vector<Mono> next;
            for (Mono delta : frontier) {
                auto fit = dmap.find(delta);
                if (fit == dmap.end()) continue;
                // extend only with vars >= the highest var already used, so
                // every multi-index is produced once
                int start = 0;
                for (int v = sj.D - 1; v >= 0; --v)
                    if (mono_exp(delta, v) > 0) {
                        start = v;
                        break;
                    }
                for (int v = start; v < sj.D; ++v) {
                    Mono nd = mono_mul(delta, mono_var(v));
                    Mat<ScalarExpr> der = mat_derivative(fit->second, v);
                    if (!der.is_zero()) {
                        dmap.emplace(nd, std::move(der));
                        next.push_back(nd);
                    }
                }
            }
            frontier = std::move(next);
        }
    }
    return sj;
}

std::vector<Mono> derivative_indices(int D, int order) { return jet_index(D, order).deltas; }

ValueJets<QVal> exact_jets_at(const DiffOp& op, const RationalPoint& p, int order) {
    ExactField field{p, {}};
    return jets_at_impl(op, field, order);
}

ValueJets<std::complex<double>> float_jets_at(const DiffOp& op, const std::vector<double>& coords,
                                              double r, int order) {
    FloatField field{coords, r, {}};
    return jets_at_impl(op, field, order);
}

bool value_op_is_zero(const ValueOp<QVal>& op) {
    for (const auto& [beta, m] : op)
        if (!m.is_zero()) return false;
    return true;
}

std::string value_op_witness_entry(const ValueOp<QVal>& op, int D) {
    for (const auto& [beta, m] : op)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (!m(i, j).is_zero()) {
                    std::string head = mono_total_deg(beta) == 0 ? std::string("1")
                                                                 : ("d^" + mono_str(beta, D));
                    return head + " [" + std::to_string(i) + "][" + std::to_string(j) +
                           "] = " + m(i, j).str();
                }
    return "";
}

double value_op_norm(const ValueOp<std::complex<double>>& op) {
    double mx = 0.0;
    for (const auto& [beta, m] : op)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) mx = std::max(mx, std::abs(m(i, j)));
    return mx;
}

double value_op_diff_norm(const ValueOp<std::complex<double>>& a,
                          const ValueOp<std::complex<double>>& b) {
    double mx = 0.0;
    auto mat_max = [&](const Mat<std::complex<double>>& m) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) mx = std::max(mx, std::abs(m(i, j)));
    };
    const std::greater<Mono> before; // the ValueOp iteration order
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first == ib->first) {
            const auto& x = ia->second;
            const auto& y = ib->second;
            for (int i = 0; i < x.rows(); ++i)
                for (int j = 0; j < x.cols(); ++j)
                    mx = std::max(mx, std::abs(x(i, j) - y(i, j)));
            ++ia;
            ++ib;
        } else if (before(ia->first, ib->first)) {
            mat_max(ia->second);
            ++ia;
        } else {
            mat_max(ib->second);
            ++ib;
        }
    }
    for (; ia != a.end(); ++ia) mat_max(ia->second);
    for (; ib != b.end(); ++ib) mat_max(ib->second);
    return mx;
}

} // namespace micz
