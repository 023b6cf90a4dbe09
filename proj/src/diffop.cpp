#include "micz/diffop.hpp"

#include <cassert>
#include <tuple>
#include <utility>

#include "micz/errors.hpp"

namespace micz {

namespace {

long binom_small(int n, int k) {
    if (k < 0 || k > n) return 0;
    long v = 1;
    for (int j = 1; j <= k; ++j) v = v * (n - j + 1) / j;
    return v;
}

Mat<ScalarExpr> mat_derivative(const Mat<ScalarExpr>& m, int var) {
    Mat<ScalarExpr> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out(i, j) = m(i, j).derivative(var);
    return out;
}

} // namespace

void for_each_subindex(Mono beta, int nvars, const std::function<void(Mono, long)>& fn) {
    struct Rec {
        Mono beta;
        int nvars;
        const std::function<void(Mono, long)>& fn;
        void go(int var, Mono gamma, long coeff) {
            if (var == nvars) {
                fn(gamma, coeff);
                return;
            }
            int b = mono_exp(beta, var);
            for (int g = 0; g <= b; ++g)
                go(var + 1, mono_mul(gamma, mono_var(var, g)), coeff * binom_small(b, g));
        }
    } rec{beta, nvars, fn};
    rec.go(0, 0, 1);
}

DiffOp DiffOp::mult(int D, Mat<ScalarExpr> coeff) {
    DiffOp p(D, coeff.rows());
    p.add_term(0, coeff);
    return p;
}

DiffOp DiffOp::mult_scalar(int D, int dim, const ScalarExpr& e) {
    Mat<ScalarExpr> m(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = e;
    return mult(D, m);
}

DiffOp DiffOp::partial(int D, int dim, int var) {
    assert(var >= 0 && var < D);
    DiffOp p(D, dim);
    Mat<ScalarExpr> id(dim, dim);
    for (int i = 0; i < dim; ++i) id(i, i) = ScalarExpr::constant(D, GaussRat(1));
    p.add_term(mono_var(var), id);
    return p;
}

int DiffOp::max_order() const {
    int m = 0;
    for (const auto& [beta, c] : terms_) m = std::max(m, mono_total_deg(beta));
    return m;
}

void DiffOp::add_term(Mono beta, const Mat<ScalarExpr>& m) {
    if (m.is_zero()) return;
    if (mono_total_deg(beta) > kMaxDerivOrder)
        throw Error("derivative order bound exceeded: normal-ordering bug");
    auto it = terms_.find(beta);
    if (it == terms_.end()) {
        terms_.emplace(beta, m);
        return;
    }
    it->second += m;
    if (it->second.is_zero()) terms_.erase(it);
}

DiffOp DiffOp::operator-() const {
    DiffOp out(D_, dim_);
    for (const auto& [beta, m] : terms_) out.terms_.emplace(beta, -m);
    return out;
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (dim_ != o.dim_ || D_ != o.D_) throw DimMismatch("operator sum shape mismatch");
    DiffOp out = *this;
    for (const auto& [beta, m] : o.terms_) out.add_term(beta, m);
    return out;
}

DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + (-o); }

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    *this = *this + o;
    return *this;
}

DiffOp DiffOp::scaled(const GaussRat& c) const {
    DiffOp out(D_, dim_);
    if (c.is_zero()) return out;
    for (const auto& [beta, m] : terms_) out.terms_.emplace(beta, m.map([&](const ScalarExpr& e) {
        return e.scaled(c);
    }));
    return out;
}

DiffOp DiffOp::scaled_expr(const ScalarExpr& e) const {
    DiffOp out(D_, dim_);
    if (e.is_zero()) return out;
    for (const auto& [beta, m] : terms_)
        out.add_term(beta, m.map([&](const ScalarExpr& c) { return e * c; }));
    return out;
}

bool DiffOp::operator==(const DiffOp& o) const {
    if (D_ != o.D_ || dim_ != o.dim_) return is_zero() && o.is_zero();
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (!(it->second == jt->second)) return false;
    }
    return true;
}

bool DiffOp::r_laurent() const {
    for (const auto& [beta, m] : terms_)
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if (!m(i, j).r_laurent()) return false;
    return true;
}

std::map<Mono, Mat<QVal>, std::greater<Mono>> DiffOp::eval_at(const RationalPoint& p) const {
    std::map<Mono, Mat<QVal>, std::greater<Mono>> out;
    for (const auto& [beta, m] : terms_) {
        Mat<QVal> v(m.rows(), m.cols());
        bool nonzero = false;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                if (m(i, j).is_zero()) continue;
                v(i, j) = m(i, j).eval(p);
                if (!v(i, j).is_zero()) nonzero = true;
            }
        if (nonzero) out.emplace(beta, std::move(v));
    }
    return out;
}

DiffOp compose(const DiffOp& P, const DiffOp& Q) {
    if (P.dim() != Q.dim() || P.D() != Q.D()) throw DimMismatch("compose shape mismatch");
    int D = P.D();
    DiffOp out(D, P.dim());
    // Memoized d^delta of Q's coefficient matrices, built one variable at a
    // time off smaller jets.
    std::map<std::pair<Mono, Mono>, Mat<ScalarExpr>> jets;
    std::function<const Mat<ScalarExpr>&(Mono, Mono)> jet = [&](Mono gamma,
                                                               Mono delta) -> const Mat<ScalarExpr>& {
        auto it = jets.find({gamma, delta});
        if (it != jets.end()) return it->second;
        const Mat<ScalarExpr>* src = nullptr;
        if (delta == 0) {
            src = &Q.terms().at(gamma);
            return jets.emplace(std::make_pair(gamma, delta), *src).first->second;
        }
        for (int v = 0; v < D; ++v) {
            if (mono_exp(delta, v) > 0) {
                const Mat<ScalarExpr>& prev = jet(gamma, mono_div(delta, mono_var(v)));
                return jets.emplace(std::make_pair(gamma, delta), mat_derivative(prev, v))
                    .first->second;
            }
        }
        throw Error("unreachable jet recursion");
    };
    for (const auto& [beta, M] : P.terms()) {
        for (const auto& [gamma, N] : Q.terms()) {
            for_each_subindex(beta, D, [&](Mono delta, long c) {
                const Mat<ScalarExpr>& dN = jet(gamma, delta);
                if (dN.is_zero()) return;
                Mat<ScalarExpr> prod = M * dN;
                if (c != 1) {
                    GaussRat cq{Rat(c)};
                    prod = prod.map([&](const ScalarExpr& e) { return e.scaled(cq); });
                }
                out.add_term(mono_mul(mono_div(beta, delta), gamma), prod);
            });
        }
    }
    return out;
}

DiffOp commutator(const DiffOp& P, const DiffOp& Q) { return compose(P, Q) - compose(Q, P); }

DiffOp anticommutator(const DiffOp& P, const DiffOp& Q) { return compose(P, Q) + compose(Q, P); }

namespace {

// u_gamma = r^{-1/2} d^gamma r^{1/2}, satisfying
// u_{gamma+e_v} = d_v u_gamma + u_gamma x_v / (2|x|^2).
const ScalarExpr& sqrt_r_jet(int D, Mono gamma) {
    static std::map<std::pair<int, Mono>, ScalarExpr> memo;
    auto it = memo.find({D, gamma});
    if (it != memo.end()) return it->second;
    ScalarExpr u(D);
    if (gamma == 0) {
        u = ScalarExpr::constant(D, GaussRat(1));
    } else {
        for (int v = 0; v < D; ++v) {
            if (mono_exp(gamma, v) > 0) {
                const ScalarExpr& prev = sqrt_r_jet(D, mono_div(gamma, mono_var(v)));
                ScalarExpr half_xv(D, Poly::variable(v).scaled(GaussRat(rat(1, 2))), Poly(),
                                   {{0, 1}});
                u = prev.derivative(v) + prev * half_xv;
                break;
            }
        }
    }
    return memo.emplace(std::make_pair(D, gamma), std::move(u)).first->second;
}

} // namespace

DiffOp conjugate_sqrt_r(const DiffOp& P) {
    int D = P.D();
    DiffOp out(D, P.dim());
    for (const auto& [beta, M] : P.terms()) {
        for_each_subindex(beta, D, [&](Mono gamma, long c) {
            const ScalarExpr& u = sqrt_r_jet(D, gamma);
            ScalarExpr factor = u.scaled(GaussRat(Rat(c)));
            out.add_term(mono_div(beta, gamma),
                         M.map([&](const ScalarExpr& e) { return e * factor; }));
        });
    }
    return out;
}

namespace {

// Scalar radial profile: half-r-exponent -> poly, at fixed decay.
using Profile = std::map<int, Poly>;

void profile_add(Profile& pr, int m, const Poly& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = pr.try_emplace(m, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) pr.erase(it);
    }
}

// d_v of p(x) r^{m/2} e^{-lambda r}:
//   p' at m, (m/2) x_v p at m-4, -lambda x_v p at m-2.
Profile profile_derivative(const Profile& pr, int var, const Rat& lambda) {
    Profile out;
    Poly xv = Poly::variable(var);
    for (const auto& [m, p] : pr) {
        profile_add(out, m, p.derivative(var));
        if (m != 0) profile_add(out, m - 4, (xv * p).scaled(GaussRat(Rat(m) / 2)));
        if (lambda != 0) profile_add(out, m - 2, (xv * p).scaled(GaussRat(-lambda)));
    }
    return out;
}

} // namespace

std::vector<Section> apply(const DiffOp& P, const Section& s) {
    if (static_cast<int>(s.spinor.size()) != P.dim())
        throw DimMismatch("section spinor length does not match operator dim");
    int D = P.D();
    std::map<int, std::vector<Poly>> acc; // half exponent -> per-component polys
    for (const auto& [beta, M] : P.terms()) {
        Profile pr{{s.half_r_exponent, s.poly}};
        for (int v = 0; v < D; ++v)
            for (int k = 0; k < mono_exp(beta, v); ++k) pr = profile_derivative(pr, v, s.decay);
        for (int i = 0; i < P.dim(); ++i)
            for (int j = 0; j < P.dim(); ++j) {
                const ScalarExpr& e = M(i, j);
                if (e.is_zero() || s.spinor[static_cast<std::size_t>(j)].is_zero()) continue;
                if (!e.r_laurent())
                    throw NonPolynomialCoefficient(
                        "operator coefficient not polynomial in x, r, 1/r");
                int k = e.den().empty() ? 0 : e.den().begin()->second;
                const GaussRat& vj = s.spinor[static_cast<std::size_t>(j)];
                for (const auto& [mq, q] : pr) {
                    if (!e.f().is_zero()) {
                        Poly t = (e.f() * q).scaled(vj);
                        if (!t.is_zero()) {
                            auto& row = acc.try_emplace(mq - 4 * k, std::vector<Poly>(P.dim()))
                                            .first->second;
                            row[static_cast<std::size_t>(i)] += t;
                        }
                    }
                    if (!e.g().is_zero()) {
                        Poly t = (e.g() * q).scaled(vj);
                        if (!t.is_zero()) {
                            auto& row = acc.try_emplace(mq + 2 - 4 * k, std::vector<Poly>(P.dim()))
                                            .first->second;
                            row[static_cast<std::size_t>(i)] += t;
                        }
                    }
                }
            }
    }
    std::vector<Section> out;
    for (const auto& [m, comps] : acc)
        for (int i = 0; i < P.dim(); ++i) {
            if (comps[static_cast<std::size_t>(i)].is_zero()) continue;
            Section sec;
            sec.poly = comps[static_cast<std::size_t>(i)];
            sec.half_r_exponent = m;
            sec.decay = s.decay;
            sec.spinor.assign(static_cast<std::size_t>(P.dim()), GaussRat(0));
            sec.spinor[static_cast<std::size_t>(i)] = GaussRat(1);
            out.push_back(std::move(sec));
        }
    return out;
}

std::vector<Section> normalize_sections(const std::vector<Section>& in, int dim, int D) {
    // |x|^2 r^{m/2} and r^{(m+4)/2} are the same function, so representations
    // differing within an (m mod 4) class must be identified: collapse each
    // class onto its lowest exponent, then strip maximal |x|^2 factors back out.
    const Poly s_poly = poly_s(D);
    std::map<std::tuple<Rat, int, int>, std::map<int, Poly>> classes;
    for (const Section& s : in)
        for (int i = 0; i < dim; ++i) {
            const GaussRat& vi = s.spinor[static_cast<std::size_t>(i)];
            if (vi.is_zero() || s.poly.is_zero()) continue;
            int cls = ((s.half_r_exponent % 4) + 4) % 4;
            auto key = std::make_tuple(s.decay, cls, i);
            auto& bucket = classes[key][s.half_r_exponent];
            bucket += s.poly.scaled(vi);
        }
    std::vector<Section> out;
    for (const auto& [key, buckets] : classes) {
        int m0 = buckets.begin()->first;
        Poly p;
        for (const auto& [m, q] : buckets) {
            if (q.is_zero()) continue;
            Poly lifted = q;
            for (int j = 0; j < (m - m0) / 4; ++j) lifted = lifted * s_poly;
            p += lifted;
        }
        if (p.is_zero()) continue;
        Poly quo;
        while (p.divide_exact(s_poly, quo)) {
            p = quo;
            m0 += 4;
        }
        Section sec;
        sec.poly = p;
        sec.decay = std::get<0>(key);
        sec.half_r_exponent = m0;
        sec.spinor.assign(static_cast<std::size_t>(dim), GaussRat(0));
        sec.spinor[static_cast<std::size_t>(std::get<2>(key))] = GaussRat(1);
        out.push_back(std::move(sec));
    }
    return out;
}

bool sections_equal(const std::vector<Section>& a, const std::vector<Section>& b, int dim, int D) {
    auto na = normalize_sections(a, dim, D);
    auto nb = normalize_sections(b, dim, D);
    if (na.size() != nb.size()) return false;
    for (std::size_t k = 0; k < na.size(); ++k) {
        if (na[k].decay != nb[k].decay || na[k].half_r_exponent != nb[k].half_r_exponent ||
            !(na[k].poly == nb[k].poly) || na[k].spinor != nb[k].spinor)
            return false;
    }
    return true;
}

} // namespace micz
