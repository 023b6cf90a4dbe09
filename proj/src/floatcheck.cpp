#include "micz/floatcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "micz/errors.hpp"

namespace micz {

namespace {

using Cx = std::complex<double>;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kFloatStream = 0x666c6f6174ull;

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

long long to_ms(Clock::duration d) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
}

Cx gauss_c(const GaussRat& q) { return {rat_double(q.re), rat_double(q.im)}; }

Cx qval_c(const QVal& v) {
    Cx out = gauss_c(v.a);
    if (!v.b.is_zero()) out += gauss_c(v.b) * std::sqrt(rat_double(v.s));
    return out;
}

Cx conv_c(long c) { return {static_cast<double>(c), 0.0}; }

double mat_norm(const Mat<Cx>& m) {
    double mx = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) mx = std::max(mx, std::abs(m(i, j)));
    return mx;
}

double relative(double diff, double lhs, double rhs) {
    return diff / std::max({lhs, rhs, 1.0});
}

Mat<Cx> eval_mat_c(const Mat<ScalarExpr>& m, const std::vector<double>& coords, double r) {
    Mat<Cx> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out(i, j) = m(i, j).eval_double(coords, r);
    return out;
}

// Worst sample point seen so far for one identity.
struct Agg {
    double res = -1.0;
    std::string where;
    Clock::duration spent{0};
};

ReportItem agg_item(const std::string& suite, const std::string& id, const std::string& anchor,
                    const Agg& a, double tol) {
    ReportItem it;
    it.suite = suite;
    it.id = id;
    it.anchor = anchor;
    it.strategy = "float";
    it.status = a.res <= tol ? Status::pass : Status::fail;
    it.witness = a.where;
    it.residual = sci(std::max(a.res, 0.0));
    it.millis = to_ms(a.spent);
    return it;
}

} // namespace

std::vector<RationalPoint> float_points(int D, int count, std::uint64_t seed) {
    SplitMix64 rng(seed ^ kFloatStream);
    std::vector<RationalPoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) pts.push_back(random_point(D, rng));
    return pts;
}

VerificationReport float_gauge_identities(const GaugeField& gf) {
    const ProblemConfig& cfg = gf.cfg;
    GaugeCaseSet cs = gauge_cases(gf);
    std::vector<RationalPoint> pts = float_points(cfg.D(), cfg.points, cfg.seed);

    std::vector<std::string> id_order;
    std::map<std::string, std::vector<int>> groups;
    for (std::size_t ci = 0; ci < cs.cases.size(); ++ci) {
        const std::string& id = cs.cases[ci].id;
        if (!groups.count(id)) id_order.push_back(id);
        groups[id].push_back(static_cast<int>(ci));
    }

    std::map<std::string, Agg> agg;
    const Cx one(1.0);

    for (const RationalPoint& p : pts) {
        std::vector<double> coords = p.coords_double();
        double r = std::sqrt(rat_double(p.s));
        GaugeTables<Cx> t = eval_gauge_tables<Cx>(
            gf, cs, one, [&](const Mat<ScalarExpr>& m) { return eval_mat_c(m, coords, r); });
        auto evs = [&](const MatTerm& term) {
            Cx c = gauss_c(term.coeff);
            if (term.scalar.dim_vars() > 0) c *= term.scalar.eval_double(coords, r);
            return c;
        };
        for (const std::string& id : id_order) {
            Agg& a = agg[id];
            auto t0 = Clock::now();
            for (int ci : groups[id]) {
                const GaugeCase& gc = cs.cases[ci];
                Mat<Cx> lhs = eval_mat_terms(gc.lhs, t, cs.dim, one, evs);
                Mat<Cx> rhs = eval_mat_terms(gc.rhs, t, cs.dim, one, evs);
                double res = relative(mat_norm(lhs - rhs), mat_norm(lhs), mat_norm(rhs));
                if (res > a.res) {
                    a.res = res;
                    a.where = (gc.indices.empty() ? std::string() : gc.indices + " ") + "at " +
                              point_str(p);
                }
            }
            a.spent += Clock::now() - t0;
        }
    }

    const bool falsifier_g = cfg.two_mu == 2;
    VerificationReport rep;
    for (const std::string& id : id_order) {
        ReportItem it = agg_item("gauge", id, gauge_anchor(id), agg[id], kFloatTol);
        if (id == "(g)" && falsifier_g) {
            bool broken = agg[id].res > kFloatTol;
            it.status = broken ? Status::expected_fail : Status::fail;
            if (!broken) it.witness = "identity unexpectedly holds";
        }
        rep.add(std::move(it));
        if (id == "curvature" && agg[id].res > kFloatTol)
            throw ConventionMismatch("curvature formula disagrees with closed form: " +
                                     agg[id].where);
    }
    return rep;
}

VerificationReport float_closed_forms(const GeneratorSet& g) {
    const ProblemConfig& cfg = g.cfg;
    std::vector<ClosedFormCase> cases = closed_form_cases(g);
    std::vector<RationalPoint> pts = float_points(cfg.D(), cfg.points, cfg.seed);
    VerificationReport rep;

    for (const ClosedFormCase& cc : cases) {
        Agg a;
        auto t0 = Clock::now();
        for (const RationalPoint& p : pts) {
            std::vector<double> coords = p.coords_double();
            double r = std::sqrt(rat_double(p.s));
            ValueOp<Cx> lhs = float_jets_at(cc.lhs, coords, r, 0).slice();
            ValueOp<Cx> rhs = float_jets_at(cc.rhs, coords, r, 0).slice();
            double res = relative(value_op_diff_norm(lhs, rhs), value_op_norm(lhs),
                                  value_op_norm(rhs));
            if (res > a.res) {
                a.res = res;
                a.where = "at " + point_str(p);
            }
        }
        a.spent = Clock::now() - t0;
        rep.add(agg_item("closed-forms", cc.id, cc.anchor, a, kFloatTol));
    }
    return rep;
}

VerificationReport float_commutation_relations(const GeneratorSet& g) {
    const ProblemConfig& cfg = g.cfg;
    std::vector<RationalPoint> pts = float_points(cfg.D(), cfg.points, cfg.seed);
    VerificationReport rep;

    for (int fam = 0; fam < 2; ++fam) {
        const bool hatted = fam == 1;
        const char* name = hatted ? "Jhat" : "J";
        const auto& table = hatted ? g.jhat : g.j;

        PairPlan plan = commutation_pairs(g, hatted);
        std::vector<std::array<int, 4>> all = plan.nf;
        all.insert(all.end(), plan.pointwise.begin(), plan.pointwise.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());

        int jet_order = 0;
        for (const auto& [pr, op] : table) {
            (void)pr;
            jet_order = std::max(jet_order, op.max_order());
        }

        std::map<std::array<int, 4>, Agg> agg;
        for (const RationalPoint& p : pts) {
            std::vector<double> coords = p.coords_double();
            double r = std::sqrt(rat_double(p.s));
            std::map<std::pair<int, int>, ValueJets<Cx>> jets;
            auto jets_of = [&](int X, int Y) -> const ValueJets<Cx>& {
                std::pair<int, int> key{std::min(X, Y), std::max(X, Y)};
                auto jit = jets.find(key);
                if (jit == jets.end())
                    jit = jets.emplace(key, float_jets_at(table.at(key), coords, r, jet_order))
                              .first;
                return jit->second;
            };
            for (const auto& q : all) {
                const auto [A, B, C, Dp] = q;
                Agg& a = agg[q];
                auto t0 = Clock::now();
                ValueOp<Cx> lhs = commutator_values(jets_of(A, B), jets_of(C, Dp), conv_c);
                ValueOp<Cx> rhs;
                for (const auto& [E, F, coef] : eq12_rhs(A, B, C, Dp)) {
                    if (E == F) continue;
                    Cx total = gauss_c(E < F ? coef : -coef);
                    for (const auto& [beta, m] : jets_of(E, F).slice())
                        value_op_add(rhs, beta, m.scaled(total));
                }
                double res = relative(value_op_diff_norm(lhs, rhs), value_op_norm(lhs),
                                      value_op_norm(rhs));
                if (res > a.res) {
                    a.res = res;
                    a.where = "at " + point_str(p);
                }
                a.spent += Clock::now() - t0;
            }
        }
        for (const auto& q : all)
            rep.add(agg_item("commutation", pair_id(name, q[0], q[1], q[2], q[3]),
                             kCommutationAnchor, agg[q], kFloatTol));
    }
    return rep;
}

VerificationReport float_quadratic_relations(const GeneratorSet& g) {
    const ProblemConfig& cfg = g.cfg;
    const int dim = g.dim;
    std::vector<int> idx = g.indices();
    VerificationReport rep;

    CellPlan plan = quadratic_cells(g);
    std::vector<std::pair<int, int>> all = plan.nf;
    all.insert(all.end(), plan.pointwise.begin(), plan.pointwise.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    int jet_order = 0;
    for (const auto& [pr, op] : g.j) {
        (void)pr;
        jet_order = std::max(jet_order, op.max_order());
    }
    std::vector<RationalPoint> pts = float_points(cfg.D(), cfg.points, cfg.seed);

    std::map<std::pair<int, int>, Agg> agg;
    for (const RationalPoint& p : pts) {
        std::vector<double> coords = p.coords_double();
        double r = std::sqrt(rat_double(p.s));
        std::map<std::pair<int, int>, ValueJets<Cx>> jets;
        auto jets_of = [&](int X, int Y) -> const ValueJets<Cx>& {
            std::pair<int, int> key{std::min(X, Y), std::max(X, Y)};
            auto jit = jets.find(key);
            if (jit == jets.end())
                jit = jets.emplace(key, float_jets_at(g.j.at(key), coords, r, jet_order)).first;
            return jit->second;
        };
        for (const auto& [B, C] : all) {
            Agg& a = agg[{B, C}];
            auto t0 = Clock::now();
            ValueOp<Cx> acc;
            for (int A : idx) {
                if (A == B || A == C) continue;
                int sign = GeneratorSet::eta(A);
                if (A > B) sign = -sign;
                if (A > C) sign = -sign;
                ValueOp<Cx> anti = anticommutator_values(jets_of(A, B), jets_of(A, C), conv_c);
                Cx scale(static_cast<double>(sign), 0.0);
                for (const auto& [beta, m] : anti) value_op_add(acc, beta, m.scaled(scale));
            }
            double lnorm = value_op_norm(acc);
            GaussRat k = B == C ? GaussRat(Rat(-2) * cfg.a() * Rat(GeneratorSet::eta(B)))
                                : GaussRat(0);
            if (!k.is_zero())
                value_op_add(acc, Mono(0), Mat<Cx>::identity(dim, -gauss_c(k)));
            double res = relative(value_op_norm(acc), lnorm, std::abs(gauss_c(k)));
            if (res > a.res) {
                a.res = res;
                a.where = "at " + point_str(p);
            }
            a.spent += Clock::now() - t0;
        }
    }
    for (const auto& [B, C] : all)
        rep.add(agg_item("quadratic", "Q(" + std::to_string(B) + "," + std::to_string(C) + ")",
                         kQuadraticAnchor, agg.at({B, C}), kFloatTol));
    return rep;
}

// ------------------------------------------------------------- radial ----

namespace {

constexpr int kQuadNodes = 64;

// Nodes and weights of the Gauss-Laguerre rule for weight e^{-x} on [0, inf):
// roots of L_m by Newton iteration on the three-term recurrence, weights
// x_i / ((m+1)^2 L_{m+1}(x_i)^2).
struct QuadRule {
    std::vector<double> x, w;
};

double laguerre_value(int m, double x) {
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= m; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - x) * p2 - (j - 1.0) * p3) / j;
    }
    return p1;
}

QuadRule gauss_laguerre(int m) {
    QuadRule q;
    q.x.resize(m);
    q.w.resize(m);
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * m);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * m);
        } else {
            double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - q.x[i - 2]);
        }
        for (int it = 0; it < 64; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= m; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
            }
            double pp = m * (p1 - p2) / z;
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-14 * std::max(1.0, z)) break;
        }
        q.x[i] = z;
        double lnext = laguerre_value(m + 1, z);
        q.w[i] = z / ((m + 1.0) * (m + 1.0) * lnext * lnext);
    }
    return q;
}

Cx poly_value_c(const Poly& p, double t) {
    Cx out(0.0);
    for (const auto& [mono, coef] : p.terms())
        out += gauss_c(coef) * std::pow(t, mono_exp(mono, 0));
    return out;
}

} // namespace

VerificationReport float_radial_gram(const ProblemConfig& cfg, int kmax, int lmax) {
    VerificationReport rep;
    QuadRule q = gauss_laguerre(kQuadNodes);
    const int n = cfg.n;

    for (int l = 0; l <= lmax; ++l) {
        Agg a;
        auto t0 = Clock::now();
        std::vector<RadialFunction> tw(kmax + 1);
        for (int k = 1; k <= kmax; ++k)
            tw[k] = radial_eigenfunction({k, l, n, cfg.two_mu}, true);
        for (int k1 = 1; k1 <= kmax; ++k1)
            for (int k2 = k1; k2 <= kmax; ++k2) {
                const RadialFunction& f = tw[k1];
                const RadialFunction& h = tw[k2];
                double alpha = rat_double(f.decay + h.decay);
                int e = (f.half_exponent + h.half_exponent) / 2 + 2 * n - 1;
                double scale = std::sqrt(rat_double(f.c2 * h.c2));
                Cx approx(0.0);
                for (int i = 0; i < kQuadNodes; ++i) {
                    double t = q.x[i] / alpha;
                    approx += q.w[i] * std::conj(poly_value_c(f.poly, t)) *
                              poly_value_c(h.poly, t) * std::pow(t, e);
                }
                approx *= scale / alpha;
                Cx exact = qval_c(radial_inner(f, h, n));
                double res = std::abs(approx - exact);
                if (res > a.res) {
                    a.res = res;
                    a.where = "<k=" + std::to_string(k1) + ", k=" + std::to_string(k2) + ">";
                }
            }
        a.spent = Clock::now() - t0;
        rep.add(agg_item("radial", "gram l=" + std::to_string(l),
                         "64-node Gauss-Laguerre quadrature reproduces the exact Gram matrix",
                         a, kQuadratureTol));
    }
    return rep;
}

} // namespace micz
