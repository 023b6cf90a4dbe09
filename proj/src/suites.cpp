#include "micz/suites.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

#include "micz/errors.hpp"

namespace micz {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

// Distinct deterministic sampling streams per use site.
constexpr std::uint64_t kPairStream = 0x7061697273ull;
constexpr std::uint64_t kHatStream = 0x686174ull;
constexpr std::uint64_t kCellStream = 0x63656c6cull;

constexpr int kPairSampleLarge = 60; // pointwise pair sample for D = 6
constexpr int kHatSampleSmall = 20;  // hatted-family sample, n = 2
constexpr int kHatSampleLarge = 10;  // hatted-family sample, n = 3
constexpr int kCellSampleLarge = 8;  // pointwise cell sample for D = 6

template <typename V>
V sample_subset(V items, std::size_t k, std::uint64_t seed) {
    if (items.size() <= k) return items;
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(items.size() - i));
        std::swap(items[i], items[j]);
    }
    items.resize(k);
    std::sort(items.begin(), items.end());
    return items;
}

Mat<QVal> eval_mat(const Mat<ScalarExpr>& m, const RationalPoint& p) {
    Mat<QVal> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out(i, j) = m(i, j).eval(p);
    return out;
}

bool first_nonzero(const Mat<QVal>& m, int& oi, int& oj) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) {
                oi = i;
                oj = j;
                return true;
            }
    return false;
}

std::string diffop_witness(const DiffOp& d) {
    for (const auto& [beta, m] : d.terms())
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (!m(i, j).is_zero()) {
                    std::string head = mono_total_deg(beta) == 0
                                           ? std::string("1")
                                           : ("d^" + mono_str(beta, d.D()));
                    return head + " [" + std::to_string(i) + "][" + std::to_string(j) +
                           "] = " + m(i, j).str();
                }
    return "";
}

QVal conv_long(long c) { return QVal::rational(GaussRat(Rat(c))); }

} // namespace

std::vector<RationalPoint> seeded_points(int D, int count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<RationalPoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) pts.push_back(random_sphere_point(D, rng));
    return pts;
}

// ---------------------------------------------------------------- gauge ----

const char* gauge_anchor(const std::string& id) {
    if (id == "curvature") return "F from dA + i[A,A] matches the closed form";
    if (id == "(a)") return "F_uv F_uv = (2/r^4) c2";
    if (id == "(b)") return "[grad_k, F_uv] = (x_u F_vk + x_v F_ku - 2 x_k F_uv)/r^2";
    if (id == "(c)") return "x . A = 0";
    if (id == "(d)") return "x_u F_uv = 0";
    if (id == "(e)") return "[grad_u, F_uv] = 0";
    if (id == "(f)")
        return "r^2[F_uv,F_ab] + i(F_ub d_av - F_vb d_au + F_au d_bv - F_av d_bu) = "
               "(i/r^2)(x_u x_a F_bv + x_u x_b F_va - x_v x_a F_bu - x_v x_b F_ua)";
    if (id == "(g)") return "r^2 F_la F_lb = c (d_ab/r^2 - x_a x_b/r^4) + i(n-3/2) F_ab";
    return "";
}

GaugeCaseSet gauge_cases(const GaugeField& gf) {
    const int D = gf.cfg.D();
    GaugeCaseSet cs;
    cs.D = D;
    cs.dim = gf.rep.dim;
    cs.pid.assign(D, std::vector<int>(D, -1));
    for (int u = 0; u < D; ++u)
        for (int v = u + 1; v < D; ++v) {
            cs.pid[u][v] = static_cast<int>(cs.pairs.size());
            cs.pairs.emplace_back(u, v);
        }
    cs.dF.resize(D);
    for (int k = 0; k < D; ++k)
        for (const auto& [u, v] : cs.pairs) cs.dF[k].push_back(mat_derivative(gf.F[u][v], k));

    const GaussRat I = GaussRat::i();
    const ScalarExpr one; // dim_vars() == 0 means scalar 1
    ScalarExpr s_expr(D, poly_s(D), Poly());
    ScalarExpr inv_s(D, Poly(GaussRat(1)), Poly(), {{0, 1}});
    ScalarExpr inv_s2(D, Poly(GaussRat(1)), Poly(), {{0, 2}});
    auto x_over_s = [&](int u) {
        return ScalarExpr(D, Poly::variable(u), Poly(), {{0, 1}});
    };
    auto xx_over_s = [&](int u, int v) {
        return ScalarExpr(D, Poly::variable(u) * Poly::variable(v), Poly(), {{0, 1}});
    };
    auto xx_over_s2 = [&](int u, int v) {
        return ScalarExpr(D, Poly::variable(u) * Poly::variable(v), Poly(), {{0, 2}});
    };

    auto fref = [&](int u, int v, GaussRat& sign) -> MatRef {
        MatRef m;
        m.kind = MatRef::fld;
        if (u < v) {
            m.pid = cs.pid[u][v];
        } else {
            m.pid = cs.pid[v][u];
            sign = -sign;
        }
        return m;
    };
    auto add_f = [&](std::vector<MatTerm>& out, GaussRat coeff, const ScalarExpr& scalar, int u,
                     int v) {
        if (u == v || coeff.is_zero()) return;
        GaussRat sign(1);
        MatRef m = fref(u, v, sign);
        out.push_back({coeff * sign, scalar, {m}});
    };
    auto idx1 = [](int a) { return std::to_string(a + 1); };

    // curvature formula vs closed form, the mutual oracle
    for (std::size_t pi = 0; pi < cs.pairs.size(); ++pi) {
        GaugeCase c;
        c.id = "curvature";
        c.indices = "u=" + idx1(cs.pairs[pi].first) + " v=" + idx1(cs.pairs[pi].second);
        c.lhs.push_back({GaussRat(1), one, {{MatRef::fld, static_cast<int>(pi), 0}}});
        c.rhs.push_back({GaussRat(1), one, {{MatRef::fld_closed, static_cast<int>(pi), 0}}});
        cs.cases.push_back(std::move(c));
    }

    // (a)
    {
        GaugeCase c;
        c.id = "(a)";
        for (std::size_t pi = 0; pi < cs.pairs.size(); ++pi)
            c.lhs.push_back({GaussRat(2), one,
                             {{MatRef::fld, static_cast<int>(pi), 0},
                              {MatRef::fld, static_cast<int>(pi), 0}}});
        Rat c2 = casimir(gf.rep);
        if (c2 != 0) c.rhs.push_back({GaussRat(Rat(2) * c2), inv_s2, {{MatRef::id, 0, 0}}});
        cs.cases.push_back(std::move(c));
    }

    // (b)
    for (int k = 0; k < D; ++k)
        for (const auto& [u, v] : cs.pairs) {
            GaugeCase c;
            c.id = "(b)";
            c.indices = "k=" + idx1(k) + " u=" + idx1(u) + " v=" + idx1(v);
            int pid = cs.pid[u][v];
            c.lhs.push_back({GaussRat(1), one, {{MatRef::dfld, pid, k}}});
            c.lhs.push_back({I, one, {{MatRef::pot, k, 0}, {MatRef::fld, pid, 0}}});
            c.lhs.push_back({-I, one, {{MatRef::fld, pid, 0}, {MatRef::pot, k, 0}}});
            add_f(c.rhs, GaussRat(1), x_over_s(u), v, k);
            add_f(c.rhs, GaussRat(1), x_over_s(v), k, u);
            add_f(c.rhs, GaussRat(-2), x_over_s(k), u, v);
            cs.cases.push_back(std::move(c));
        }

    // (c)
    {
        GaugeCase c;
        c.id = "(c)";
        for (int a = 0; a < D; ++a)
            c.lhs.push_back({GaussRat(1), ScalarExpr::variable(D, a), {{MatRef::pot, a, 0}}});
        cs.cases.push_back(std::move(c));
    }

    // (d)
    for (int v = 0; v < D; ++v) {
        GaugeCase c;
        c.id = "(d)";
        c.indices = "v=" + idx1(v);
        for (int u = 0; u < D; ++u) add_f(c.lhs, GaussRat(1), ScalarExpr::variable(D, u), u, v);
        cs.cases.push_back(std::move(c));
    }

    // (e)
    for (int v = 0; v < D; ++v) {
        GaugeCase c;
        c.id = "(e)";
        c.indices = "v=" + idx1(v);
        for (int u = 0; u < D; ++u) {
            if (u == v) continue;
            GaussRat sign(1);
            MatRef f = fref(u, v, sign);
            c.lhs.push_back({sign, one, {{MatRef::dfld, f.pid, u}}});
            c.lhs.push_back({I * sign, one, {{MatRef::pot, u, 0}, f}});
            c.lhs.push_back({-I * sign, one, {f, {MatRef::pot, u, 0}}});
        }
        cs.cases.push_back(std::move(c));
    }

    // (f)
    for (std::size_t p1 = 0; p1 < cs.pairs.size(); ++p1)
        for (std::size_t p2 = p1; p2 < cs.pairs.size(); ++p2) {
            auto [u, v] = cs.pairs[p1];
            auto [a, b] = cs.pairs[p2];
            GaugeCase c;
            c.id = "(f)";
            c.indices = "u=" + idx1(u) + " v=" + idx1(v) + " a=" + idx1(a) + " b=" + idx1(b);
            c.lhs.push_back({GaussRat(1), s_expr,
                             {{MatRef::fld, static_cast<int>(p1), 0},
                              {MatRef::fld, static_cast<int>(p2), 0}}});
            c.lhs.push_back({GaussRat(-1), s_expr,
                             {{MatRef::fld, static_cast<int>(p2), 0},
                              {MatRef::fld, static_cast<int>(p1), 0}}});
            if (a == v) add_f(c.lhs, I, one, u, b);
            if (a == u) add_f(c.lhs, -I, one, v, b);
            if (b == v) add_f(c.lhs, I, one, a, u);
            if (b == u) add_f(c.lhs, -I, one, a, v);
            add_f(c.rhs, I, xx_over_s(u, a), b, v);
            add_f(c.rhs, I, xx_over_s(u, b), v, a);
            add_f(c.rhs, -I, xx_over_s(v, a), b, u);
            add_f(c.rhs, -I, xx_over_s(v, b), u, a);
            cs.cases.push_back(std::move(c));
        }

    // (g)
    {
        Rat c_charge = gf.cfg.c();
        GaussRat half_odd(Rat(0), rat(2 * gf.cfg.n - 3, 2)); // i (n - 3/2)
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b) {
                GaugeCase c;
                c.id = "(g)";
                c.indices = "a=" + idx1(a) + " b=" + idx1(b);
                for (int l = 0; l < D; ++l) {
                    if (l == a || l == b) continue;
                    GaussRat sign(1);
                    MatRef f1 = fref(l, a, sign);
                    MatRef f2 = fref(l, b, sign);
                    c.lhs.push_back({sign, s_expr, {f1, f2}});
                }
                if (c_charge != 0) {
                    if (a == b) c.rhs.push_back({GaussRat(c_charge), inv_s, {{MatRef::id, 0, 0}}});
                    c.rhs.push_back({GaussRat(-c_charge), xx_over_s2(a, b), {{MatRef::id, 0, 0}}});
                }
                add_f(c.rhs, half_odd, one, a, b);
                cs.cases.push_back(std::move(c));
            }
    }

    return cs;
}

VerificationReport verify_gauge_identities(const GaugeField& gf) {
    const ProblemConfig& cfg = gf.cfg;
    GaugeCaseSet cs = gauge_cases(gf);
    std::vector<RationalPoint> pts = seeded_points(cfg.D(), cfg.points, cfg.seed);

    std::vector<GaugeTables<QVal>> tabs;
    tabs.reserve(pts.size());
    for (const RationalPoint& p : pts)
        tabs.push_back(eval_gauge_tables<QVal>(
            gf, cs, QVal::rational(GaussRat(1)),
            [&](const Mat<ScalarExpr>& m) { return eval_mat(m, p); }));

    std::vector<std::string> id_order;
    std::map<std::string, std::vector<int>> groups;
    for (std::size_t ci = 0; ci < cs.cases.size(); ++ci) {
        const std::string& id = cs.cases[ci].id;
        if (!groups.count(id)) id_order.push_back(id);
        groups[id].push_back(static_cast<int>(ci));
    }

    const bool falsifier_g = cfg.two_mu == 2;
    VerificationReport rep;
    std::string curvature_fail;

    for (const std::string& id : id_order) {
        for (std::size_t pi = 0; pi < pts.size(); ++pi) {
            auto t0 = Clock::now();
            const RationalPoint& p = pts[pi];
            const GaugeTables<QVal>& t = tabs[pi];
            auto evs = [&](const MatTerm& term) {
                QVal c = QVal::rational(term.coeff);
                if (term.scalar.dim_vars() > 0) c = c * term.scalar.eval(p);
                return c;
            };

            bool hit = false;
            std::string where;
            std::string value;
            for (int ci : groups[id]) {
                const GaugeCase& gc = cs.cases[ci];
                Mat<QVal> diff =
                    eval_mat_terms(gc.lhs, t, cs.dim, QVal::rational(GaussRat(1)), evs) -
                    eval_mat_terms(gc.rhs, t, cs.dim, QVal::rational(GaussRat(1)), evs);
                int i = 0, j = 0;
                if (first_nonzero(diff, i, j)) {
                    hit = true;
                    where = gc.indices.empty() ? "" : gc.indices + " ";
                    where += "entry [" + std::to_string(i) + "][" + std::to_string(j) + "] at " +
                             point_str(p);
                    value = diff(i, j).str();
                    break;
                }
            }

            ReportItem it;
            it.suite = "gauge";
            it.id = id + "#" + std::to_string(pi);
            it.anchor = gauge_anchor(id);
            it.strategy = "exact-pointwise";
            if (id == "(g)" && falsifier_g) {
                it.status = hit ? Status::expected_fail : Status::fail;
                it.witness = hit ? where : "identity unexpectedly holds at " + point_str(p);
                it.residual = hit ? value : "0";
            } else {
                it.status = hit ? Status::fail : Status::pass;
                it.witness = where;
                it.residual = hit ? value : "0";
            }
            it.millis = ms_since(t0);
            if (id == "curvature" && hit && curvature_fail.empty()) curvature_fail = where;
            rep.add(std::move(it));
        }
        if (id == "curvature" && !curvature_fail.empty())
            throw ConventionMismatch("curvature formula disagrees with closed form: " +
                                     curvature_fail);
    }
    return rep;
}

// --------------------------------------------------------- closed forms ----

std::vector<ClosedFormCase> closed_form_cases(const GeneratorSet& g) {
    const ProblemConfig& cfg = g.cfg;
    const int D = cfg.D(), dim = g.dim;
    const Rat c = cfg.c();
    auto xvar = [&](int a) { return ScalarExpr::variable(D, a); };
    ScalarExpr r_expr = ScalarExpr::r(D);
    ScalarExpr s_expr(D, poly_s(D), Poly());
    ScalarExpr c_over_r(D, Poly(), Poly(GaussRat(c)), {{0, 1}}); // c r / |x|^2

    DiffOp xdotpi(D, dim);
    for (int b = 0; b < D; ++b) xdotpi += g.pi[b].scaled_expr(xvar(b));

    auto scale_mat = [&](const Mat<ScalarExpr>& m, const ScalarExpr& e) {
        Mat<ScalarExpr> out(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (!m(i, j).is_zero()) out(i, j) = m(i, j) * e;
        return out;
    };
    auto idx1 = [](int a) { return std::to_string(a + 1); };

    // seven-term closed form shared by A_a (minus) and M_a (plus)
    auto seven = [&](int a, int last_sign) {
        DiffOp rhs = g.pi2.scaled_expr(xvar(a).scaled(GaussRat(rat(1, 2))));
        rhs = rhs - compose(g.pi[a], xdotpi);
        for (int b = 0; b < D; ++b) {
            if (b == a) continue;
            rhs = rhs + compose(DiffOp::mult(D, scale_mat(g.gauge.F[a][b], s_expr)), g.pi[b]);
        }
        if (c != 0)
            rhs = rhs - DiffOp::mult_scalar(
                            D, dim,
                            ScalarExpr(D, Poly::variable(a).scaled(GaussRat(c / 2)), Poly(),
                                       {{0, 1}}));
        rhs = rhs + g.pi[a].scaled(GaussRat(Rat(0), rat(D - 3, 2)));
        DiffOp half_x = DiffOp::mult_scalar(D, dim, xvar(a).scaled(GaussRat(rat(1, 2))));
        return last_sign < 0 ? rhs - half_x : rhs + half_x;
    };

    std::vector<ClosedFormCase> out;

    for (int a = 0; a < D; ++a)
        for (int b = a + 1; b < D; ++b) {
            ClosedFormCase cc;
            cc.id = "J(" + idx1(a) + "," + idx1(b) + ")";
            cc.anchor = "J_ab = x_a pi_b - x_b pi_a + r^2 F_ab";
            cc.lhs = g.J(a + 1, b + 1);
            cc.rhs = g.pi[b].scaled_expr(xvar(a)) - g.pi[a].scaled_expr(xvar(b)) +
                     DiffOp::mult(D, scale_mat(g.gauge.F[a][b], s_expr));
            out.push_back(std::move(cc));
        }

    for (int a = 0; a < D; ++a) {
        ClosedFormCase cc;
        cc.id = "Gamma(" + idx1(a) + ")";
        cc.anchor = "Gamma_a = r pi_a";
        cc.lhs = g.J(a + 1, 0);
        cc.rhs = g.pi[a].scaled_expr(r_expr);
        out.push_back(std::move(cc));
    }

    for (int a = 0; a < D; ++a) {
        ClosedFormCase cc;
        cc.id = "A(" + idx1(a) + ")";
        cc.anchor = "A_a = x_a pi^2/2 - pi_a (x.pi) + r^2 F_ab pi_b - c x_a/(2r^2) "
                    "+ i(D-3)/2 pi_a - x_a/2";
        cc.lhs = g.J(a + 1, D + 1);
        cc.rhs = seven(a, -1);
        out.push_back(std::move(cc));
    }

    for (int a = 0; a < D; ++a) {
        ClosedFormCase cc;
        cc.id = "M(" + idx1(a) + ")";
        cc.anchor = "M_a = x_a pi^2/2 - pi_a (x.pi) + r^2 F_ab pi_b - c x_a/(2r^2) "
                    "+ i(D-3)/2 pi_a + x_a/2";
        cc.lhs = g.J(a + 1, -1);
        cc.rhs = seven(a, +1);
        out.push_back(std::move(cc));
    }

    {
        ClosedFormCase cc;
        cc.id = "T";
        cc.anchor = "T = x.pi - i(D-1)/2";
        cc.lhs = g.J(D + 1, -1);
        cc.rhs = xdotpi + DiffOp::mult_scalar(
                              D, dim, ScalarExpr::constant(D, GaussRat(Rat(0), rat(1 - D, 2))));
        out.push_back(std::move(cc));
    }
    {
        ClosedFormCase cc;
        cc.id = "Gamma(-1)";
        cc.anchor = "Gamma_{-1} = (r pi^2 + r + c/r)/2";
        cc.lhs = g.J(-1, 0);
        cc.rhs = (g.pi2.scaled_expr(r_expr) +
                  DiffOp::mult_scalar(D, dim, r_expr + c_over_r))
                     .scaled(GaussRat(rat(1, 2)));
        out.push_back(std::move(cc));
    }
    {
        ClosedFormCase cc;
        cc.id = "Gamma(" + std::to_string(D + 1) + ")";
        cc.anchor = "Gamma_{D+1} = (r pi^2 - r + c/r)/2";
        cc.lhs = g.J(D + 1, 0);
        cc.rhs = (g.pi2.scaled_expr(r_expr) +
                  DiffOp::mult_scalar(D, dim, c_over_r - r_expr))
                     .scaled(GaussRat(rat(1, 2)));
        out.push_back(std::move(cc));
    }

    return out;
}

VerificationReport verify_closed_forms(const GeneratorSet& g) {
    const ProblemConfig& cfg = g.cfg;
    std::vector<ClosedFormCase> cases = closed_form_cases(g);
    std::vector<RationalPoint> pts;
    VerificationReport rep;

    for (const ClosedFormCase& cc : cases) {
        if (cc.lhs.r_laurent() && cc.rhs.r_laurent()) {
            auto t0 = Clock::now();
            DiffOp diff = cc.lhs - cc.rhs;
            ReportItem it;
            it.suite = "closed-forms";
            it.id = cc.id;
            it.anchor = cc.anchor;
            it.strategy = "exact-normal-form";
            it.status = diff.is_zero() ? Status::pass : Status::fail;
            it.witness = diff.is_zero() ? "" : diffop_witness(diff);
            it.residual = diff.is_zero() ? "0" : "nonzero";
            it.millis = ms_since(t0);
            rep.add(std::move(it));
            continue;
        }
        if (pts.empty()) pts = seeded_points(cfg.D(), cfg.points, cfg.seed);
        for (std::size_t pi = 0; pi < pts.size(); ++pi) {
            auto t0 = Clock::now();
            ValueOp<QVal> diff = value_op_sub(cc.lhs.eval_at(pts[pi]), cc.rhs.eval_at(pts[pi]));
            bool ok = value_op_is_zero(diff);
            ReportItem it;
            it.suite = "closed-forms";
            it.id = cc.id + "#" + std::to_string(pi);
            it.anchor = cc.anchor;
            it.strategy = "exact-pointwise";
            it.status = ok ? Status::pass : Status::fail;
            it.witness =
                ok ? "" : value_op_witness_entry(diff, cfg.D()) + " at " + point_str(pts[pi]);
            it.residual = ok ? "0" : "nonzero";
            it.millis = ms_since(t0);
            rep.add(std::move(it));
        }
    }
    return rep;
}

// ---------------------------------------------------------- commutation ----

const char* kCommutationAnchor =
    "[J_AB, J_CD] = -i eta_AC J_BD - i eta_BD J_AC + i eta_AD J_BC + i eta_BC J_AD";
const char* kQuadraticAnchor =
    "sum_A eta^AA {J_AB, J_AC} = -2a eta_BC, a = n - 1/2 - c";

std::vector<std::tuple<int, int, GaussRat>> eq12_rhs(int A, int B, int C, int Dp) {
    const GaussRat I = GaussRat::i();
    auto eta = [](int X) { return GaussRat(Rat(GeneratorSet::eta(X))); };
    std::vector<std::tuple<int, int, GaussRat>> out;
    if (A == C) out.emplace_back(B, Dp, -I * eta(A));
    if (B == Dp) out.emplace_back(A, C, -I * eta(B));
    if (A == Dp) out.emplace_back(B, C, I * eta(A));
    if (B == C) out.emplace_back(A, Dp, I * eta(B));
    return out;
}

std::string pair_id(const char* name, int A, int B, int C, int Dp) {
    auto s = [](int v) { return std::to_string(v); };
    return std::string("[") + name + "(" + s(A) + "," + s(B) + ")," + name + "(" + s(C) + "," +
           s(Dp) + ")]";
}

PairPlan commutation_pairs(const GeneratorSet& g, bool hatted) {
    const auto& table = hatted ? g.jhat : g.j;
    std::vector<int> idx = g.indices();
    std::vector<std::pair<int, int>> gens;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) gens.emplace_back(idx[i], idx[j]);

    std::map<std::pair<int, int>, bool> rl;
    for (const auto& pr : gens) rl[pr] = table.at(pr).r_laurent();
    auto rl_of = [&](int A, int B) { return rl.at({std::min(A, B), std::max(A, B)}); };

    PairPlan plan;
    std::vector<std::array<int, 4>> rest;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            auto [A, B] = gens[i];
            auto [C, Dp] = gens[j];
            bool nf = rl[gens[i]] && rl[gens[j]];
            for (const auto& [E, F, coef] : eq12_rhs(A, B, C, Dp)) {
                (void)coef;
                if (E != F && !rl_of(E, F)) nf = false;
            }
            (nf ? plan.nf : rest).push_back({A, B, C, Dp});
        }

    std::uint64_t seed = g.cfg.seed ^ (hatted ? kHatStream : kPairStream);
    if (hatted) {
        // independent sampled re-check of the conjugated family
        std::size_t k = g.cfg.n <= 2 ? kHatSampleSmall : kHatSampleLarge;
        std::vector<std::array<int, 4>> all = plan.nf;
        all.insert(all.end(), rest.begin(), rest.end());
        all = sample_subset(std::move(all), k, seed);
        PairPlan sampled;
        for (const auto& q : all) {
            bool nf = rl_of(q[0], q[1]) && rl_of(q[2], q[3]);
            for (const auto& [E, F, coef] : eq12_rhs(q[0], q[1], q[2], q[3])) {
                (void)coef;
                if (E != F && !rl_of(E, F)) nf = false;
            }
            (nf ? sampled.nf : sampled.pointwise).push_back(q);
        }
        return sampled;
    }
    if (g.cfg.n <= 2) {
        plan.pointwise = std::move(rest); // full coverage
    } else {
        plan.pointwise = sample_subset(std::move(rest), kPairSampleLarge, seed);
    }
    return plan;
}

VerificationReport verify_commutation_relations(const GeneratorSet& g) {
    const ProblemConfig& cfg = g.cfg;
    const int D = cfg.D(), dim = g.dim;
    VerificationReport rep;

    for (int fam = 0; fam < 2; ++fam) {
        const bool hatted = fam == 1;
        const char* name = hatted ? "Jhat" : "J";
        const auto& table = hatted ? g.jhat : g.j;
        PairPlan plan = commutation_pairs(g, hatted);

        for (const auto& [A, B, C, Dp] : plan.nf) {
            auto t0 = Clock::now();
            DiffOp lhs = commutator(table.at({A, B}), table.at({C, Dp}));
            DiffOp rhs(D, dim);
            for (const auto& [E, F, coef] : eq12_rhs(A, B, C, Dp)) {
                if (E == F) continue;
                rhs += (hatted ? g.Jhat(E, F) : g.J(E, F)).scaled(coef);
            }
            DiffOp diff = lhs - rhs;
            ReportItem it;
            it.suite = "commutation";
            it.id = pair_id(name, A, B, C, Dp);
            it.anchor = kCommutationAnchor;
            it.strategy = "exact-normal-form";
            it.status = diff.is_zero() ? Status::pass : Status::fail;
            it.witness = diff.is_zero() ? "" : diffop_witness(diff);
            it.residual = diff.is_zero() ? "0" : "nonzero";
            it.millis = ms_since(t0);
            rep.add(std::move(it));
        }

        if (plan.pointwise.empty()) continue;
        int jet_order = 0;
        for (const auto& [pr, op] : table) {
            (void)pr;
            jet_order = std::max(jet_order, op.max_order());
        }
        std::vector<RationalPoint> pts = seeded_points(D, cfg.points, cfg.seed);
        for (std::size_t pi = 0; pi < pts.size(); ++pi) {
            const RationalPoint& p = pts[pi];
            std::map<std::pair<int, int>, ValueJets<QVal>> jets;
            auto jets_of = [&](int X, int Y) -> const ValueJets<QVal>& {
                std::pair<int, int> key{std::min(X, Y), std::max(X, Y)};
                auto jit = jets.find(key);
                if (jit == jets.end())
                    jit = jets.emplace(key, exact_jets_at(table.at(key), p, jet_order)).first;
                return jit->second;
            };
            for (const auto& [A, B, C, Dp] : plan.pointwise) {
                auto t0 = Clock::now();
                ValueOp<QVal> diff =
                    commutator_values(jets_of(A, B), jets_of(C, Dp), conv_long);
                for (const auto& [E, F, coef] : eq12_rhs(A, B, C, Dp)) {
                    if (E == F) continue;
                    GaussRat total = E < F ? coef : -coef;
                    ValueOp<QVal> part = value_op_scaled(
                        jets_of(E, F).slice(), QVal::rational(-total));
                    for (const auto& [beta, m] : part) value_op_add(diff, beta, m);
                }
                bool ok = value_op_is_zero(diff);
                ReportItem it;
                it.suite = "commutation";
                it.id = pair_id(name, A, B, C, Dp) + "#" + std::to_string(pi);
                it.anchor = kCommutationAnchor;
                it.strategy = "exact-pointwise";
                it.status = ok ? Status::pass : Status::fail;
                it.witness =
                    ok ? "" : value_op_witness_entry(diff, D) + " at " + point_str(p);
                it.residual = ok ? "0" : "nonzero";
                it.millis = ms_since(t0);
                rep.add(std::move(it));
            }
        }
    }
    return rep;
}

// ------------------------------------------------------------- quadratic ----

CellPlan quadratic_cells(const GeneratorSet& g) {
    std::vector<int> idx = g.indices();
    std::map<std::pair<int, int>, bool> rl;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            std::pair<int, int> pr{idx[i], idx[j]};
            rl[pr] = g.j.at(pr).r_laurent();
        }
    auto rl_of = [&](int A, int B) { return rl.at({std::min(A, B), std::max(A, B)}); };

    CellPlan plan;
    std::vector<std::pair<int, int>> rest;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i; j < idx.size(); ++j) {
            int B = idx[i], C = idx[j];
            bool nf = true;
            for (int A : idx) {
                if (A == B || A == C) continue;
                if (!rl_of(A, B) || !rl_of(A, C)) nf = false;
            }
            (nf ? plan.nf : rest).emplace_back(B, C);
        }
    if (g.cfg.n <= 2) {
        plan.pointwise = std::move(rest);
    } else {
        plan.pointwise = sample_subset(std::move(rest), kCellSampleLarge,
                                       g.cfg.seed ^ kCellStream);
    }
    return plan;
}

VerificationReport verify_quadratic_relations(const GeneratorSet& g) {
    const ProblemConfig& cfg = g.cfg;
    const int D = cfg.D(), dim = g.dim;
    std::vector<int> idx = g.indices();
    VerificationReport rep;
    CellPlan plan = quadratic_cells(g);
    auto cell_id = [](int B, int C) {
        return "Q(" + std::to_string(B) + "," + std::to_string(C) + ")";
    };
    auto rhs_const = [&](int B, int C) { // -2a eta_BC
        if (B != C) return GaussRat(0);
        return GaussRat(Rat(-2) * cfg.a() * Rat(GeneratorSet::eta(B)));
    };

    for (const auto& [B, C] : plan.nf) {
        auto t0 = Clock::now();
        DiffOp acc(D, dim);
        for (int A : idx) {
            if (A == B || A == C) continue;
            acc += anticommutator(g.J(A, B), g.J(A, C)).scaled(GaussRat(Rat(GeneratorSet::eta(A))));
        }
        GaussRat k = rhs_const(B, C);
        if (!k.is_zero())
            acc = acc - DiffOp::mult_scalar(D, dim, ScalarExpr::constant(D, k));
        ReportItem it;
        it.suite = "quadratic";
        it.id = cell_id(B, C);
        it.anchor = kQuadraticAnchor;
        it.strategy = "exact-normal-form";
        it.status = acc.is_zero() ? Status::pass : Status::fail;
        it.witness = acc.is_zero() ? "" : diffop_witness(acc);
        it.residual = acc.is_zero() ? "0" : "nonzero";
        it.millis = ms_since(t0);
        rep.add(std::move(it));
    }

    if (plan.pointwise.empty()) return rep;
    int jet_order = 0;
    for (const auto& [pr, op] : g.j) {
        (void)pr;
        jet_order = std::max(jet_order, op.max_order());
    }
    std::vector<RationalPoint> pts = seeded_points(D, cfg.points, cfg.seed);
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        const RationalPoint& p = pts[pi];
        std::map<std::pair<int, int>, ValueJets<QVal>> jets;
        auto jets_of = [&](int X, int Y) -> const ValueJets<QVal>& {
            std::pair<int, int> key{std::min(X, Y), std::max(X, Y)};
            auto jit = jets.find(key);
            if (jit == jets.end())
                jit = jets.emplace(key, exact_jets_at(g.j.at(key), p, jet_order)).first;
            return jit->second;
        };
        for (const auto& [B, C] : plan.pointwise) {
            auto t0 = Clock::now();
            ValueOp<QVal> acc;
            for (int A : idx) {
                if (A == B || A == C) continue;
                int sign = GeneratorSet::eta(A);
                if (A > B) sign = -sign;
                if (A > C) sign = -sign;
                ValueOp<QVal> anti =
                    anticommutator_values(jets_of(A, B), jets_of(A, C), conv_long);
                QVal scale = QVal::rational(GaussRat(Rat(sign)));
                for (const auto& [beta, m] : anti) value_op_add(acc, beta, m.scaled(scale));
            }
            GaussRat k = rhs_const(B, C);
            if (!k.is_zero())
                value_op_add(acc, Mono(0),
                             Mat<QVal>::identity(dim, QVal::rational(-k)));
            bool ok = value_op_is_zero(acc);
            ReportItem it;
            it.suite = "quadratic";
            it.id = cell_id(B, C) + "#" + std::to_string(pi);
            it.anchor = kQuadraticAnchor;
            it.strategy = "exact-pointwise";
            it.status = ok ? Status::pass : Status::fail;
            it.witness = ok ? "" : value_op_witness_entry(acc, D) + " at " + point_str(p);
            it.residual = ok ? "0" : "nonzero";
            it.millis = ms_since(t0);
            rep.add(std::move(it));
        }
    }
    return rep;
}

} // namespace micz
