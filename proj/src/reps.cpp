#include "micz/reps.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <utility>

#include "micz/errors.hpp"
#include "micz/matrix.hpp"
#include "micz/scalar.hpp"

namespace micz {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

// 0 = all integral, 1 = all half-odd, -1 = mixed or non-half-integral.
int congruence_class(const std::vector<Rat>& v) {
    int cls = -2;
    for (const Rat& e : v) {
        int c;
        if (e.get_den() == 1)
            c = 0;
        else if (Rat(e * 2).get_den() == 1)
            c = 1;
        else
            return -1;
        if (cls == -2)
            cls = c;
        else if (cls != c)
            return -1;
    }
    return cls == -2 ? 0 : cls;
}

std::vector<Weight> angular_weights(int n, int two_mu, int l) {
    std::vector<Weight> out;
    if (two_mu == 0) {
        std::vector<Rat> e(n, Rat(0));
        e[0] = l;
        out.push_back(Weight{Series::D, e});
    } else {
        for (int sg : {1, -1}) {
            std::vector<Rat> e(n, rat(1, 2));
            e[0] = Rat(l) + rat(1, 2);
            e[n - 1] = rat(sg, 2);
            out.push_back(Weight{Series::D, e});
        }
    }
    return out;
}

} // namespace

std::string weight_str(const Weight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.entries.size(); ++i) {
        if (i) s += ", ";
        s += rat_str(w.entries[i]);
    }
    return s + ")";
}

long long weyl_dimension(const Weight& w) {
    if (w.series == Series::G)
        throw UnsupportedRep("no dimension formula for the noncompact series");
    const int n = static_cast<int>(w.entries.size());
    if (n < 1) throw NonDominant("empty weight");
    if (congruence_class(w.entries) < 0)
        throw NonDominant("entries not all integral or all half-odd: " + weight_str(w));
    for (int i = 0; i + 2 < n; ++i)
        if (w.entries[i] < w.entries[i + 1]) throw NonDominant("not dominant: " + weight_str(w));
    if (w.series == Series::B) {
        if (n >= 2 && w.entries[n - 2] < w.entries[n - 1])
            throw NonDominant("not dominant: " + weight_str(w));
        if (w.entries[n - 1] < 0) throw NonDominant("not dominant: " + weight_str(w));
    } else if (n >= 2) {
        Rat last = w.entries[n - 1] < 0 ? Rat(-w.entries[n - 1]) : w.entries[n - 1];
        if (w.entries[n - 2] < last) throw NonDominant("not dominant: " + weight_str(w));
    }

    std::vector<std::vector<Rat>> roots;
    auto unit = [&](int i) {
        std::vector<Rat> v(n, Rat(0));
        v[i] = 1;
        return v;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto d = unit(i);
            d[j] = -1;
            roots.push_back(d);
            auto s = unit(i);
            s[j] = 1;
            roots.push_back(s);
        }
    if (w.series == Series::B)
        for (int i = 0; i < n; ++i) roots.push_back(unit(i));

    std::vector<Rat> rho(n);
    for (int i = 0; i < n; ++i)
        rho[i] = w.series == Series::B ? rat(2 * (n - i) - 1, 2) : Rat(n - i - 1);

    Rat num = 1, den = 1;
    for (const auto& al : roots) {
        Rat a = 0, b = 0;
        for (int i = 0; i < n; ++i) {
            a += (w.entries[i] + rho[i]) * al[i];
            b += rho[i] * al[i];
        }
        num *= a;
        den *= b;
    }
    Rat dim = num / den;
    if (dim.get_den() != 1 || !(dim > 0))
        throw Error("Weyl dimension is not a positive integer for " + weight_str(w));
    return static_cast<long long>(dim.get_num().get_si());
}

std::vector<Weight> branch_B_to_D(const Weight& lambda) {
    if (lambda.series != Series::B)
        throw NonDominant("branching expects an odd-series weight");
    (void)weyl_dimension(lambda); // validates dominance and congruence
    const int n = static_cast<int>(lambda.entries.size());
    std::vector<Weight> out;
    std::vector<Rat> m(n);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(Weight{Series::D, m});
            return;
        }
        Rat hi = lambda.entries[i];
        Rat lo = i + 1 < n ? lambda.entries[i + 1] : Rat(-lambda.entries[n - 1]);
        for (Rat v = lo; v <= hi; v += 1) {
            m[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

KTypeTable k_type_table(const ProblemConfig& cfg, int lmax) {
    KTypeTable t;
    const int n = cfg.n;
    const Rat mu = cfg.mu();
    t.g_weight.series = Series::G;
    t.g_weight.entries.assign(n + 1, mu);
    t.g_weight.entries[0] = -(Rat(n) + mu - rat(1, 2));
    for (int l = 0; l <= lmax; ++l) {
        KTypeRow row;
        row.l = l;
        row.spin2 = -(Rat(l) + mu + rat(2 * n - 3, 2)) - 1;
        row.so_odd.series = Series::B;
        row.so_odd.entries.assign(n, mu);
        row.so_odd.entries[0] = Rat(l) + mu;
        row.dim = weyl_dimension(row.so_odd);
        t.rows.push_back(std::move(row));
    }
    return t;
}

VerificationReport verify_decompositions(const ProblemConfig& cfg, int imax) {
    VerificationReport rep;
    const int n = cfg.n;
    const Rat mu = cfg.mu();

    auto add = [&](const std::string& id, const std::string& anchor, bool okf,
                   const std::string& witness, long long ms) {
        ReportItem it;
        it.suite = "reps";
        it.id = id;
        it.anchor = anchor;
        it.strategy = "exact-normal-form";
        it.status = okf ? Status::pass : Status::fail;
        it.witness = witness;
        it.residual = okf ? "0" : "nonzero";
        it.millis = ms;
        rep.add(std::move(it));
    };

    for (int I = 0; I <= imax; ++I) {
        std::string is = std::to_string(I);
        Weight top{Series::B, std::vector<Rat>(n, mu)};
        top.entries[0] = Rat(I) + mu;
        long long lhs = weyl_dimension(top);

        std::vector<Weight> want;
        for (int l = 0; l <= I; ++l) {
            auto aw = angular_weights(n, cfg.two_mu, l);
            want.insert(want.end(), aw.begin(), aw.end());
        }
        std::sort(want.begin(), want.end());

        {
            auto t0 = Clock::now();
            long long rhs = 0;
            std::string sum_str;
            for (const Weight& w : want) {
                long long d = weyl_dimension(w);
                rhs += d;
                sum_str += (sum_str.empty() ? "" : "+") + std::to_string(d);
            }
            add("dim I=" + is, "level dimension equals the sum of the angular dimensions",
                lhs == rhs, std::to_string(lhs) + " = " + sum_str, ms_since(t0));
        }

        {
            auto t0 = Clock::now();
            std::vector<Weight> got = branch_B_to_D(top);
            std::sort(got.begin(), got.end());
            bool okb = got == want;
            add("branch I=" + is,
                "restriction to the even subalgebra is the expected multiplicity-free multiset",
                okb, okb ? std::to_string(got.size()) + " summands" : "multiset differs",
                ms_since(t0));
        }

        {
            auto t0 = Clock::now();
            std::vector<std::vector<Rat>> cands;
            std::vector<Rat> cur(n);
            Rat start = cfg.two_mu == 0 ? Rat(0) : rat(1, 2);
            std::function<void(int, Rat)> gen = [&](int i, Rat hi) {
                if (i == n) {
                    cands.push_back(cur);
                    return;
                }
                for (Rat v = start; v <= hi; v += 1) {
                    cur[i] = v;
                    gen(i + 1, v);
                }
            };
            gen(0, Rat(imax + 1));
            int matches = 0;
            bool canonical = false;
            for (const auto& e : cands) {
                Weight w{Series::B, e};
                std::vector<Weight> br = branch_B_to_D(w);
                std::sort(br.begin(), br.end());
                if (br == want) {
                    ++matches;
                    if (w == top) canonical = true;
                }
            }
            add("unique I=" + is,
                "exactly one dominant weight reproduces the branching multiset", matches == 1 && canonical,
                std::to_string(matches) + " of " + std::to_string(cands.size()) + " candidates",
                ms_since(t0));
        }

        {
            auto t0 = Clock::now();
            long long acc = 0;
            int sectors = 0;
            for (int k = 1; k <= I + 1; ++k) {
                int l = I + 1 - k;
                ++sectors;
                for (const Weight& w : angular_weights(n, cfg.two_mu, l))
                    acc += weyl_dimension(w);
            }
            add("degeneracy I=" + is,
                "the radial sectors with k+l = I+1 carry the level dimension",
                sectors == I + 1 && acc == lhs,
                std::to_string(sectors) + " sectors, total " + std::to_string(acc),
                ms_since(t0));
        }
    }

    {
        auto t0 = Clock::now();
        KTypeTable kt = k_type_table(cfg, imax);
        bool okk = true;
        std::string why;
        for (std::size_t i = 0; i < kt.rows.size(); ++i) {
            if (kt.rows[i].dim <= 0) {
                okk = false;
                why = "nonpositive dimension at l=" + std::to_string(kt.rows[i].l);
                break;
            }
            if (i > 0 && kt.rows[i].spin2 - kt.rows[i - 1].spin2 != -1) {
                okk = false;
                why = "Spin(2) step is not -1 at l=" + std::to_string(kt.rows[i].l);
                break;
            }
        }
        add("k-types", "Spin(2) weights descend by exactly one per angular level", okk,
            okk ? "g-weight " + weight_str(kt.g_weight) : why, ms_since(t0));
    }
    return rep;
}

VerificationReport abstract_algebra_checks(const ProblemConfig& cfg) {
    VerificationReport rep;
    const int n = cfg.n;
    const int m = 2 * n + 3;
    auto pos = [](int A) { return A + 1; };
    auto eta = [](int A) { return (A == -1 || A == 0) ? 1 : -1; };
    auto irat = [](long k) { return QVal::rational(GaussRat(Rat(0), Rat(k))); };

    std::map<std::pair<int, int>, Mat<QVal>> basis;
    for (int A = -1; A <= 2 * n + 1; ++A)
        for (int B = A + 1; B <= 2 * n + 1; ++B) {
            Mat<QVal> M(m, m);
            M(pos(A), pos(B)) = irat(-eta(B));
            M(pos(B), pos(A)) = irat(eta(A));
            basis.emplace(std::make_pair(A, B), std::move(M));
        }
    auto Mof = [&](int X, int Y) -> Mat<QVal> {
        if (X == Y) return Mat<QVal>(m, m);
        if (X < Y) return basis.at({X, Y});
        return -basis.at({Y, X});
    };

    auto add = [&](const std::string& id, const std::string& anchor, bool okf,
                   const std::string& witness, long long ms) {
        ReportItem it;
        it.suite = "abstract";
        it.id = id;
        it.anchor = anchor;
        it.strategy = "exact-normal-form";
        it.status = okf ? Status::pass : Status::fail;
        it.witness = witness;
        it.residual = okf ? "0" : "nonzero";
        it.millis = ms;
        rep.add(std::move(it));
    };

    {
        auto t0 = Clock::now();
        long want = static_cast<long>(2 * n + 3) * (2 * n + 2) / 2;
        add("dimension", "the antisymmetric generators span (2n+3)(2n+2)/2 directions",
            static_cast<long>(basis.size()) == want,
            std::to_string(basis.size()) + " basis elements", ms_since(t0));
    }

    {
        auto t0 = Clock::now();
        bool okb = true;
        std::string wb;
        long npairs = 0;
        for (auto it1 = basis.begin(); it1 != basis.end() && okb; ++it1)
            for (auto it2 = it1; it2 != basis.end() && okb; ++it2) {
                ++npairs;
                const auto [A, B] = it1->first;
                const auto [C, Dp] = it2->first;
                Mat<QVal> lhs = commutator(it1->second, it2->second);
                Mat<QVal> rhs(m, m);
                auto term = [&](int u, int v, int X, int Y, int sign) {
                    if (u == v) rhs += Mof(X, Y).scaled(irat(sign * eta(u)));
                };
                term(A, C, B, Dp, 1);
                term(B, Dp, A, C, 1);
                term(A, Dp, B, C, -1);
                term(B, C, A, Dp, -1);
                if (lhs != rhs) {
                    okb = false;
                    wb = "[M(" + std::to_string(A) + "," + std::to_string(B) + "), M(" +
                         std::to_string(C) + "," + std::to_string(Dp) + ")]";
                }
            }
        add("bracket-table",
            "defining-matrix commutators close on the metric contraction pattern", okb,
            okb ? std::to_string(npairs) + " pairs" : wb, ms_since(t0));
    }

    auto cart_pair = [](int i) {
        return i == 0 ? std::pair<int, int>(-1, 0) : std::pair<int, int>(2 * i - 1, 2 * i);
    };
    std::vector<Mat<QVal>> H;
    H.push_back(Mof(-1, 0));
    for (int j = 1; j <= n; ++j) H.push_back(-Mof(2 * j - 1, 2 * j));

    struct RootVec {
        std::vector<Rat> alpha;
        Mat<QVal> E;
    };
    std::vector<RootVec> roots;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    auto [ai, bi] = cart_pair(i);
                    auto [aj, bj] = cart_pair(j);
                    Mat<QVal> E = Mof(ai, aj) + Mof(bi, aj).scaled(irat(si)) +
                                  Mof(ai, bj).scaled(irat(sj)) -
                                  Mof(bi, bj).scaled(QVal::rational(GaussRat(Rat(si * sj))));
                    E = E.scaled(QVal::rational(GaussRat(rat(1, 2))));
                    std::vector<Rat> al(n + 1, Rat(0));
                    al[i] = si;
                    al[j] = sj;
                    roots.push_back({std::move(al), std::move(E)});
                }
    const QVal inv_sqrt2(GaussRat(0), GaussRat(rat(1, 2)), Rat(2));
    for (int i = 0; i <= n; ++i)
        for (int si : {1, -1}) {
            auto [ai, bi] = cart_pair(i);
            Mat<QVal> E =
                (Mof(ai, 2 * n + 1) + Mof(bi, 2 * n + 1).scaled(irat(si))).scaled(inv_sqrt2);
            std::vector<Rat> al(n + 1, Rat(0));
            al[i] = si;
            roots.push_back({std::move(al), std::move(E)});
        }

    for (const RootVec& rv : roots) {
        auto t0 = Clock::now();
        bool okr = !rv.E.is_zero();
        std::string wr = okr ? "" : "zero root vector";
        for (int i = 0; i <= n && okr; ++i) {
            if (commutator(H[i], rv.E) != rv.E.scaled(QVal::rational(GaussRat(rv.alpha[i])))) {
                okr = false;
                wr = "H_" + std::to_string(i) + " action differs";
            }
        }
        add("root " + weight_str(Weight{Series::G, rv.alpha}),
            "the Cartan basis acts on each root vector by its root", okr, wr, ms_since(t0));
    }

    {
        const Mat<QVal>& H0 = H[0];
        for (int si : {1, -1}) {
            auto t0 = Clock::now();
            Mat<QVal> E = (Mof(-1, 2 * n + 1) + Mof(0, 2 * n + 1).scaled(irat(si)))
                              .scaled(inv_sqrt2);
            bool okl = commutator(H0, E) == E.scaled(QVal::rational(GaussRat(Rat(si))));
            add(std::string("ladder E") + (si > 0 ? "+" : "-"),
                "the Spin(2) generator shifts the ladder pair by plus or minus one", okl, "",
                ms_since(t0));
        }
    }

    {
        auto t0 = Clock::now();
        SplitMix64 rng(cfg.seed ^ 0x6a61636f62ULL);
        std::vector<const Mat<QVal>*> blist;
        for (const auto& kv : basis) blist.push_back(&kv.second);
        bool okj = true;
        std::string wj;
        for (int t = 0; t < 30 && okj; ++t) {
            const Mat<QVal>& X = *blist[rng.below(blist.size())];
            const Mat<QVal>& Y = *blist[rng.below(blist.size())];
            const Mat<QVal>& Z = *blist[rng.below(blist.size())];
            Mat<QVal> s = commutator(X, commutator(Y, Z)) + commutator(Y, commutator(Z, X)) +
                          commutator(Z, commutator(X, Y));
            if (!s.is_zero()) {
                okj = false;
                wj = "triple " + std::to_string(t);
            }
        }
        add("jacobi", "thirty seeded generator triples satisfy the Jacobi identity", okj,
            okj ? "30 triples" : wj, ms_since(t0));
    }
    return rep;
}

} // namespace micz
