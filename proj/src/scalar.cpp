#include "micz/scalar.hpp"

#include <cassert>
#include <sstream>

#include "micz/errors.hpp"

namespace micz {

RationalPoint::RationalPoint(std::vector<Rat> coords)
    : D(static_cast<int>(coords.size())), x(std::move(coords)), s(0), rho(0) {
    assert(D >= 1 && D <= kMaxVars);
    for (const Rat& c : x) s += c * c;
    rho = s - x[D - 1] * x[D - 1];
    pow_.resize(D);
    for (int a = 0; a < D; ++a) {
        pow_[a].push_back(Rat(1));
        pow_[a].push_back(x[a]);
    }
}

const Rat& RationalPoint::power(int var, int e) const {
    assert(var >= 0 && var < D && e >= 0);
    auto& cache = pow_[var];
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * x[var]);
    return cache[e];
}

std::vector<double> RationalPoint::coords_double() const {
    std::vector<double> out(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) out[a] = rat_double(x[a]);
    return out;
}

RationalPoint random_point(int D, SplitMix64& rng) {
    std::vector<Rat> coords(D);
    for (int a = 0; a < D; ++a) {
        long num = 1 + static_cast<long>(rng.below(9));
        long den = 1 + static_cast<long>(rng.below(3));
        if (rng.below(2)) num = -num;
        coords[a] = rat(num, den);
    }
    return RationalPoint(std::move(coords));
}

RationalPoint random_sphere_point(int D, SplitMix64& rng) {
    for (;;) {
        std::vector<Rat> u(D - 1);
        for (Rat& v : u) {
            long num = 1 + static_cast<long>(rng.below(9));
            long den = 1 + static_cast<long>(rng.below(3));
            if (rng.below(2)) num = -num;
            v = rat(num, den);
        }
        Rat R = rat(1 + static_cast<long>(rng.below(9)), 1 + static_cast<long>(rng.below(2)));
        Rat q(0);
        for (const Rat& v : u) q += v * v;
        Rat w = Rat(1) + q;
        std::vector<Rat> x(D);
        x[0] = R * (Rat(1) - q) / w;
        for (int i = 1; i < D; ++i) x[i] = Rat(2) * R * u[i - 1] / w;
        bool ok = true;
        for (const Rat& xi : x)
            if (xi == 0) ok = false;
        if (!ok) continue;
        if (x[D - 1] == R || x[D - 1] == -R) continue;
        return RationalPoint(std::move(x));
    }
}

std::string point_str(const RationalPoint& p) {
    std::string out = "(";
    for (int a = 0; a < p.D; ++a) {
        if (a) out += ", ";
        out += rat_str(p.x[a]);
    }
    return out + ")";
}

QVal::QVal(GaussRat a_, GaussRat b_, Rat s_) : a(std::move(a_)), b(std::move(b_)), s(std::move(s_)) {
    assert(s >= 0);
    if (s == 0) {
        b = GaussRat(0);
        return;
    }
    if (b.is_zero()) {
        s = 0;
        return;
    }
    Rat root;
    if (rat_is_perfect_square(s, root)) {
        a += b * GaussRat(root);
        b = GaussRat(0);
        s = 0;
    }
}

namespace {
Rat align_surd(const Rat& s1, const Rat& s2) {
    if (s1 == 0) return s2;
    if (s2 == 0) return s1;
    if (s1 != s2) throw Error("QVal arithmetic across different surds");
    return s1;
}
} // namespace

QVal QVal::operator-() const { return QVal(-a, -b, s); }

QVal QVal::operator+(const QVal& o) const { return QVal(a + o.a, b + o.b, align_surd(s, o.s)); }

QVal QVal::operator-(const QVal& o) const { return QVal(a - o.a, b - o.b, align_surd(s, o.s)); }

QVal QVal::operator*(const QVal& o) const {
    Rat sa = align_surd(s, o.s);
    return QVal(a * o.a + b * o.b * GaussRat(sa), a * o.b + b * o.a, sa);
}

QVal QVal::scaled(const GaussRat& c) const { return QVal(a * c, b * c, s); }

bool QVal::operator==(const QVal& o) const { return (*this - o).is_zero(); }

std::string QVal::str() const {
    if (s == 0) return gauss_str(a);
    std::ostringstream os;
    os << gauss_str(a) << " + (" << gauss_str(b) << ")*sqrt(" << rat_str(s) << ")";
    return os.str();
}

// Per-dimension registry of monic denominator bases. Ids 0 and 1 are fixed
// to |x|^2 and rho; everything else is appended on first use by inverse().
namespace {
class DenRegistry {
public:
    static DenRegistry& instance() {
        static DenRegistry reg;
        return reg;
    }

    const std::vector<Poly>& bases(int D) {
        ensure(D);
        return bases_[D];
    }

    int find_or_add(int D, const Poly& monic) {
        ensure(D);
        auto& v = bases_[D];
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == monic) return static_cast<int>(i);
        v.push_back(monic);
        return static_cast<int>(v.size() - 1);
    }

private:
    std::map<int, std::vector<Poly>> bases_;

    void ensure(int D) {
        auto it = bases_.find(D);
        if (it != bases_.end()) return;
        bases_[D] = {poly_s(D), poly_rho(D)};
    }
};
} // namespace

const Poly& ScalarExpr::base_poly(int D, int id) {
    const auto& v = DenRegistry::instance().bases(D);
    assert(id >= 0 && id < static_cast<int>(v.size()));
    return v[static_cast<std::size_t>(id)];
}

ScalarExpr::ScalarExpr(int D, Poly f, Poly g, DenMap den)
    : D_(D), f_(std::move(f)), g_(std::move(g)), den_(std::move(den)) {
    reduce();
}

void ScalarExpr::reduce() {
    if (f_.is_zero() && g_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        const Poly& b = base_poly(D_, it->first);
        while (it->second > 0) {
            Poly qf, qg;
            if (!f_.divide_exact(b, qf) || !g_.divide_exact(b, qg)) break;
            f_ = std::move(qf);
            g_ = std::move(qg);
            --it->second;
        }
        it = (it->second == 0) ? den_.erase(it) : std::next(it);
    }
}

Poly ScalarExpr::den_poly() const {
    Poly d(GaussRat(1));
    for (const auto& [id, e] : den_)
        for (int k = 0; k < e; ++k) d = d * base_poly(D_, id);
    return d;
}

bool ScalarExpr::r_laurent() const {
    for (const auto& [id, e] : den_)
        if (id != 0) return false;
    return true;
}

ScalarExpr ScalarExpr::operator-() const { return ScalarExpr(D_, -f_, -g_, den_); }

ScalarExpr ScalarExpr::operator+(const ScalarExpr& o) const {
    assert(D_ == o.D_ || is_zero() || o.is_zero());
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    DenMap merged = den_;
    for (const auto& [id, e] : o.den_) {
        auto [it, fresh] = merged.try_emplace(id, e);
        if (!fresh) it->second = std::max(it->second, e);
    }
    Poly m1(GaussRat(1)), m2(GaussRat(1));
    for (const auto& [id, e] : merged) {
        auto it1 = den_.find(id);
        auto it2 = o.den_.find(id);
        int d1 = e - (it1 == den_.end() ? 0 : it1->second);
        int d2 = e - (it2 == o.den_.end() ? 0 : it2->second);
        const Poly& b = base_poly(D_, id);
        for (int k = 0; k < d1; ++k) m1 = m1 * b;
        for (int k = 0; k < d2; ++k) m2 = m2 * b;
    }
    return ScalarExpr(D_, f_ * m1 + o.f_ * m2, g_ * m1 + o.g_ * m2, std::move(merged));
}

ScalarExpr ScalarExpr::operator-(const ScalarExpr& o) const { return *this + (-o); }

ScalarExpr ScalarExpr::operator*(const ScalarExpr& o) const {
    assert(D_ == o.D_ || is_zero() || o.is_zero());
    if (is_zero()) return *this;
    if (o.is_zero()) return o;
    DenMap merged = den_;
    for (const auto& [id, e] : o.den_) merged[id] += e;
    Poly s = poly_s(D_);
    return ScalarExpr(D_, f_ * o.f_ + (g_ * o.g_) * s, f_ * o.g_ + g_ * o.f_, std::move(merged));
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
    *this = *this + o;
    return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) {
    *this = *this - o;
    return *this;
}

ScalarExpr ScalarExpr::scaled(const GaussRat& c) const {
    if (c.is_zero()) return ScalarExpr(D_);
    return ScalarExpr(D_, f_.scaled(c), g_.scaled(c), den_);
}

ScalarExpr operator*(const GaussRat& c, const ScalarExpr& e) { return e.scaled(c); }

ScalarExpr ScalarExpr::inverse() const {
    Poly norm = f_ * f_ - (g_ * g_) * poly_s(D_);
    if (norm.is_zero())
        throw DivisionByZeroExpr("inverse of zero scalar expression");
    // 1/e = den * (f - g r) / (f^2 - g^2 |x|^2); factor the norm over the
    // registry, registering whatever monic cofactor is left.
    DenMap newden;
    const auto& bases = DenRegistry::instance().bases(D_);
    for (std::size_t id = 0; id < bases.size(); ++id) {
        Poly q;
        while (norm.divide_exact(bases[id], q)) {
            norm = std::move(q);
            ++newden[static_cast<int>(id)];
        }
    }
    GaussRat lc = norm.leading_coeff();
    if (!norm.is_constant()) {
        Poly monic = norm.scaled(GaussRat(1) / lc);
        int id = DenRegistry::instance().find_or_add(D_, monic);
        ++newden[id];
    }
    GaussRat inv_lc = GaussRat(1) / lc;
    Poly b = den_poly();
    return ScalarExpr(D_, (b * f_).scaled(inv_lc), (b * g_).scaled(-inv_lc), std::move(newden));
}

ScalarExpr ScalarExpr::conj() const {
    auto conj_poly = [](const Poly& p) {
        Poly out;
        for (const auto& [m, c] : p.terms()) out += Poly::term(m, c.conj());
        return out;
    };
    DenMap newden;
    for (const auto& [id, e] : den_) {
        const Poly& b = base_poly(D_, id);
        Poly bc = conj_poly(b);
        int nid = (bc == b) ? id : DenRegistry::instance().find_or_add(D_, bc);
        newden[nid] += e;
    }
    return ScalarExpr(D_, conj_poly(f_), conj_poly(g_), std::move(newden));
}

ScalarExpr ScalarExpr::derivative(int var) const {
    assert(var >= 0 && var < D_);
    if (is_zero()) return *this;
    // Quotient rule over the factored denominator: bump every exponent by one
    // and assemble n' * prod(b) - n * sum_i e_i b_i' * prod_{j != i}(b_j).
    Poly B(GaussRat(1));
    for (const auto& [id, e] : den_) B = B * base_poly(D_, id);
    Poly nf = f_.derivative(var) * B;
    Poly ng = g_.derivative(var) * B;
    for (const auto& [id, e] : den_) {
        Poly c = Poly(GaussRat(e)) * base_poly(D_, id).derivative(var);
        for (const auto& [jd, je] : den_)
            if (jd != id) c = c * base_poly(D_, jd);
        nf -= f_ * c;
        ng -= g_ * c;
    }
    DenMap den1 = den_;
    for (auto& [id, e] : den1) ++e;
    ScalarExpr rational_part(D_, std::move(nf), std::move(ng), std::move(den1));
    // Chain term from dr/dx_var = x_var r / |x|^2 acting on the g r piece.
    DenMap dens = den_;
    ++dens[0];
    ScalarExpr chain(D_, g_ * Poly::variable(var), Poly(), std::move(dens));
    ScalarExpr chain_r = chain * ScalarExpr::r(D_);
    return rational_part + chain_r;
}

ScalarExpr ScalarExpr::normalized() const { return ScalarExpr(D_, f_, g_, den_); }

QVal ScalarExpr::eval(const RationalPoint& p) const {
    if (p.D != D_) throw DimMismatch("evaluation point dimension mismatch");
    GaussRat denv(1);
    for (const auto& [id, e] : den_) {
        GaussRat bv = base_poly(D_, id).eval(p);
        for (int k = 0; k < e; ++k) denv *= bv;
    }
    if (denv.is_zero()) throw PoleAtPoint("denominator vanishes at evaluation point");
    GaussRat inv = GaussRat(1) / denv;
    return QVal(f_.eval(p) * inv, g_.eval(p) * inv, p.s);
}

namespace {
std::complex<double> poly_eval_d(const Poly& p, const std::vector<double>& coords) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [m, c] : p.terms()) {
        double t = 1.0;
        for (std::size_t v = 0; v < coords.size(); ++v)
            for (int k = 0; k < mono_exp(m, static_cast<int>(v)); ++k) t *= coords[v];
        acc += std::complex<double>(rat_double(c.re), rat_double(c.im)) * t;
    }
    return acc;
}
} // namespace

std::complex<double> ScalarExpr::eval_double(const std::vector<double>& coords, double r) const {
    std::complex<double> denv(1.0, 0.0);
    for (const auto& [id, e] : den_) {
        std::complex<double> bv = poly_eval_d(base_poly(D_, id), coords);
        for (int k = 0; k < e; ++k) denv *= bv;
    }
    return (poly_eval_d(f_, coords) + poly_eval_d(g_, coords) * r) / denv;
}

bool ScalarExpr::operator==(const ScalarExpr& o) const {
    if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
    if (D_ != o.D_) return false;
    if (den_ == o.den_) return f_ == o.f_ && g_ == o.g_;
    Poly d1 = den_poly(), d2 = o.den_poly();
    return f_ * d2 == o.f_ * d1 && g_ * d2 == o.g_ * d1;
}

std::string ScalarExpr::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool need_plus = false;
    if (!f_.is_zero()) {
        os << f_.str(D_);
        need_plus = true;
    }
    if (!g_.is_zero()) {
        if (need_plus) os << " + ";
        os << "(" << g_.str(D_) << ")*r";
    }
    if (!den_.empty()) {
        std::ostringstream ds;
        for (const auto& [id, e] : den_) {
            if (ds.tellp() > 0) ds << "*";
            ds << (id == 0 ? "s" : id == 1 ? "rho" : "q" + std::to_string(id));
            if (e > 1) ds << "^" << e;
        }
        return "(" + os.str() + ") / (" + ds.str() + ")";
    }
    return os.str();
}

} // namespace micz
