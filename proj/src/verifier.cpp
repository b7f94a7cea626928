#include "scalelimit/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "scalelimit/embedded.hpp"
#include "scalelimit/errors.hpp"
#include "scalelimit/kvfile.hpp"

namespace scalelimit {

std::vector<double> default_j_ladder() {
    std::vector<double> js;
    for (int k = 2; k <= 6; ++k) js.push_back(std::pow(10.0, k));
    return js;
}

std::vector<double> normal_j_ladder() {
    std::vector<double> js;
    for (int k = 4; k <= 16; ++k) js.push_back(std::pow(10.0, k / 2.0));
    return js;
}

namespace {

using cplx = std::complex<double>;

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// Least-squares slope of log x against log j, reported as a decay exponent.
double measured_decay(const std::vector<double>& js, const std::vector<double>& xs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(js.size());
    for (std::size_t i = 0; i < js.size(); ++i) {
        double lx = std::log(js[i]), ly = std::log(xs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Floating-point evaluation of the orbit and of the gap, independent of the series arithmetic.
struct NumericOrbit {
    const DomainSpec& spec;
    const OrbitSpec& orbit;
    const OrbitSpec& gap_orbit; // orbit defining eps (differs when rows use a restricted point)
    NumericPoly rho;

    NumericOrbit(const DomainSpec& s, const OrbitSpec& o) : NumericOrbit(s, o, o) {}
    NumericOrbit(const DomainSpec& s, const OrbitSpec& o, const OrbitSpec& g) : spec(s), orbit(o), gap_orbit(g), rho(s.rho()) {}

    std::vector<cplx> alpha(double j) const {
        std::vector<cplx> a;
        for (const auto& x : orbit.alpha) a.push_back(x.eval(j));
        return a;
    }
    // rho is affine in u with slope 1, so eps = -rho(alpha, Re beta, Im beta).
    double eps(double j) const {
        cplx b = gap_orbit.beta.eval(j);
        std::vector<cplx> a;
        for (const auto& x : gap_orbit.alpha) a.push_back(x.eval(j));
        return -rho.eval(a, b.real(), b.imag());
    }
    // |alpha_k| (eps / |alpha_k|^{2 m_k})^{1/e}
    double tau(double j, int k, int mk, int e) const {
        double a = std::abs(alpha(j)[static_cast<std::size_t>(k)]);
        return a * std::pow(eps(j) / std::pow(a, 2 * mk), 1.0 / e);
    }
};

bool profile_vanishes(const TrigPoly& g, const JSeries& alpha) {
    if (g.is_zero()) return true;
    if (auto omega = ray_direction(alpha)) return g.eval_exact(*omega).is_zero();
    double scale = 0;
    for (const auto& [k, c] : g.coeffs()) scale += std::sqrt(c.abs2().get_d());
    return std::abs(g.eval(ray_angle(alpha))) < 1e-12 * scale;
}

std::string profile_text(const TrigPoly& g, const JSeries& alpha) {
    if (auto omega = ray_direction(alpha)) return to_string(g.eval_exact(*omega));
    return fmt_double(g.eval(ray_angle(alpha)).real());
}

std::string pq_label(const std::vector<int>& p, const std::vector<int>& q) {
    std::string s = "p=(";
    for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
    s += ") q=(";
    for (std::size_t k = 0; k < q.size(); ++k) s += (k ? "," : "") + std::to_string(q[k]);
    return s + ")";
}

// Exact decay of eps^{-1} D(alpha) prod tau_k^{cnt_k}; nullopt when D(alpha) vanishes identically.
std::optional<Rational> exact_decay(const RPoly& D, const std::vector<JSeries>& alpha, const std::vector<int>& cnt,
                                    const std::vector<JSeries>& tau, const JSeries& eps, JSeries* value = nullptr) {
    JSeries d = eval_series(D, alpha);
    if (value) *value = d;
    if (d.is_zero()) return std::nullopt;
    Rational r = *d.order() - *eps.order();
    for (std::size_t k = 0; k < cnt.size(); ++k) r += cnt[k] * *tau[k].order();
    r.canonicalize();
    return r;
}

struct RowInput {
    std::string label, kind;
    RPoly D;
    std::vector<int> cnt;
    std::optional<Rational> predicted;
};

// Fills exact and measured columns; tau_num(j, k) is the floating-point scaling factor.
template <class TauNum>
RateRow finish_row(const RowInput& in, const NumericOrbit& num, const std::vector<JSeries>& alpha_series,
                   const std::vector<JSeries>& tau, const JSeries& eps, const std::vector<double>& js,
                   const TauNum& tau_num) {
    RateRow row;
    row.label = in.label;
    row.kind = in.kind;
    row.predicted = in.predicted;
    row.exact = exact_decay(in.D, alpha_series, in.cnt, tau, eps);
    if (!row.exact) {
        row.kind = "zero";
        row.measured = std::numeric_limits<double>::quiet_NaN();
        row.pass = !row.predicted;
        return row;
    }
    NumericPoly dn(in.D);
    std::vector<double> xs;
    for (double j : js) {
        std::vector<cplx> a = num.alpha(j);
        double x = std::abs(dn.eval_complex(a)) / num.eps(j);
        for (std::size_t k = 0; k < in.cnt.size(); ++k)
            if (in.cnt[k]) x *= std::pow(tau_num(j, static_cast<int>(k)), in.cnt[k]);
        xs.push_back(x);
    }
    row.measured = measured_decay(js, xs);
    bool kind_ok = true;
    if (row.kind == "decay") kind_ok = sgn(*row.exact) > 0;
    if (row.kind == "bounded" || row.kind == "limit") kind_ok = sgn(*row.exact) == 0;
    row.pass = row.predicted && *row.predicted == *row.exact && kind_ok &&
               std::abs(row.measured - row.exact->get_d()) <= 0.01;
    return row;
}

void finalize(RateReport& r) {
    r.pass = !r.rows.empty();
    for (const auto& row : r.rows) r.pass = r.pass && row.pass;
}

// All multi-indices with p_k <= pmax_k, q_k <= qmax_k.
void for_each_index(const std::vector<int>& pmax, const std::vector<int>& qmax,
                    const std::function<void(const std::vector<int>&, const std::vector<int>&)>& f) {
    const std::size_t n = pmax.size();
    std::vector<int> idx(2 * n, 0);
    for (;;) {
        f(std::vector<int>(idx.begin(), idx.begin() + static_cast<long>(n)),
          std::vector<int>(idx.begin() + static_cast<long>(n), idx.end()));
        std::size_t i = 0;
        for (; i < 2 * n; ++i) {
            int lim = i < n ? pmax[i] : qmax[i - n];
            if (++idx[i] <= lim) break;
            idx[i] = 0;
        }
        if (i == 2 * n) return;
    }
}

RPoly derivative(const RPoly& P, const std::vector<int>& p, const std::vector<int>& q) {
    RPoly d = P;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k]) d = d.diff_z(static_cast<int>(k), p[k]);
        if (q[k]) d = d.diff_zbar(static_cast<int>(k), q[k]);
    }
    return d;
}

// Shared hypothesis check for the uniformly tangential lemmas: all alpha_k nonzero,
// |alpha_k|^{2 m_k} of one common order A, and eps = o(A). Returns order(A).
Rational uniform_hypotheses(const DomainSpec& spec, const OrbitSpec& orbit, const JSeries& eps) {
    std::optional<Rational> ordA;
    for (int k = 0; k < spec.n; ++k) {
        const JSeries& a = orbit.alpha[static_cast<std::size_t>(k)];
        if (a.is_zero()) throw InputError("hypothesis fails: alpha_" + std::to_string(k + 1) + " is identically zero");
        Rational o = 2 * spec.weights.m[static_cast<std::size_t>(k)] * *a.order();
        o.canonicalize();
        if (ordA && *ordA != o)
            throw InputError("hypothesis fails: |alpha_k|^(2m_k) are not of one order (condition c)");
        ordA = o;
    }
    if (!(*eps.order() > *ordA)) throw InputError("hypothesis fails: eps is not o(|alpha_1|^(2m_1)) (condition b)");
    return *ordA;
}

std::vector<int> max_exponents(const RPoly& P, bool bar) {
    std::vector<int> mx(static_cast<std::size_t>(P.nvars()), 0);
    for (const auto& [m, c] : P.terms())
        for (int k = 0; k < P.nvars(); ++k)
            mx[static_cast<std::size_t>(k)] = std::max(mx[static_cast<std::size_t>(k)], bar ? m.b(k) : m.a(k));
    return mx;
}

// Decay predicted for eps^{-1} D^p Dbar^q Q(alpha) tau^{p+q} by the weight count, monomial by monomial:
// (wt - 1) ord A + (s/2 - 1) (ord eps - ord A), minimised over the monomials that survive.
std::optional<Rational> weight_prediction(const RPoly& Q, const std::vector<int>& p, const std::vector<int>& q,
                                          const std::vector<int>& m, const Rational& ordA, const Rational& ordEps) {
    std::optional<Rational> best;
    int s = 0;
    for (std::size_t k = 0; k < p.size(); ++k) s += p[k] + q[k];
    for (const auto& [mono, c] : Q.terms()) {
        if (mono.has_w()) continue;
        bool survives = true;
        for (std::size_t k = 0; k < p.size(); ++k)
            survives = survives && mono.a(static_cast<int>(k)) >= p[k] && mono.b(static_cast<int>(k)) >= q[k];
        if (!survives) continue;
        Rational e = (mono.weight(m) - 1) * ordA + (Rational(s, 2) - 1) * (ordEps - ordA);
        e.canonicalize();
        if (!best || e < *best) best = e;
    }
    return best;
}

RateReport weight_lemma(const std::string& name, const RPoly& Q, const DomainSpec& spec, const OrbitSpec& orbit,
                        const std::vector<double>& js) {
    RateReport rep;
    rep.lemma = name;
    if (Q.is_zero()) {
        rep.notes.push_back("polynomial is zero; every row vanishes identically");
        return rep;
    }
    const JSeries eps = boundary_gap(spec, orbit);
    const Rational ordA = uniform_hypotheses(spec, orbit, eps);
    const Rational trunc = default_truncation(spec);
    TauVector tv = make_tau(spec, orbit, eps, TauMode::Formula3, {}, 0, nullptr, trunc);
    NumericOrbit num(spec, orbit);
    auto tau_num = [&](double j, int k) { return num.tau(j, k, spec.weights.m[static_cast<std::size_t>(k)], 2); };
    rep.notes.push_back("eps = " + to_string(eps));
    for (std::size_t k = 0; k < tv.tau.size(); ++k) rep.notes.push_back("tau_" + std::to_string(k + 1) + " = " + to_string(tv.tau[k]));
    for_each_index(max_exponents(Q, false), max_exponents(Q, true), [&](const std::vector<int>& p, const std::vector<int>& q) {
        int s = 0;
        std::vector<int> cnt(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) {
            cnt[k] = p[k] + q[k];
            s += cnt[k];
        }
        if (s < 2) return;
        RPoly D = derivative(Q, p, q);
        if (D.is_zero()) return;
        RowInput in{pq_label(p, q), s == 2 && name == "lemma32" ? "bounded" : "decay", D, cnt,
                    weight_prediction(Q, p, q, spec.weights.m, ordA, *eps.order())};
        rep.rows.push_back(finish_row(in, num, orbit.alpha, tv.tau, eps, js, tau_num));
    });
    finalize(rep);
    return rep;
}

// P restricted to its first variable.
RPoly first_variable_part(const DomainSpec& spec) {
    std::vector<int> rest;
    for (int k = 1; k < spec.n; ++k) rest.push_back(k);
    return rest.empty() ? spec.P : restrict_zero(spec.P, rest);
}

} // namespace

RateReport check_lemma32(const DomainSpec& spec, const OrbitSpec& orbit, const std::vector<double>& js) {
    return weight_lemma("lemma32", spec.P, spec, orbit, js);
}

RateReport check_lemma33(const DomainSpec& spec, const OrbitSpec& orbit, const std::vector<double>& js) {
    for (const auto& [m, c] : spec.R1.terms())
        if (!(m.weight(spec.weights.m) > 1))
            throw InputError("hypothesis fails: R1 monomial " + to_string(m) + " has weight <= 1");
    return weight_lemma("lemma33", spec.R1, spec, orbit, js);
}

RateReport check_lemma42(const DomainSpec& spec, const OrbitSpec& orbit, const std::vector<double>& js) {
    if (!is_corank_one(spec)) throw InputError("hypothesis fails: the model is neither planar nor corank-one");
    RPoly P1 = first_variable_part(spec);
    const int m = spec.weights.m[0];
    if (!is_weighted_homogeneous(P1, spec.weights.m) || P1.is_zero())
        throw InputError("hypothesis fails: P restricted to z1 is not homogeneous of degree 2m_1");
    const JSeries& a = orbit.alpha[0];
    if (a.is_zero()) throw InputError("hypothesis fails: alpha_1 is identically zero");
    const JSeries eps = boundary_gap(spec, orbit);
    const Rational ordA = 2 * m * *a.order();
    if (!(*eps.order() > ordA)) throw InputError("hypothesis fails: eps is not o(|alpha_1|^(2m))");
    Rational rho = *eps.order() - ordA;
    rho.canonicalize();

    RateReport rep;
    rep.lemma = "lemma42";
    const Rational trunc = default_truncation(spec);
    TauVector tv = make_tau(spec, orbit, eps, spec.n == 1 ? TauMode::Formula3 : TauMode::Formula4, {}, 0, nullptr, trunc);
    std::vector<JSeries> alpha1(static_cast<std::size_t>(spec.n));
    alpha1[0] = a;
    rep.notes.push_back("eps = " + to_string(eps) + ", tau_1 = " + to_string(tv.tau[0]));
    // Rows use the first-variable restriction evaluated at (alpha_1, 0, ..., 0); eps comes from the full orbit.
    OrbitSpec o1{alpha1, orbit.beta};
    NumericOrbit num1(spec, o1, orbit);
    auto tau_num = [&](double j, int) { return num1.tau(j, 0, m, 2); };
    for (int k = 3; k <= 2 * m; ++k)
        for (int l = 0; l <= k; ++l) {
            RPoly D = P1.diff_z(0, l).diff_zbar(0, k - l);
            if (D.is_zero()) continue;
            TrigPoly g = circle_profile(P1, l, k - l);
            std::optional<Rational> pred;
            if (!profile_vanishes(g, a)) {
                Rational e = (Rational(k, 2) - 1) * rho;
                e.canonicalize();
                pred = e;
            }
            std::vector<int> cnt(static_cast<std::size_t>(spec.n), 0);
            cnt[0] = k;
            RowInput in{"k=" + std::to_string(k) + " l=" + std::to_string(l), "decay", D, cnt, pred};
            RateRow row = finish_row(in, num1, alpha1, tv.tau, eps, js, [&](double j, int) { return tau_num(j, 0); });
            rep.rows.push_back(row);
        }
    // Second-order row: 4 d dbar P1 (alpha) eps^{-1} tau^2 tends to (2m)^2 g + g''.
    {
        RPoly D = laplacian(P1);
        std::vector<int> cnt(static_cast<std::size_t>(spec.n), 0);
        cnt[0] = 2;
        RowInput in{"k=2 laplacian", "limit", D, cnt, Rational(0)};
        RateRow row = finish_row(in, num1, alpha1, tv.tau, eps, js, [&](double j, int) { return tau_num(j, 0); });
        JSeries x = eval_series(D, alpha1) * inverse(eps, trunc) * tv.tau[0].pow(2);
        JLimit lim = limit(x);
        TrigPoly lp = laplacian_profile(P1);
        row.expected_value = profile_text(lp, a);
        row.limit_value = lim.kind == JLimit::Kind::Finite ? to_string(lim.value) : "diverges";
        row.pass = row.pass && row.limit_value == row.expected_value;
        rep.notes.push_back("(2m)^2 g + g'' = " + to_string(lp));
        rep.rows.push_back(row);
    }
    finalize(rep);
    return rep;
}

RateReport check_lemma52(const DomainSpec& spec, const OrbitSpec& orbit, int nu, const std::vector<double>& js) {
    if (spec.n != 1) throw InputError("hypothesis fails: order-2nu tangency needs n = 1");
    const int m = spec.weights.m[0];
    const JSeries eps = boundary_gap(spec, orbit);
    const JSeries& a = orbit.alpha[0];
    if (a.is_zero()) throw InputError("hypothesis fails: alpha is identically zero");
    const Rational ordA = 2 * m * *a.order();
    if (!(*eps.order() > ordA)) throw InputError("hypothesis fails: eps is not o(|alpha|^(2m))");
    TangencyOrderResult d = check_tangency_order(spec, orbit, eps, nu);
    if (!d.holds) throw InputError("hypothesis fails: the orbit is not tangential of order " + std::to_string(2 * nu));
    Rational rhoS = *eps.order() - ordA;
    rhoS.canonicalize();
    const Rational ord_a = *a.order();

    RateReport rep;
    rep.lemma = "lemma52";
    const Rational trunc = default_truncation(spec);
    TauVector tv = make_tau(spec, orbit, eps, TauMode::Formula5, {}, nu, nullptr, trunc);
    NumericOrbit num(spec, orbit);
    auto tau_num = [&](double j, int) { return num.tau(j, 0, m, 2 * nu); };
    rep.notes.push_back("eps = " + to_string(eps) + ", tau = " + to_string(tv.tau[0]));

    auto p_pred = [&](int l, int lp) -> std::optional<Rational> {
        if (l + lp > 2 * m) return std::nullopt;
        if (profile_vanishes(circle_profile(spec.P, l, lp), a)) return std::nullopt;
        Rational e = (Rational(l + lp, 2 * nu) - 1) * rhoS;
        e.canonicalize();
        return e;
    };
    auto r_pred = [&](int l, int lp) -> std::optional<Rational> {
        std::optional<Rational> best;
        for (const auto& [mono, c] : spec.R1.terms()) {
            if (mono.has_w() || mono.a(0) < l || mono.b(0) < lp) continue;
            Rational e = (mono.z_degree() - 2 * m) * ord_a + (Rational(l + lp, 2 * nu) - 1) * rhoS;
            e.canonicalize();
            if (!best || e < *best) best = e;
        }
        return best;
    };
    auto minopt = [](std::optional<Rational> x, const std::optional<Rational>& y) {
        if (!x) return y;
        if (y && *y < *x) return y;
        return x;
    };
    auto label = [](const std::string& item, int l, int lp) {
        return "(" + item + ") l=" + std::to_string(l) + " l'=" + std::to_string(lp);
    };
    auto add = [&](const std::string& item, int l, int lp, const RPoly& D, const std::string& kind,
                   std::optional<Rational> pred) {
        if (D.is_zero()) return;
        RowInput in{label(item, l, lp), kind, D, {l + lp}, pred};
        rep.rows.push_back(finish_row(in, num, orbit.alpha, tv.tau, eps, js, tau_num));
    };

    const RPoly PR = spec.P + spec.R1;
    for (int l = 1; l < 2 * nu; ++l)
        for (int lp = 1; l + lp < 2 * nu; ++lp)
            add("a", l, lp, PR.diff_z(0, l).diff_zbar(0, lp), "decay", minopt(p_pred(l, lp), r_pred(l, lp)));
    for (int s = 2 * nu + 1; s <= 2 * m; ++s)
        for (int l = 0; l <= s; ++l) add("b", l, s - l, spec.P.diff_z(0, l).diff_zbar(0, s - l), "decay", p_pred(l, s - l));
    int degR = 0;
    for (const auto& [mono, c] : spec.R1.terms()) degR = std::max(degR, mono.z_degree());
    if (degR == 0) rep.notes.push_back("R1 is zero; item (c) has no rows");
    for (int s = 2 * nu; s <= degR; ++s)
        for (int l = 0; l <= s; ++l) add("c", l, s - l, spec.R1.diff_z(0, l).diff_zbar(0, s - l), "decay", r_pred(l, s - l));
    for (int l = 0; l <= 2 * nu; ++l) {
        int lp = 2 * nu - l;
        RPoly D = spec.P.diff_z(0, l).diff_zbar(0, lp);
        bool witness = d.witness && d.witness->l == l && d.witness->lp == lp;
        std::optional<Rational> pred = p_pred(l, lp);
        if (!witness) {
            add("d", l, lp, D, "bounded", pred);
            continue;
        }
        RowInput in{label("d", l, lp) + " witness", "limit", D, {2 * nu}, pred};
        RateRow row = finish_row(in, num, orbit.alpha, tv.tau, eps, js, tau_num);
        JSeries x = eval_series(D, orbit.alpha) * inverse(eps, trunc) * tv.tau[0].pow(static_cast<unsigned>(2 * nu));
        JLimit lim = limit(x);
        row.limit_value = lim.kind == JLimit::Kind::Finite ? to_string(lim.value) : "diverges";
        row.expected_value = d.witness->value;
        row.pass = row.pass && row.limit_value == row.expected_value && row.limit_value != "0";
        rep.rows.push_back(row);
    }
    finalize(rep);
    return rep;
}

std::vector<MarginPoint> margin_points(const RPoly& limit, double delta, std::size_t count, double radius,
                                       std::uint64_t seed) {
    const int n = limit.nvars();
    if (limit.coeff(Monomial::u(n)) != GaussRational(1)) throw InputError("limit must contain Re(w) with coefficient 1");
    for (const auto& [m, c] : limit.terms())
        if (m.eu() > 1 || (m.eu() == 1 && m.total_degree() > 1))
            throw InputError("limit must be affine in Re(w)");
    RPoly rest = limit - RPoly(Monomial::u(n), GaussRational(1));
    NumericPoly rn(rest);
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<MarginPoint> pts;
    for (std::size_t i = 0; i < count; ++i) {
        MarginPoint p;
        for (int k = 0; k < n; ++k) p.z.push_back(std::polar(radius * std::sqrt(unit(gen)), 2 * M_PI * unit(gen)));
        p.v = radius * (2 * unit(gen) - 1);
        p.sign = (i % 2 == 0) ? -1 : 1;
        p.u = -rn.eval(p.z, 0, p.v) + p.sign * delta * (1 + unit(gen));
        pts.push_back(std::move(p));
    }
    return pts;
}

namespace {

std::complex<long double> eval_series_ld(const JSeries& x, long double j) {
    std::complex<long double> s = 0;
    for (const auto& t : x.terms())
        s += std::complex<long double>(t.c.re().get_d(), t.c.im().get_d()) * std::pow(j, -static_cast<long double>(t.r.get_d()));
    return s;
}

template <class C, class CoeffFn>
std::complex<long double> eval_poly_ld(const Poly<C>& p, const std::vector<std::complex<long double>>& z, long double u,
                                       long double v, const CoeffFn& coeff) {
    const int n = p.nvars();
    std::complex<long double> s = 0;
    for (const auto& [m, c] : p.terms()) {
        std::complex<long double> t = coeff(c);
        for (int k = 0; k < n; ++k) {
            for (int e = 0; e < m.a(k); ++e) t *= z[static_cast<std::size_t>(k)];
            for (int e = 0; e < m.b(k); ++e) t *= std::conj(z[static_cast<std::size_t>(k)]);
        }
        for (int e = 0; e < m.eu(); ++e) t *= u;
        for (int e = 0; e < m.ev(); ++e) t *= v;
        s += t;
    }
    return s;
}

} // namespace

NormalConvergenceReport check_normal_convergence(const ScalingRun& run, const std::vector<MarginPoint>& pts,
                                                 const std::vector<double>& js, double delta) {
    NormalConvergenceReport rep;
    rep.delta = delta;
    rep.js = js;
    for (double j : js) {
        std::size_t bad = 0;
        for (const auto& p : pts) {
            std::vector<std::complex<long double>> z(p.z.begin(), p.z.end());
            auto val = eval_poly_ld(run.scaled, z, p.u, p.v,
                                    [&](const JSeries& c) { return eval_series_ld(c, static_cast<long double>(j)); });
            int sign = val.real() < 0 ? -1 : (val.real() > 0 ? 1 : 0);
            if (sign != p.sign) ++bad;
        }
        rep.mismatches.push_back(bad);
    }
    for (std::size_t i = 1; i < rep.mismatches.size(); ++i)
        if (rep.mismatches[i] > rep.mismatches[i - 1]) rep.monotone = false;
    for (std::size_t i = rep.mismatches.size(); i-- > 0;) {
        if (rep.mismatches[i] != 0) break;
        rep.threshold = js[i];
    }
    return rep;
}

double pipeline_exactness_error(const DomainSpec& spec, const OrbitSpec& orbit, const ScalingRun& run, double j,
                                std::size_t npoints, std::uint64_t seed) {
    const int n = spec.n;
    const long double J = j;
    const RPoly rho = spec.rho();
    auto exact_coeff = [](const GaussRational& c) {
        return std::complex<long double>(c.re().get_d(), c.im().get_d());
    };
    auto series_coeff = [&](const JSeries& c) { return eval_series_ld(c, J); };
    const long double eps = eval_series_ld(run.epsilon, J).real();
    const std::complex<long double> beta = eval_series_ld(orbit.beta, J);
    std::vector<std::complex<long double>> alpha, tau;
    for (int k = 0; k < n; ++k) {
        alpha.push_back(eval_series_ld(orbit.alpha[static_cast<std::size_t>(k)], J));
        tau.push_back(eval_series_ld(run.tau.tau[static_cast<std::size_t>(k)], J));
    }
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0;
    for (std::size_t i = 0; i < npoints; ++i) {
        std::vector<std::complex<long double>> zh, zt, z;
        for (int k = 0; k < n; ++k) zh.emplace_back(unit(gen), unit(gen));
        long double uh = unit(gen), vh = unit(gen);
        for (int k = 0; k < n; ++k) {
            zt.push_back(tau[static_cast<std::size_t>(k)] * zh[static_cast<std::size_t>(k)]);
            z.push_back(alpha[static_cast<std::size_t>(k)] + zt.back());
        }
        // w = Re beta + eps + i Im beta + eps w^ - 2 H(tau z^)
        std::complex<long double> H = eval_poly_ld(run.shear.H, zt, 0, 0, series_coeff);
        std::complex<long double> w = std::complex<long double>(beta.real() + eps, beta.imag()) +
                                      eps * std::complex<long double>(uh, vh) - 2.0L * H;
        long double a = eval_poly_ld(rho, z, w.real(), w.imag(), exact_coeff).real() / eps;
        long double b = eval_poly_ld(run.scaled, zh, uh, vh, series_coeff).real();
        worst = std::max(worst, static_cast<double>(std::abs(a - b) / std::max(1.0L, std::abs(b))));
    }
    return worst;
}

DomainSpec load_domain(const std::string& file) {
    const auto& f = embedded_files();
    auto it = f.find(file);
    if (it == f.end()) throw InputError("unknown data file '" + file + "'");
    return parse_domain(it->second);
}

OrbitSpec load_orbit(const std::string& file, int n) {
    const auto& f = embedded_files();
    auto it = f.find(file);
    if (it == f.end()) throw InputError("unknown data file '" + file + "'");
    return parse_orbit(it->second, n);
}

std::vector<std::string> example_names() {
    std::vector<std::string> names;
    const std::string suffix = ".example";
    for (const auto& [name, text] : embedded_files())
        if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
            names.push_back(name.substr(0, name.size() - suffix.size()));
    return names;
}

ExampleCase load_example(const std::string& name) {
    const auto& f = embedded_files();
    auto it = f.find(name + ".example");
    if (it == f.end()) throw InputError("unknown example '" + name + "'");
    ExampleCase ex;
    ex.name = name;
    for (const auto& kv : parse_key_values(it->second)) {
        if (kv.key == "domain")
            ex.domain_file = kv.value;
        else if (kv.key == "orbit")
            ex.orbit_file = kv.value;
        else if (kv.key == "tau")
            ex.options.mode = parse_tau_mode(kv.value);
        else if (kv.key == "tau_mult")
            for (const auto& s : split(kv.value, ',')) ex.options.multipliers.push_back(parse_rational(trim(s)));
        else if (kv.key == "shear")
            ex.options.shear = parse_shear_policy(kv.value);
        else if (kv.key == "nu")
            ex.options.nu = std::stoi(kv.value);
        else if (kv.key == "expect")
            ex.expect = kv.value;
        else if (kv.key == "compare")
            ex.canonical_compare = kv.value == "canonical";
        else
            throw InputError(name + ".example line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    }
    if (ex.domain_file.empty() || ex.orbit_file.empty() || ex.expect.empty())
        throw InputError(name + ".example needs domain, orbit and expect");
    return ex;
}

GoldenResult run_golden(const ExampleCase& ex) {
    GoldenResult g;
    g.name = ex.name;
    g.expected = ex.expect;
    try {
        DomainSpec spec = load_domain(ex.domain_file);
        OrbitSpec orbit = load_orbit(ex.orbit_file, spec.n);
        ScalingRun run = run_scaling(spec, orbit, ex.options);
        RPoly expected = parse_poly(ex.expect, spec.n);
        g.got = format_poly(run.limit);
        g.pass = ex.canonical_compare ? same_canonical_model(run.limit, expected) : run.limit == expected;
        g.message = g.pass ? "match" : (ex.canonical_compare ? "canonical models differ" : "limits differ");
    } catch (const std::exception& e) {
        g.message = e.what();
    }
    return g;
}

std::vector<GoldenResult> golden_examples() {
    std::vector<GoldenResult> out;
    for (const auto& name : example_names()) out.push_back(run_golden(load_example(name)));
    return out;
}

} // namespace scalelimit
