#include <doctest.h>

#include <functional>

#include "support.hpp"

using namespace scalelimit;
using namespace scalelimit::testing;

namespace {

JSeries jpow(const GaussRational& c, long num, long den = 1) { return JSeries::monomial(c, Rational(num, den)); }
GaussRational q(long p, long r = 1) { return GaussRational(Rational(p, r)); }

struct Setup {
    DomainSpec spec;
    OrbitSpec orbit;
    JSeries eps;
};

Setup setup(const std::string& d, const std::string& o) {
    DomainSpec spec = load_domain(d + ".domain");
    OrbitSpec orbit = load_orbit(o + ".orbit", spec.n);
    JSeries eps = boundary_gap(spec, orbit);
    return {spec, orbit, eps};
}

Monomial zmono(int n, std::vector<int> a, std::vector<int> b) {
    Monomial m(n);
    for (int k = 0; k < n; ++k) {
        m.a(k) = a[static_cast<std::size_t>(k)];
        m.b(k) = b[static_cast<std::size_t>(k)];
    }
    return m;
}

// Taylor coefficient D^a Dbar^b p(alpha) / (a! b!) computed by differentiation, independent of recenter.
JSeries taylor_coeff(const RPoly& p, const std::vector<JSeries>& alpha, const Monomial& m) {
    RPoly d = p;
    long fact = 1;
    for (int k = 0; k < p.nvars(); ++k) {
        d = d.diff_z(k, m.a(k)).diff_zbar(k, m.b(k));
        for (int t = 2; t <= m.a(k); ++t) fact *= t;
        for (int t = 2; t <= m.b(k); ++t) fact *= t;
    }
    return eval_series(d, alpha) * JSeries(GaussRational(Rational(1, fact)));
}

RPoly lim(const std::string& s, int n) { return parse_poly(s, n); }

} // namespace

TEST_CASE("tau formulas") {
    Rational tr(6);
    auto e = setup("e124", "e124");
    TauVector t3 = make_tau(e.spec, e.orbit, e.eps, TauMode::Formula3, {Rational(1, 2), Rational(1)}, 0, nullptr, tr);
    CHECK(t3.tau[0] == jpow(q(1, 2), 3, 4));
    CHECK(t3.tau[1] == jpow(q(1), 3, 8));

    auto k = setup("kn_modified", "kn_modified");
    TauVector t5 = make_tau(k.spec, k.orbit, k.eps, TauMode::Formula5, {}, 2, nullptr, tr);
    CHECK(t5.tau[0] == jpow(q(1), 3, 8));

    auto c = setup("corank1", "corank1");
    TauVector t4 = make_tau(c.spec, c.orbit, c.eps, TauMode::Formula4, {}, 0, nullptr, tr);
    CHECK(*t4.tau[1].order() == *c.eps.order() / 2); // eps^(1/2) in the flat directions

    CHECK_THROWS_AS(make_tau(e.spec, e.orbit, e.eps, TauMode::Formula3, {Rational(-1), Rational(1)}, 0, nullptr, tr),
                    InputError);
    CHECK_THROWS_AS(make_tau(e.spec, e.orbit, e.eps, TauMode::Formula5, {}, 2, nullptr, tr), InputError);
    CHECK_THROWS_AS(make_tau(e.spec, e.orbit, e.eps, TauMode::Catlin, {}, 0, nullptr, tr), InputError);
}

TEST_CASE("catlin tau matches a brute-force minimum over derivative orders") {
    for (const char* orbit : {"remark32_iii", "remark32_ii", "e124"}) {
        auto s = setup("e124", orbit);
        JPoly rec = recenter(s.spec, s.orbit, s.eps);
        TauVector t = make_tau(s.spec, s.orbit, s.eps, TauMode::Catlin, {}, 0, &rec, Rational(6));
        // Oracle: the smallest candidate scale (eps/|A_ab|)^(1/(a+b)) over non-harmonic z_k-only Taylor terms,
        // 1 <= a, b and a + b <= 8; the smallest scale has the largest decay exponent.
        for (int k = 0; k < s.spec.n; ++k) {
            std::optional<Rational> largest;
            for (int a = 1; a <= 7; ++a)
                for (int b = 1; a + b <= 8; ++b) {
                    std::vector<int> av(2, 0), bv(2, 0);
                    av[static_cast<std::size_t>(k)] = a;
                    bv[static_cast<std::size_t>(k)] = b;
                    JSeries A = taylor_coeff(s.spec.rho(), s.orbit.alpha, zmono(2, av, bv));
                    if (A.is_zero()) continue;
                    Rational r = (*s.eps.order() - *A.order()) / (a + b);
                    if (!largest || r > *largest) largest = r;
                }
            REQUIRE(largest);
            CHECK_MESSAGE(*t.tau[static_cast<std::size_t>(k)].order() == *largest, orbit, " k=", k);
        }
    }
    // Case (iii): tau_2 = (eps / |A_{1,1}|)^(1/2) = (j^-2 / 4 j^-1)^(1/2) = j^(-1/2) / 2.
    auto s = setup("e124", "remark32_iii");
    JPoly rec = recenter(s.spec, s.orbit, s.eps);
    TauVector t = make_tau(s.spec, s.orbit, s.eps, TauMode::Catlin, {}, 0, &rec, Rational(6));
    CHECK(t.tau[1] == jpow(q(1, 2), 1, 2));
}

TEST_CASE("tau obeys the two-sided eps bound") {
    for (auto [d, o, mode] : std::vector<std::tuple<std::string, std::string, TauMode>>{
             {"e124", "e124", TauMode::Formula3}, {"e124", "e124_uniform", TauMode::Formula3},
             {"kn", "kn_original", TauMode::Formula3}, {"corank1", "corank1", TauMode::Formula4},
             {"kn_modified", "kn_modified", TauMode::Formula5}, {"e124", "remark32_iii", TauMode::Catlin}}) {
        auto s = setup(d, o);
        JPoly rec = recenter(s.spec, s.orbit, s.eps);
        TauVector t = make_tau(s.spec, s.orbit, s.eps, mode, {}, 2, &rec, Rational(6));
        Rational e = *s.eps.order();
        for (int k = 0; k < s.spec.n; ++k) {
            Rational r = *t.tau[static_cast<std::size_t>(k)].order();
            CHECK(r <= e / 2);
            CHECK(r >= e / (2 * s.spec.weights.m[static_cast<std::size_t>(k)]));
        }
    }
}

TEST_CASE("recentering the Siegel toy is a pure translation") {
    auto s = setup("siegel", "siegel");
    JPoly rec = recenter(s.spec, s.orbit, s.eps);
    CHECK(rec.size() == 2);
    CHECK(rec.coeff(Monomial::u(1)) == JSeries(1));
    CHECK(rec.coeff(zmono(1, {1}, {1})) == JSeries(1));
}

TEST_CASE("recentered coefficients of the modified Kohn-Nirenberg orbit") {
    auto s = setup("kn_modified", "kn_modified");
    JPoly rec = recenter(s.spec, s.orbit, s.eps);
    CHECK(rec.coeff(Monomial(1)).is_zero());
    // Each Re(z^k) coefficient c appears as c/2 on z^k.
    CHECK(rec.coeff(zmono(1, {1}, {0})) == jpow(q(-36, 7), 7, 8));
    CHECK(rec.coeff(zmono(1, {2}, {0})) == jpow(q(-18), 3, 4));
    CHECK(rec.coeff(zmono(1, {3}, {0})) == jpow(q(-36), 5, 8));
    CHECK(rec.coeff(zmono(1, {3}, {1})) == jpow(q(-24), 1, 2));
    CHECK(rec.coeff(zmono(1, {2}, {2})) == jpow(q(36), 1, 2));
    // z^4: -39 j^(-1/2), i.e. Re(z^4) coefficient -78 from the binomial count C(7,4) = 35.
    CHECK(rec.coeff(zmono(1, {4}, {0})) == jpow(q(-39), 1, 2));
    for (const auto& [m, c] : rec.terms())
        if (!m.has_w()) CHECK(c == taylor_coeff(s.spec.rho(), s.orbit.alpha, m));
}

TEST_CASE("recentered coefficients of the (4,8,1) orbit") {
    auto s = setup("e124", "e124");
    JPoly rec = recenter(s.spec, s.orbit, s.eps);
    CHECK(rec.coeff(Monomial(2)).is_zero());
    // |j^(-1/4) + z1|^4 part: 4 j^(-3/4) Re z1 + 4 j^(-1/2) |z1|^2 + 2 j^(-1/2) Re(z1^2); cross terms add later orders.
    CHECK(rec.coeff(zmono(2, {1, 0}, {0, 0})).coeff(Rational(3, 4)) == q(2));
    CHECK(rec.coeff(zmono(2, {1, 0}, {1, 0})).coeff(Rational(1, 2)) == q(4));
    CHECK(rec.coeff(zmono(2, {2, 0}, {0, 0})) == jpow(q(1), 1, 2));
    for (const auto& [m, c] : rec.terms())
        if (!m.has_w()) CHECK(c == taylor_coeff(s.spec.rho(), s.orbit.alpha, m));
}

TEST_CASE("shear absorbs exactly the divergent holomorphic groups") {
    auto s = setup("e124", "e124");
    ScaleOptions opt;
    opt.multipliers = {Rational(1, 2), Rational(1)};
    ScalingRun run = run_scaling(s.spec, s.orbit, opt);
    REQUIRE(run.shear.absorbed.size() == 2);
    CHECK(run.shear.absorbed[0].monomial == Monomial::z(2, 0));
    CHECK(run.shear.absorbed[0].shift.coeff(Rational(3, 4)) == q(4));
    CHECK(run.shear.absorbed[1].monomial == Monomial::z(2, 0, 2));
    CHECK(run.shear.absorbed[1].shift == jpow(q(2), 1, 2));
    CHECK(run.shear.rotation.is_zero());

    auto k = setup("kn_modified", "kn_modified");
    ScaleOptions ok;
    ok.mode = TauMode::Formula5;
    ok.nu = 2;
    ScalingRun kr = run_scaling(k.spec, k.orbit, ok);
    REQUIRE(kr.shear.absorbed.size() == 4);
    for (int p = 1; p <= 4; ++p) CHECK(kr.shear.absorbed[static_cast<std::size_t>(p - 1)].monomial == Monomial::z(1, 0, p));
    CHECK(kr.shear.absorbed[0].shift == jpow(q(-72, 7), 7, 8));
    CHECK(kr.shear.absorbed[1].shift == jpow(q(-36), 3, 4));
    CHECK(kr.shear.absorbed[2].shift == jpow(q(-72), 5, 8));
    CHECK(kr.shear.absorbed[3].shift == jpow(q(-78), 1, 2));

    auto t = setup("siegel", "siegel");
    ScalingRun tr = run_scaling(t.spec, t.orbit, ScaleOptions{});
    CHECK(tr.shear.absorbed.empty());
    CHECK(tr.shear.H.is_zero());
}

TEST_CASE("limits of the stored runs") {
    auto s = setup("e124", "e124");
    ScaleOptions opt;
    opt.multipliers = {Rational(1, 2), Rational(1)};
    ScalingRun run = run_scaling(s.spec, s.orbit, opt);
    CHECK(run.limit == lim("Re(w) + abs2(z1) + abs2(z2 + 1)^2 - 1", 2));
    // Finite-j terms of the scaled polynomial.
    CHECK(run.scaled.coeff(zmono(2, {2, 0}, {2, 0})) == jpow(q(1, 16), 1));
    CHECK(run.scaled.coeff(zmono(2, {2, 0}, {1, 0})).order() == Rational(1, 2));
    CHECK(run.scaled.coeff(zmono(2, {2, 0}, {1, 0})).leading_coeff() == q(1, 4));

    auto k = setup("kn_modified", "kn_modified");
    ScaleOptions ok;
    ok.mode = TauMode::Formula5;
    ok.nu = 2;
    ScalingRun kr = run_scaling(k.spec, k.orbit, ok);
    CHECK(kr.limit == lim("Re(w) + 36*abs2(z1)^2 - 48*abs2(z1)*Re(z1^2)", 1));
    CHECK(kr.epsilon == jpow(q(1), 2));
    for (const auto& d : kr.dropped) CHECK(d.order > 0);

    auto c = setup("corank1", "corank1");
    ScaleOptions oc;
    oc.mode = TauMode::Formula4;
    CHECK(run_scaling(c.spec, c.orbit, oc).limit == lim("Re(w) + 4*abs2(z1) + abs2(z2)", 2));

    // Without an explicit nu, formula5 asks the classifier.
    ScaleOptions inferred;
    inferred.mode = TauMode::Formula5;
    CHECK(run_scaling(k.spec, k.orbit, inferred).limit == kr.limit);
}

TEST_CASE("a mismatched dilation is a hard error") {
    // Too coarse a dilation (nu = 4, tau = j^(-1/4)) blows up the |z|^2 Re(z^2) term, which no shear can absorb.
    auto k = setup("kn_modified", "kn_modified");
    ScaleOptions opt;
    opt.mode = TauMode::Formula5;
    opt.nu = 4;
    CHECK_THROWS_WITH_AS(run_scaling(k.spec, k.orbit, opt), doctest::Contains("dilation mismatch"), MathError);
}

TEST_CASE("higher-weight terms vanish after dilation") {
    for (auto [d, o, mode] : std::vector<std::tuple<std::string, std::string, TauMode>>{
             {"e124_q", "e124_q", TauMode::Formula3}, {"kn_modified_r1", "kn_modified_r1", TauMode::Formula5}}) {
        auto s = setup(d, o);
        ScaleOptions opt;
        opt.mode = mode;
        ScalingRun run = run_scaling(s.spec, s.orbit, opt);
        const int n = s.spec.n;
        // R1(tau z) / eps -> 0 monomial by monomial.
        for (const auto& [m, c] : s.spec.R1.terms()) {
            (void)c;
            Rational r = -*run.epsilon.order();
            for (int k = 0; k < n; ++k) r += (m.a(k) + m.b(k)) * *run.tau.tau[static_cast<std::size_t>(k)].order();
            CHECK(r > 0);
        }
        // Every non-harmonic Taylor term of R1 at alpha, dilated and divided by eps, decays too.
        RPoly R1 = s.spec.R1;
        int checked = 0;
        std::vector<Monomial> monos;
        std::function<void(int, Monomial)> gen = [&](int k, Monomial m) {
            if (k == 2 * n) {
                if (!m.is_constant() && !m.is_harmonic()) monos.push_back(m);
                return;
            }
            for (int e = 0; e <= 7; ++e) {
                Monomial x = m;
                if (k < n) x.a(k) = e; else x.b(k - n) = e;
                gen(k + 1, x);
            }
        };
        gen(0, Monomial(n));
        for (const auto& m : monos) {
            JSeries coeff = taylor_coeff(R1, s.orbit.alpha, m);
            if (coeff.is_zero()) continue;
            Rational r = *coeff.order() - *run.epsilon.order();
            for (int k = 0; k < n; ++k) r += (m.a(k) + m.b(k)) * *run.tau.tau[static_cast<std::size_t>(k)].order();
            CHECK_MESSAGE(r > 0, d, " ", to_string(m));
            ++checked;
        }
        CHECK(checked > 0);
        CHECK_FALSE(run.limit.is_zero());
    }
}

TEST_CASE("hessian limits") {
    auto c = setup("corank1", "corank1");
    ScaleOptions oc;
    oc.mode = TauMode::Formula4;
    ScalingRun run = run_scaling(c.spec, c.orbit, oc);
    auto a = hessian_limit(c.spec, c.orbit, run.epsilon, run.tau);
    CHECK(a[0][0] == q(2));

    // Re w + |z1|^2 along alpha = j^(-1/4), beta = -1/j + eps with eps = j^(-1) chosen inside.
    DomainSpec siegel = load_domain("siegel.domain");
    OrbitSpec orb = parse_orbit("alpha_1 = j^(-1/4)\nbeta = -j^(-1/2) - j^(-1)\n", 1);
    JSeries eps = boundary_gap(siegel, orb);
    CHECK(eps == jpow(q(1), 1));
    TauVector t = make_tau(siegel, orb, eps, TauMode::Formula3, {}, 0, nullptr, Rational(4));
    CHECK(hessian_limit(siegel, orb, eps, t)[0][0] == q(1, 2));

    DomainSpec zero;
    zero.n = 1;
    zero.P = zero.R1 = zero.R = zero.R2 = RPoly(1);
    zero.weights = WeightTuple{{1}};
    auto z = hessian_limit(zero, orb, eps, t);
    CHECK(z[0][0] == q(0));

    // Under uniform tangency with a strongly h-extendible model the matrix is positive definite.
    auto u = setup("e124", "e124_uniform");
    ScalingRun ur = run_scaling(u.spec, u.orbit, ScaleOptions{});
    auto h = hessian_limit(u.spec, u.orbit, ur.epsilon, ur.tau);
    Eigen::MatrixXcd H(2, 2);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) H(k, l) = h[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].to_complex();
    CHECK(min_eigenvalue(H) > 0);
    // The full pipeline's quadratic part is twice the hessian matrix.
    Eigen::MatrixXcd Q = quadratic_form(ur.limit);
    CHECK((Q - 2.0 * H).norm() < 1e-14);
}

TEST_CASE("canonical models") {
    auto canon = [](const std::string& s, int n) { return canonicalize_model(model_from_limit(lim(s, n))).H; };
    CHECK(canon("Re(w) + abs2(z2 + 1)^2 - 1", 2) == lim("4*abs2(z2) + 4*abs2(z2)*Re(z2) + abs2(z2)^2", 2));
    CHECK(canon("Re(w) + 36*abs2(z1)^2 - 48*abs2(z1)*Re(z1^2)", 1) == lim("36*abs2(z1)^2 - 48*abs2(z1)*Re(z1^2)", 1));
    CHECK(canon("Re(w) + Re(z1^3)", 1).is_zero());
    std::mt19937_64 gen(59);
    for (int t = 0; t < 30; ++t) {
        ModelDomain m{2, random_real_poly(gen, 2, 6, 5), false};
        ModelDomain once = canonicalize_model(m), twice = canonicalize_model(once);
        CHECK(once.H == twice.H);
        CHECK(once.canonical);
    }
    CHECK(same_canonical_model(lim("Re(w) + abs2(z1) + abs2(z2 + 1)^2 - 1", 2),
                               lim("Re(w) + abs2(z1) + 4*abs2(z2) + 4*abs2(z2)*Re(z2) + abs2(z2)^2", 2)));
    CHECK_FALSE(same_canonical_model(lim("Re(w) + abs2(z1)", 1), lim("Re(w) + 2*abs2(z1)", 1)));
}

TEST_CASE("ball map") {
    BallMap id(Eigen::MatrixXcd::Identity(2, 2));
    auto [z0, w0] = id.apply(Eigen::VectorXcd::Zero(2), -1.0);
    CHECK(z0.norm() == 0.0);
    CHECK(std::abs(w0) == 0.0);
    CHECK(ball_map_deviation(Eigen::MatrixXcd::Identity(2, 2), 1) < 1e-10);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2, 2);
    H(0, 0) = 2;
    H(1, 1) = 1;
    CHECK(ball_map_deviation(H, 2) < 1e-10);
    BallMap bm(H);
    CHECK(((bm.S().adjoint() * bm.S()) - H).norm() < 1e-14);
    Eigen::MatrixXcd bad = -Eigen::MatrixXcd::Identity(1, 1);
    CHECK_THROWS_AS(BallMap{bad}, MathError);
}

TEST_CASE("Cayley boundary identity holds symbolically") {
    // |1 - w|^2 - |1 + w|^2 = -4 Re w as an exact polynomial identity in (u, v).
    RPoly one(1, GaussRational(1));
    RPoly u = RPoly(Monomial::u(1), GaussRational(1)), v = RPoly(Monomial::v(1), GaussRational(1));
    RPoly a = (one - u) * (one - u) + v * v, b = (one + u) * (one + u) + v * v;
    CHECK(a - b == u.scaled(GaussRational(-4)));
}

TEST_CASE("scaled and limit polynomials stay real") {
    CHECK(reality_everywhere(golden_runs()));
}
