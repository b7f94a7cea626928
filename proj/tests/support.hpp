// Shared generators and property suites for the unit tests and the acceptance runner.
#pragma once

#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "scalelimit/report.hpp"

namespace scalelimit::testing {

using cplx = std::complex<double>;

inline Rational small_rational(std::mt19937_64& gen, int num = 5, int den = 4) {
    std::uniform_int_distribution<int> p(-num, num), q(1, den);
    Rational r(p(gen), q(gen));
    r.canonicalize();
    return r;
}

inline GaussRational small_gauss(std::mt19937_64& gen) { return GaussRational(small_rational(gen), small_rational(gen)); }

// Real-valued random polynomial: each drawn term is added together with its conjugate.
inline RPoly random_real_poly(std::mt19937_64& gen, int n, int max_deg, int nterms, bool with_w = false) {
    std::uniform_int_distribution<int> var(0, n - 1), deg(0, max_deg), coin(0, 1);
    RPoly p(n);
    for (int t = 0; t < nterms; ++t) {
        Monomial m(n);
        int d = deg(gen);
        for (int s = 0; s < d; ++s) {
            if (with_w && coin(gen) && coin(gen)) {
                if (coin(gen)) ++m.eu(); else ++m.ev();
            } else if (coin(gen)) {
                ++m.a(var(gen));
            } else {
                ++m.b(var(gen));
            }
        }
        GaussRational c = small_gauss(gen);
        p.add_term(m, c);
        p.add_term(m.conj(), c.conj());
    }
    return p;
}

inline std::vector<cplx> random_point(std::mt19937_64& gen, int n, double radius = 0.9) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> z;
    for (int k = 0; k < n; ++k) z.emplace_back(radius * u(gen) / std::sqrt(2.0), radius * u(gen) / std::sqrt(2.0));
    return z;
}

// Largest |symbolic - central difference| / (1 + |symbolic|) over random polynomials, variables and points.
inline double fd_derivative_error(std::uint64_t seed, int cases = 60) {
    std::mt19937_64 gen(seed);
    const double h = 1e-4;
    double worst = 0;
    for (int c = 0; c < cases; ++c) {
        const int n = 1 + c % 3;
        RPoly p = random_real_poly(gen, n, 8, 5);
        NumericPoly f(p);
        for (int k = 0; k < n; ++k) {
            NumericPoly dz(p.diff_z(k)), dzb(p.diff_zbar(k));
            for (int t = 0; t < 5; ++t) {
                auto z = random_point(gen, n);
                auto shifted = [&](cplx d) {
                    auto w = z;
                    w[static_cast<std::size_t>(k)] += d;
                    return f.eval_complex(w);
                };
                cplx fx = (shifted({h, 0}) - shifted({-h, 0})) / (2 * h);
                cplx fy = (shifted({0, h}) - shifted({0, -h})) / (2 * h);
                cplx fd_z = 0.5 * (fx - cplx(0, 1) * fy), fd_zb = 0.5 * (fx + cplx(0, 1) * fy);
                cplx sz = dz.eval_complex(z), szb = dzb.eval_complex(z);
                worst = std::max(worst, std::abs(sz - fd_z) / (1 + std::abs(sz)));
                worst = std::max(worst, std::abs(szb - fd_zb) / (1 + std::abs(szb)));
            }
        }
    }
    return worst;
}

struct RescaleCase {
    std::string domain, orbit;
    TauMode mode;
    std::optional<int> nu;
};

inline std::vector<RescaleCase> rescale_cases() {
    return {{"corank1.domain", "corank1.orbit", TauMode::Formula4, std::nullopt},
            {"kn_modified.domain", "kn_modified.orbit", TauMode::Formula5, 2},
            {"kn_modified_r1.domain", "kn_modified_r1.orbit", TauMode::Formula5, 2},
            {"kn.domain", "kn_original.orbit", TauMode::Formula3, std::nullopt},
            {"siegel.domain", "siegel.orbit", TauMode::Formula3, std::nullopt},
            {"e124.domain", "e124_uniform.orbit", TauMode::Formula3, std::nullopt},
            {"e124_q.domain", "e124_q.orbit", TauMode::Formula3, std::nullopt}};
}

struct SuiteResult {
    int cases = 0, failures = 0;
    std::string first_failure;
    bool pass() const { return cases > 0 && failures == 0; }
};

// eps -> c eps via beta -> beta - (c - 1) eps; c = r^4 keeps every rational root exact.
inline SuiteResult eps_rescaling_suite(int count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> num(1, 6), den(1, 6);
    auto cases = rescale_cases();
    SuiteResult res;
    for (int i = 0; i < count; ++i) {
        const auto& cs = cases[static_cast<std::size_t>(i) % cases.size()];
        DomainSpec spec = load_domain(cs.domain);
        OrbitSpec orbit = load_orbit(cs.orbit, spec.n);
        Rational r(num(gen), den(gen));
        r.canonicalize();
        Rational c = r * r * r * r;
        ScaleOptions opt;
        opt.mode = cs.mode;
        opt.nu = cs.nu;
        ScalingRun base = run_scaling(spec, orbit, opt);
        OrbitSpec moved = orbit;
        moved.beta = orbit.beta - base.epsilon * JSeries(GaussRational(c - 1));
        ScalingRun scaled = run_scaling(spec, moved, opt);
        ++res.cases;
        bool ok = scaled.epsilon == base.epsilon * JSeries(GaussRational(c)) && scaled.limit == base.limit;
        if (!ok) {
            ++res.failures;
            if (res.first_failure.empty())
                res.first_failure = cs.domain + " c=" + to_string(c) + ": " + format_poly(base.limit) + " vs " +
                                    format_poly(scaled.limit);
        }
    }
    return res;
}

struct NamedRun {
    std::string name;
    DomainSpec spec;
    OrbitSpec orbit;
    ScalingRun run;
};

inline std::vector<NamedRun> golden_runs() {
    std::vector<NamedRun> out;
    for (const auto& name : example_names()) {
        ExampleCase ex = load_example(name);
        DomainSpec spec = load_domain(ex.domain_file);
        OrbitSpec orbit = load_orbit(ex.orbit_file, spec.n);
        out.push_back({name, spec, orbit, run_scaling(spec, orbit, ex.options)});
    }
    return out;
}

inline double pipeline_exactness_worst(const std::vector<NamedRun>& runs) {
    double worst = 0;
    for (const auto& r : runs)
        for (double j : {1e3, 1e6}) worst = std::max(worst, pipeline_exactness_error(r.spec, r.orbit, r.run, j, 20, 11));
    return worst;
}

inline bool jpoly_real(const JPoly& p) {
    for (const auto& [m, c] : p.terms())
        if (p.coeff(m.conj()) != c.conj()) return false;
    return true;
}

// Reality of rho, the recentered, scaled and limit polynomials for every run.
inline bool reality_everywhere(const std::vector<NamedRun>& runs) {
    for (const auto& r : runs) {
        if (!r.spec.rho().is_real() || !jpoly_real(r.run.recentered) || !jpoly_real(r.run.scaled) || !r.run.limit.is_real())
            return false;
        JPoly H2 = r.run.shear.H + r.run.shear.H.conj();
        if (!jpoly_real(H2)) return false;
    }
    return true;
}

inline double ball_map_deviation(const Eigen::MatrixXcd& H, std::uint64_t seed) {
    BallMap bm(H);
    auto chk = bm.check(1000, seed);
    return std::max(chk.max_sphere_deviation, chk.base_point_image);
}

template <class F>
double seconds(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace scalelimit::testing
