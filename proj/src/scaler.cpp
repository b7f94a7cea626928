#include "scalelimit/scaler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

namespace scalelimit {

std::string to_string(TauMode m) {
    switch (m) {
    case TauMode::Formula3: return "formula3";
    case TauMode::Formula4: return "formula4";
    case TauMode::Formula5: return "formula5";
    case TauMode::Catlin: return "catlin";
    }
    return "?";
}

TauMode parse_tau_mode(const std::string& s) {
    if (s == "formula3") return TauMode::Formula3;
    if (s == "formula4") return TauMode::Formula4;
    if (s == "formula5") return TauMode::Formula5;
    if (s == "catlin") return TauMode::Catlin;
    throw InputError("unknown tau mode '" + s + "'");
}

std::string to_string(ShearPolicy p) {
    return p == ShearPolicy::DivergentOnly ? "divergent" : "all";
}

ShearPolicy parse_shear_policy(const std::string& s) {
    if (s == "divergent" || s == "divergent_only") return ShearPolicy::DivergentOnly;
    if (s == "all" || s == "all_harmonic_upto_weight_1") return ShearPolicy::AllHarmonicUptoWeight1;
    throw InputError("unknown shear policy '" + s + "'");
}

Rational default_truncation(const DomainSpec& spec) {
    Rational w(1);
    RPoly rho = spec.rho();
    for (const auto& [m, c] : rho.terms()) {
        Rational wm = m.weight(spec.weights.m) + m.eu() + m.ev();
        if (wm > w) w = wm;
    }
    return w + 2;
}

namespace {

JPoly constant(int n, const JSeries& c) { return JPoly(n, c); }

JPoly variable(const Monomial& m) { return JPoly(m, JSeries(1)); }

// Replace the u (which = 0) or v (which = 1) variable by repl.
JPoly substitute_w(const JPoly& p, int which, const JPoly& repl) {
    const int n = p.nvars();
    std::map<int, JPoly> powers;
    auto power = [&](int e) -> const JPoly& {
        auto it = powers.find(e);
        if (it != powers.end()) return it->second;
        return powers.emplace(e, repl.pow(static_cast<unsigned>(e))).first->second;
    };
    JPoly out(n);
    for (const auto& [m, c] : p.terms()) {
        int e = which == 0 ? m.eu() : m.ev();
        if (e == 0) {
            out.add_term(m, c);
            continue;
        }
        Monomial rest = m;
        (which == 0 ? rest.eu() : rest.ev()) = 0;
        out += JPoly(rest, c) * power(e);
    }
    return out;
}

JSeries abs_value(const JSeries& x, const Rational& trunc) {
    return rational_power(x.abs2(), Rational(1, 2), trunc);
}

void check_real(const JPoly& p, const std::string& stage) {
    if (!p.is_real()) throw MathError("internal error: " + stage + " is not real-valued");
}

} // namespace

JPoly recenter(const DomainSpec& spec, const OrbitSpec& orbit, const JSeries& eps) {
    const int n = spec.n;
    RPoly rho = spec.rho();
    std::vector<JPoly> base;
    for (int k = 0; k < n; ++k)
        base.push_back(constant(n, orbit.alpha[static_cast<std::size_t>(k)]) + variable(Monomial::z(n, k)));
    for (int k = 0; k < n; ++k)
        base.push_back(constant(n, orbit.alpha[static_cast<std::size_t>(k)].conj()) + variable(Monomial::zbar(n, k)));
    base.push_back(constant(n, orbit.beta.real_part() + eps) + variable(Monomial::u(n)));
    base.push_back(constant(n, orbit.beta.imag_part()) + variable(Monomial::v(n)));

    std::map<std::pair<int, int>, JPoly> cache;
    auto power = [&](int var, int e) -> const JPoly& {
        auto key = std::make_pair(var, e);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        return cache.emplace(key, base[static_cast<std::size_t>(var)].pow(static_cast<unsigned>(e))).first->second;
    };
    JPoly out(n);
    for (const auto& [m, c] : rho.terms()) {
        JPoly t(n, JSeries(c));
        for (int k = 0; k < n; ++k) {
            if (m.a(k)) t = t * power(k, m.a(k));
            if (m.b(k)) t = t * power(n + k, m.b(k));
        }
        if (m.eu()) t = t * power(2 * n, m.eu());
        if (m.ev()) t = t * power(2 * n + 1, m.ev());
        out += t;
    }
    JSeries c0 = out.coeff(Monomial(n));
    if (!c0.terms().empty())
        throw MathError("internal consistency failure: recentered constant term " + to_string(c0) + " is not zero");
    out.set_term(Monomial(n), JSeries());
    check_real(out, "recentered rho");
    return out;
}

TauVector make_tau(const DomainSpec& spec, const OrbitSpec& orbit, const JSeries& eps, TauMode mode,
                   const std::vector<Rational>& multipliers, int nu, const JPoly* recentered,
                   const Rational& truncation) {
    const int n = spec.n;
    const auto& m = spec.weights.m;
    TauVector tv;
    tv.mode = mode;
    tv.nu = nu;
    tv.multipliers = multipliers.empty() ? std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)) : multipliers;
    if (static_cast<int>(tv.multipliers.size()) != n)
        throw InputError("expected " + std::to_string(n) + " tau multipliers, got " + std::to_string(tv.multipliers.size()));
    for (const auto& q : tv.multipliers)
        if (sgn(q) <= 0) throw InputError("tau multipliers must be positive");
    const Rational ord_eps = *eps.order();

    auto fallback = [&](int k) {
        tv.notes.push_back("tau_" + std::to_string(k + 1) + ": alpha identically zero, using eps^(1/" +
                           std::to_string(2 * m[static_cast<std::size_t>(k)]) + ")");
        return rational_power(eps, Rational(1, 2 * m[static_cast<std::size_t>(k)]), truncation);
    };
    // |alpha| (eps/|alpha|^{2 mk})^{1/e}, capped at |alpha| when the ratio diverges.
    auto formula = [&](int k, int mk, const Rational& root) -> JSeries {
        const JSeries& a = orbit.alpha[static_cast<std::size_t>(k)];
        if (a.is_zero()) return fallback(k);
        JSeries abs_a = abs_value(a, truncation);
        Rational ord_pow = 2 * mk * *a.order();
        if (ord_eps < ord_pow) {
            tv.notes.push_back("tau_" + std::to_string(k + 1) + ": eps/|alpha|^" + std::to_string(2 * mk) +
                               " diverges, capped at |alpha_" + std::to_string(k + 1) + "|");
            return abs_a;
        }
        JSeries ratio = eps * inverse(a.abs2().pow(static_cast<unsigned>(mk)), truncation);
        return abs_a * rational_power(ratio, root, truncation);
    };

    tv.tau.resize(static_cast<std::size_t>(n));
    switch (mode) {
    case TauMode::Formula3:
        for (int k = 0; k < n; ++k) tv.tau[static_cast<std::size_t>(k)] = formula(k, m[static_cast<std::size_t>(k)], Rational(1, 2));
        break;
    case TauMode::Formula4:
        if (!is_corank_one(spec)) throw InputError("formula4 needs a corank-one model (m_k = 1 for k >= 2)");
        tv.tau[0] = formula(0, m[0], Rational(1, 2));
        for (int k = 1; k < n; ++k) tv.tau[static_cast<std::size_t>(k)] = rational_power(eps, Rational(1, 2), truncation);
        break;
    case TauMode::Formula5:
        if (n != 1) throw InputError("formula5 needs n = 1");
        if (nu < 1 || nu > m[0]) throw InputError("formula5 needs 1 <= nu <= m");
        tv.tau[0] = formula(0, m[0], Rational(1, 2 * nu));
        break;
    case TauMode::Catlin: {
        if (!recentered) throw InputError("catlin mode needs the recentered expansion");
        const GaussRational eps_lead = eps.leading_coeff();
        for (int k = 0; k < n; ++k) {
            bool found = false;
            Rational best_order;
            int best_s = 0;
            GaussRational best_lead;
            for (const auto& [mono, c] : recentered->terms()) {
                if (mono.has_w() || c.terms().empty()) continue;
                auto supp = mono.z_support();
                if (supp.size() != 1 || supp[0] != k || mono.a(k) < 1 || mono.b(k) < 1) continue;
                int s = mono.a(k) + mono.b(k);
                Rational cand = (ord_eps - *c.order()) / s;
                cand.canonicalize();
                if (!found || cand > best_order || (cand == best_order && s > best_s)) {
                    found = true;
                    best_order = cand;
                    best_s = s;
                    best_lead = c.leading_coeff();
                }
            }
            if (!found) {
                tv.tau[static_cast<std::size_t>(k)] = fallback(k);
                continue;
            }
            Rational x = eps_lead.abs2() / best_lead.abs2();
            auto root = exact_root(x, static_cast<unsigned long>(2 * best_s));
            if (!root) {
                tv.notes.push_back("tau_" + std::to_string(k + 1) + ": leading constant is irrational, using 1");
                root = Rational(1);
            }
            tv.tau[static_cast<std::size_t>(k)] = JSeries::monomial(GaussRational(*root), best_order);
            tv.notes.push_back("tau_" + std::to_string(k + 1) + ": balanced against order " + std::to_string(best_s) +
                               " terms");
        }
        break;
    }
    }
    for (int k = 0; k < n; ++k) {
        auto& t = tv.tau[static_cast<std::size_t>(k)];
        t = t * JSeries(GaussRational(tv.multipliers[static_cast<std::size_t>(k)]));
        if (t.is_zero() || !t.order()) throw MathError("tau_" + std::to_string(k + 1) + " is undetermined");
        // eps^{1/2} <~ tau_k <~ eps^{1/(2 m_k)}
        Rational lo = ord_eps / (2 * m[static_cast<std::size_t>(k)]), hi = ord_eps / 2;
        if (*t.order() < lo || *t.order() > hi)
            tv.notes.push_back("tau_" + std::to_string(k + 1) + " = " + to_string(t) +
                               " violates eps^(1/2) <~ tau <~ eps^(1/2m)");
    }
    return tv;
}

std::optional<Rational> post_dilation_order(const Monomial& m, const JSeries& coeff, const TauVector& tau,
                                            const JSeries& eps) {
    auto oc = coeff.order_bound();
    if (!oc) return std::nullopt;
    Rational r = *oc - *eps.order() + (m.eu() + m.ev()) * *eps.order();
    for (int k = 0; k < m.nvars(); ++k) r += (m.a(k) + m.b(k)) * *tau.tau[static_cast<std::size_t>(k)].order();
    r.canonicalize();
    return r;
}

ShearResult shear_absorb(const JPoly& recentered, const TauVector& tau, const JSeries& eps, ShearPolicy policy,
                         const WeightTuple& weights) {
    const int n = recentered.nvars();
    ShearResult res{recentered, ShearRecord{{}, JPoly(n), JSeries(), 0}};
    const int max_passes = 8;
    for (int pass = 0;; ++pass) {
        // Holomorphic monomials with their post-dilation orders, grouped by support.
        std::map<std::vector<int>, std::vector<std::pair<Monomial, Rational>>> groups;
        for (const auto& [m, c] : res.sheared.terms()) {
            if (!m.is_harmonic() || !m.is_holomorphic()) continue;
            auto ord = post_dilation_order(m, c, tau, eps);
            if (!ord) continue;
            groups[m.z_support()].push_back({m, *ord});
        }
        std::vector<std::pair<Monomial, Rational>> chosen;
        for (const auto& [supp, members] : groups) {
            if (policy == ShearPolicy::DivergentOnly) {
                bool diverges = std::any_of(members.begin(), members.end(), [](const auto& x) { return sgn(x.second) < 0; });
                if (!diverges) continue;
                for (const auto& x : members)
                    if (sgn(x.second) <= 0) chosen.push_back(x);
            } else {
                for (const auto& x : members)
                    if (x.first.weight(weights.m) <= 1) chosen.push_back(x);
            }
        }
        if (chosen.empty()) break;
        if (pass >= max_passes) throw MathError("shear did not stabilise after " + std::to_string(max_passes) + " passes");
        JPoly H(n);
        for (const auto& [m, ord] : chosen) {
            const JSeries& c = res.sheared.terms().at(m);
            H.add_term(m, c);
            res.record.absorbed.push_back({m, c + c, ord, pass});
        }
        JPoly Hbar = H.conj();
        // u_old = u_new - (H + Hbar), v_old = v_new + i (H - Hbar)
        JPoly u_repl = variable(Monomial::u(n)) - (H + Hbar);
        JPoly v_repl = variable(Monomial::v(n)) + (H - Hbar).scaled(JSeries(GaussRational::i()));
        res.sheared = substitute_w(res.sheared, 0, u_repl);
        if (res.sheared.has_w()) {
            bool has_v = false;
            for (const auto& [m, c] : res.sheared.terms()) has_v = has_v || m.ev() > 0;
            if (has_v) res.sheared = substitute_w(res.sheared, 1, v_repl);
        }
        res.record.H += H;
        res.record.passes = pass + 1;
        check_real(res.sheared, "sheared rho");
    }
    res.record.rotation = res.sheared.coeff(Monomial::v(n));
    return res;
}

void dilate_and_limit(ScalingRun& run, const JPoly& sheared) {
    const int n = sheared.nvars();
    const JSeries inv_eps = inverse(run.epsilon, run.truncation);
    std::map<std::pair<int, int>, JSeries> cache;
    auto tau_pow = [&](int k, int e) -> const JSeries& {
        auto key = std::make_pair(k, e);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        JSeries base = k < n ? run.tau.tau[static_cast<std::size_t>(k)] : run.epsilon;
        return cache.emplace(key, base.pow(static_cast<unsigned>(e))).first->second;
    };
    run.scaled = JPoly(n);
    run.limit = RPoly(n);
    run.dropped.clear();
    for (const auto& [m, c] : sheared.terms()) {
        JSeries s = c * inv_eps;
        for (int k = 0; k < n; ++k)
            if (m.a(k) + m.b(k)) s *= tau_pow(k, m.a(k) + m.b(k));
        if (m.eu() + m.ev()) s *= tau_pow(n, m.eu() + m.ev());
        run.scaled.add_term(m, s);
        JLimit lim = limit(s);
        if (lim.kind == JLimit::Kind::Diverges) {
            throw MathError("dilation mismatch: term " + to_string(m) + " with coefficient " + to_string(s) +
                            " diverges (exponent " + to_string(lim.decay) + ")" +
                            (m.is_harmonic() ? "" : "; it is not pluriharmonic, so no shear can absorb it"));
        }
        if (!lim.value.is_zero())
            run.limit.add_term(m, lim.value);
        else
            run.dropped.push_back({m, *s.order_bound(), s});
    }
    std::stable_sort(run.dropped.begin(), run.dropped.end(),
                     [](const DroppedTerm& a, const DroppedTerm& b) { return a.order < b.order; });
    check_real(run.scaled, "scaled rho");
    if (!run.limit.is_real()) throw MathError("internal error: limit is not real-valued");
    if (run.limit.coeff(Monomial::u(n)) != GaussRational(1))
        throw MathError("internal error: limit does not contain Re(w) with coefficient 1");
}

ScalingRun run_scaling(const DomainSpec& spec, const OrbitSpec& orbit, const ScaleOptions& opt) {
    ScalingRun run;
    run.policy = opt.shear;
    run.truncation = opt.truncation ? *opt.truncation : default_truncation(spec);
    if (sgn(run.truncation) <= 0) throw InputError("truncation order must be positive");
    ValidationReport vr = validate_domain(spec);
    for (const auto& v : vr.violations)
        run.diagnostics.push_back("domain: " + v.component + " " + v.monomial + ": " + v.reason);
    run.epsilon = boundary_gap(spec, orbit);
    run.recentered = recenter(spec, orbit, run.epsilon);
    int nu = 0;
    if (opt.mode == TauMode::Formula5) {
        if (opt.nu) {
            nu = *opt.nu;
        } else {
            ConvergenceReport cr = classify(spec, orbit);
            if (!cr.nu) throw MathError("formula5 needs nu; the orbit is not tangential of any order 2nu (pass --nu)");
            nu = *cr.nu;
            run.diagnostics.push_back("nu = " + std::to_string(nu) + " from classification");
        }
    }
    run.tau = make_tau(spec, orbit, run.epsilon, opt.mode, opt.multipliers, nu, &run.recentered, run.truncation);
    for (const auto& note : run.tau.notes) run.diagnostics.push_back(note);
    ShearResult sh = shear_absorb(run.recentered, run.tau, run.epsilon, opt.shear, spec.weights);
    run.shear = sh.record;
    if (!run.shear.rotation.is_zero())
        run.diagnostics.push_back("Im(w) rotation coefficient " + to_string(run.shear.rotation) + " kept in the expansion");
    dilate_and_limit(run, sh.sheared);
    return run;
}

std::vector<std::vector<GaussRational>> hessian_limit(const DomainSpec& spec, const OrbitSpec& orbit,
                                                      const JSeries& eps, const TauVector& tau) {
    const int n = spec.n;
    const JSeries inv_eps = inverse(eps, default_truncation(spec));
    std::vector<std::vector<GaussRational>> a(static_cast<std::size_t>(n), std::vector<GaussRational>(static_cast<std::size_t>(n)));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            JSeries d = eval_series(spec.P.diff_z(k).diff_zbar(l), orbit.alpha);
            JSeries x = d * inv_eps * tau.tau[static_cast<std::size_t>(k)] * tau.tau[static_cast<std::size_t>(l)];
            JLimit lim = limit(x);
            if (lim.kind == JLimit::Kind::Diverges)
                throw MathError("hessian entry (" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ") diverges");
            a[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = lim.value * GaussRational(Rational(1, 2));
        }
    return a;
}

ModelDomain model_from_limit(const RPoly& limit) {
    ModelDomain md;
    md.n = limit.nvars();
    md.H = RPoly(md.n);
    for (const auto& [m, c] : limit.terms()) {
        if (m == Monomial::u(md.n)) continue;
        if (m.has_w()) throw MathError("limit polynomial still depends on w through " + to_string(m));
        md.H.add_term(m, c);
    }
    return md;
}

ModelDomain canonicalize_model(const ModelDomain& m) {
    ModelDomain out = m;
    out.H = split_harmonic(m.H).rest;
    for (const auto& [mono, c] : m.H.terms())
        if (mono.is_constant()) out.H.set_term(mono, GaussRational());
    out.canonical = true;
    return out;
}

bool same_canonical_model(const RPoly& a, const RPoly& b) {
    return canonicalize_model(model_from_limit(a)).H == canonicalize_model(model_from_limit(b)).H;
}

Eigen::MatrixXcd quadratic_form(const RPoly& limit) {
    const int n = limit.nvars();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [m, c] : limit.terms()) {
        if (m.has_w() || m.z_degree() != 2) continue;
        int k = -1, l = -1;
        for (int i = 0; i < n; ++i) {
            if (m.b(i) == 1) k = i;
            if (m.a(i) == 1) l = i;
        }
        if (k >= 0 && l >= 0) M(k, l) = c.to_complex(); // coefficient of zbar_k z_l
    }
    return M;
}

BallMap::BallMap(const Eigen::MatrixXcd& H) : H_(H) {
    Eigen::LLT<Eigen::MatrixXcd> llt(H);
    if (llt.info() != Eigen::Success || min_eigenvalue(H) <= 0) throw MathError("ball_map: H is not positive definite");
    S_ = llt.matrixU(); // H = U^* U
}

std::pair<Eigen::VectorXcd, std::complex<double>> BallMap::apply(const Eigen::VectorXcd& z, std::complex<double> w) const {
    std::complex<double> d = 1.0 - w;
    return {(2.0 / d) * (S_ * z), (1.0 + w) / d};
}

BallMap::Check BallMap::check(std::size_t samples, std::uint64_t seed) const {
    const int n = static_cast<int>(H_.rows());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Check c;
    c.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
        Eigen::VectorXcd z(n);
        for (int k = 0; k < n; ++k) z(k) = {g(rng), g(rng)};
        double q = (z.adjoint() * H_ * z)(0, 0).real();
        std::complex<double> w(-q, 3 * g(rng));
        auto [zi, wi] = apply(z, w);
        double r2 = zi.squaredNorm() + std::norm(wi);
        c.max_sphere_deviation = std::max(c.max_sphere_deviation, std::abs(r2 - 1.0));
    }
    auto [z0, w0] = apply(Eigen::VectorXcd::Zero(n), -1.0);
    c.base_point_image = std::sqrt(z0.squaredNorm() + std::norm(w0));
    return c;
}

} // namespace scalelimit
