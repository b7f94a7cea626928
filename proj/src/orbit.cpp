#include "scalelimit/orbit.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "scalelimit/kvfile.hpp"

namespace scalelimit {

OrbitSpec parse_orbit(const std::string& text, int n) {
    OrbitSpec o;
    o.alpha.assign(static_cast<std::size_t>(n), JSeries());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    bool have_beta = false;
    for (const auto& kv : parse_key_values(text)) {
        auto where = [&](const std::string& msg) { return "line " + std::to_string(kv.line) + ": " + msg; };
        JSeries value;
        try {
            value = parse_jseries(kv.value);
        } catch (const ParseError& e) {
            throw InputError(where(e.what()));
        }
        if (kv.key == "beta") {
            o.beta = value;
            have_beta = true;
        } else if (kv.key.rfind("alpha_", 0) == 0) {
            int k = 0;
            try {
                std::size_t used = 0;
                k = std::stoi(kv.key.substr(6), &used);
                if (used != kv.key.size() - 6) throw std::invalid_argument(kv.key);
            } catch (const std::exception&) {
                throw InputError(where("bad coordinate key '" + kv.key + "'"));
            }
            if (k < 1 || k > n) throw InputError(where(kv.key + " out of range for n = " + std::to_string(n)));
            o.alpha[static_cast<std::size_t>(k - 1)] = value;
            seen[static_cast<std::size_t>(k - 1)] = true;
        } else {
            throw InputError(where("unknown key '" + kv.key + "'"));
        }
    }
    if (!have_beta) throw InputError("orbit file is missing 'beta'");
    for (int k = 0; k < n; ++k)
        if (!seen[static_cast<std::size_t>(k)]) throw InputError("orbit file is missing alpha_" + std::to_string(k + 1));
    validate_orbit(o, n);
    return o;
}

std::optional<GaussRational> ray_direction(const JSeries& x) {
    if (x.is_zero()) return std::nullopt;
    const GaussRational c0 = x.leading_coeff();
    for (const auto& t : x.terms()) {
        GaussRational q = t.c * c0.conj();
        if (!q.is_real() || sgn(q.re()) <= 0)
            throw InputError("orbit coordinate " + to_string(x) + " does not stay on a fixed ray");
    }
    return exact_direction(c0);
}

double ray_angle(const JSeries& x) {
    auto c = x.leading_coeff().to_complex();
    return std::arg(c);
}

void validate_orbit(const OrbitSpec& orbit, int n) {
    if (static_cast<int>(orbit.alpha.size()) != n)
        throw InputError("orbit has " + std::to_string(orbit.alpha.size()) + " coordinates, expected " + std::to_string(n));
    auto converges = [](const JSeries& x, const std::string& name) {
        if (!x.exact()) throw InputError(name + " must be an exact series");
        if (!x.is_zero() && sgn(*x.order()) <= 0)
            throw InputError(name + " does not converge to 0 (leading exponent " + to_string(*x.order()) + ")");
    };
    for (int k = 0; k < n; ++k) {
        converges(orbit.alpha[static_cast<std::size_t>(k)], "alpha_" + std::to_string(k + 1));
        ray_direction(orbit.alpha[static_cast<std::size_t>(k)]);
    }
    converges(orbit.beta, "beta");
}

JSeries eval_series(const RPoly& p, const std::vector<JSeries>& alpha, const JSeries& u, const JSeries& v) {
    const int n = p.nvars();
    if (static_cast<int>(alpha.size()) != n) throw InputError("point has wrong dimension");
    std::map<std::pair<int, int>, JSeries> cache; // (var, power)
    auto power = [&](int var, int e) -> const JSeries& {
        auto key = std::make_pair(var, e);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        JSeries base;
        if (var < n)
            base = alpha[static_cast<std::size_t>(var)];
        else if (var < 2 * n)
            base = alpha[static_cast<std::size_t>(var - n)].conj();
        else if (var == 2 * n)
            base = u;
        else
            base = v;
        return cache.emplace(key, base.pow(static_cast<unsigned>(e))).first->second;
    };
    JSeries s;
    for (const auto& [m, c] : p.terms()) {
        JSeries t(c);
        for (int k = 0; k < n && !t.is_zero(); ++k) {
            if (m.a(k)) t *= power(k, m.a(k));
            if (m.b(k)) t *= power(n + k, m.b(k));
        }
        if (m.eu()) t *= power(2 * n, m.eu());
        if (m.ev()) t *= power(2 * n + 1, m.ev());
        s += t;
    }
    return s;
}

JSeries boundary_gap(const DomainSpec& spec, const OrbitSpec& orbit) {
    validate_orbit(orbit, spec.n);
    JSeries re_b = orbit.beta.real_part(), im_b = orbit.beta.imag_part();
    JSeries eps = -re_b;
    eps -= eval_series(spec.P, orbit.alpha);
    eps -= eval_series(spec.R1, orbit.alpha);
    eps -= eval_series(spec.R2, orbit.alpha, JSeries(), im_b);
    eps -= im_b * eval_series(spec.R, orbit.alpha);
    if (eps.is_zero()) throw MathError("orbit lies on the boundary (epsilon is identically zero)");
    GaussRational lead = eps.leading_coeff();
    if (!lead.is_real() || sgn(lead.re()) <= 0)
        throw MathError("orbit is not inside the domain: epsilon = " + to_string(eps));
    return eps;
}

std::optional<Rational> order_of(const JSeries& x) { return x.order(); }

const ConditionVerdict* ConvergenceReport::find(const std::string& id) const {
    for (const auto& c : conditions)
        if (c.id == id) return &c;
    return nullptr;
}

bool is_corank_one(const DomainSpec& spec) {
    if (spec.n == 1) return true;
    for (int k = 1; k < spec.n; ++k)
        if (spec.weights.m[static_cast<std::size_t>(k)] != 1) return false;
    return true;
}

namespace {

// |x| <~ |y|  (x zero counts as small)
bool lesssim(const JSeries& x, const Rational& y_order) { return x.is_zero() || *x.order() >= y_order; }

std::string profile_value(const TrigPoly& g, const JSeries& alpha) {
    auto omega = ray_direction(alpha);
    if (omega) return to_string(g.eval_exact(*omega));
    std::ostringstream os;
    os.precision(17);
    os << g.eval(ray_angle(alpha)).real();
    return os.str();
}

std::string two_nu_label(int m) { return "1/" + std::to_string(2 * m); }

} // namespace

TangencyOrderResult check_tangency_order(const DomainSpec& spec, const OrbitSpec& orbit, const JSeries& eps, int nu) {
    if (spec.n != 1) throw InputError("order-2nu tangency is defined for n = 1");
    const int m = spec.weights.m[0];
    if (nu < 1 || nu > m) throw InputError("nu must lie in 1.." + std::to_string(m));
    const JSeries& a = orbit.alpha[0];
    TangencyOrderResult r;
    r.nu = nu;
    if (a.is_zero()) {
        r.conditions.push_back({"order", false, std::nullopt, std::nullopt, "alpha is identically zero"});
        return r;
    }
    const Rational ord_a = *a.order();
    const Rational ord_S = *eps.order() - 2 * m * ord_a;
    bool all_iii = true;
    for (int l = 1; l < 2 * nu; ++l)
        for (int lp = 1; l + lp < 2 * nu; ++lp) {
            JSeries g = eval_series(spec.P.diff_z(0, l).diff_zbar(0, lp), orbit.alpha);
            JSeries h = eval_series(spec.R1.diff_z(0, l).diff_zbar(0, lp), orbit.alpha);
            JSeries d = g + h;
            ConditionVerdict c;
            c.id = "order_profile(" + std::to_string(l) + "," + std::to_string(lp) + ")";
            c.rhs_exponent = Rational(0);
            Rational e = Rational(l + lp, 2 * nu) - 1;
            std::string parts = "g part " + (g.is_zero() ? std::string("0") : to_string(g)) + ", h part " +
                                (h.is_zero() ? std::string("0") : to_string(h));
            if (d.is_zero()) {
                c.holds = true;
                c.detail = "profile factor vanishes identically; " + parts;
            } else {
                Rational ord_x = e * ord_S + *d.order() - (2 * m - l - lp) * ord_a;
                ord_x.canonicalize();
                c.lhs_exponent = ord_x;
                c.holds = sgn(ord_x) > 0;
                c.detail = parts;
            }
            all_iii = all_iii && c.holds;
            r.conditions.push_back(std::move(c));
        }
    // (iv): search l0 = nu, nu-1, nu+1, ...
    std::vector<int> order{nu};
    for (int d = 1; d < nu; ++d) {
        order.push_back(nu - d);
        order.push_back(nu + d);
    }
    ConditionVerdict iv{"order_minimum", false, std::nullopt, Rational(0), "no order-" + std::to_string(2 * nu) + " profile is nonzero on the ray"};
    for (int l0 : order) {
        int l0p = 2 * nu - l0;
        JSeries d = eval_series(spec.P.diff_z(0, l0).diff_zbar(0, l0p), orbit.alpha);
        if (d.is_zero()) continue;
        RPoly p1 = spec.P;
        TrigPoly g = circle_profile(p1, l0, l0p);
        ProfileWitness w{l0, l0p, g, profile_value(g, a)};
        iv.holds = true;
        iv.lhs_exponent = Rational(0);
        iv.detail = "g_{" + std::to_string(l0) + "," + std::to_string(l0p) + "} = " + to_string(g) + ", value " + w.value;
        r.witness = w;
        break;
    }
    r.conditions.push_back(iv);
    r.holds = all_iii && iv.holds;
    return r;
}

ConvergenceReport classify(const DomainSpec& spec, const OrbitSpec& orbit) {
    ConvergenceReport rep;
    rep.epsilon = boundary_gap(spec, orbit);
    const Rational ord_eps = *rep.epsilon.order();
    const int n = spec.n;
    const auto& m = spec.weights.m;

    // (a)
    JSeries im_b = orbit.beta.imag_part();
    ConditionVerdict a{"a", lesssim(im_b, ord_eps), im_b.order(), ord_eps, "|Im beta| <~ eps"};
    rep.conditions.push_back(a);

    bool nontangential = true, lambda_nontangential = true, all_b = true;
    std::vector<std::optional<Rational>> ord_pow(static_cast<std::size_t>(n)); // order of |alpha_k|^{2m_k}
    for (int k = 0; k < n; ++k) {
        const JSeries& ak = orbit.alpha[static_cast<std::size_t>(k)];
        if (!ak.is_zero()) ord_pow[static_cast<std::size_t>(k)] = 2 * m[static_cast<std::size_t>(k)] * *ak.order();
        nontangential = nontangential && lesssim(ak, ord_eps);
        lambda_nontangential = lambda_nontangential && (ak.is_zero() || *ord_pow[static_cast<std::size_t>(k)] >= ord_eps);
        ConditionVerdict b;
        b.id = "b" + std::to_string(k + 1);
        b.lhs_exponent = ord_eps;
        b.rhs_exponent = ord_pow[static_cast<std::size_t>(k)];
        b.holds = !ak.is_zero() && ord_eps > *ord_pow[static_cast<std::size_t>(k)];
        b.detail = "eps = o(|alpha_" + std::to_string(k + 1) + "|^" + std::to_string(2 * m[static_cast<std::size_t>(k)]) + ")";
        all_b = all_b && b.holds;
        rep.conditions.push_back(b);
    }
    bool uniform_c = true;
    if (n >= 2) {
        ConditionVerdict c{"c", true, ord_pow[0], ord_pow[0], "|alpha_1|^{2m_1} ~ ... ~ |alpha_n|^{2m_n}"};
        for (int k = 1; k < n; ++k) {
            if (ord_pow[static_cast<std::size_t>(k)] != ord_pow[0]) {
                c.holds = false;
                c.rhs_exponent = ord_pow[static_cast<std::size_t>(k)];
                c.detail = "fails for k = " + std::to_string(k + 1);
                break;
            }
        }
        if (c.holds && !ord_pow[0]) c.holds = false;
        uniform_c = c.holds;
        rep.conditions.push_back(c);
    }

    // Spherical tangency for corank-one models.
    bool spherical = false;
    if (is_corank_one(spec)) {
        const JSeries& a1 = orbit.alpha[0];
        const int m1 = m[0];
        RPoly p1 = restrict_zero(spec.P, [&] {
            std::vector<int> v;
            for (int k = 1; k < n; ++k) v.push_back(k);
            return v;
        }());
        ConditionVerdict c41{"laplacian", false, std::nullopt, std::nullopt, ""};
        if (!a1.is_zero()) {
            JSeries lap = eval_series(laplacian(p1), orbit.alpha);
            c41.rhs_exponent = (2 * m1 - 2) * *a1.order();
            c41.lhs_exponent = lap.order();
            GaussRational lead = lap.leading_coeff();
            c41.holds = !lap.is_zero() && lead.is_real() && sgn(lead.re()) > 0 && *lap.order() == *c41.rhs_exponent;
            try {
                RPoly one_var = p1;
                if (n > 1) {
                    // Re-express as a one-variable polynomial.
                    RPoly q(1);
                    for (const auto& [mono, co] : p1.terms()) {
                        Monomial mm(1);
                        mm.a(0) = mono.a(0);
                        mm.b(0) = mono.b(0);
                        q.add_term(mm, co);
                    }
                    one_var = q;
                }
                TrigPoly prof = laplacian_profile(one_var);
                c41.detail = "(2m)^2 g + g'' = " + to_string(prof) + ", value on the ray " + profile_value(prof, a1);
            } catch (const InputError&) {
                c41.detail = "Laplacian of the z1 part on the orbit";
            }
        } else {
            c41.detail = "alpha_1 is identically zero";
        }
        rep.conditions.push_back(c41);
        spherical = a.holds && rep.find("b1")->holds && c41.holds;
    }

    const std::string tang = two_nu_label(m[0]);
    if (!a.holds) {
        rep.class_id = "inadmissible";
        rep.label = "not admissible: |Im beta| is not O(eps)";
    } else if (nontangential) {
        rep.class_id = "nontangential";
        rep.label = "nontangential";
    } else if (lambda_nontangential) {
        rep.class_id = "lambda_nontangential";
        rep.label = "Λ-nontangential";
    } else if (spherical) {
        rep.class_id = "spherical";
        rep.label = "spherically " + tang + "-tangential";
    } else {
        bool order_found = false;
        if (n == 1 && !orbit.alpha[0].is_zero()) {
            for (int nu = 2; nu <= m[0]; ++nu) {
                TangencyOrderResult d = check_tangency_order(spec, orbit, rep.epsilon, nu);
                if (d.holds) {
                    rep.nu = nu;
                    rep.witness = d.witness;
                    for (auto& c : d.conditions) rep.conditions.push_back(c);
                    order_found = true;
                    break;
                }
                rep.notes.push_back("order " + std::to_string(2 * nu) + " tangency fails");
            }
        }
        if (order_found) {
            rep.class_id = "spherical_order";
            rep.label = "spherically " + tang + "-tangential of order " + std::to_string(2 * *rep.nu);
        } else if (n == 1) {
            rep.class_id = "tangential_not_spherical";
            rep.label = tang + "-tangential, not spherical";
        } else if (all_b && uniform_c) {
            rep.class_id = "uniform_lambda_tangential";
            rep.label = "uniformly Λ-tangential";
        } else {
            rep.class_id = "lambda_tangential_nonuniform";
            rep.label = "Λ-tangential, not uniform";
        }
    }
    return rep;
}

} // namespace scalelimit
