#include "scalelimit/report.hpp"

#include <cmath>
#include <sstream>

namespace scalelimit {

namespace {

Json opt_rational(const std::optional<Rational>& r) { return r ? Json(to_string(*r)) : Json(nullptr); }

Json complex_vector(const std::vector<std::complex<double>>& z) {
    Json a = Json::array();
    for (const auto& c : z) a.push_back(Json::array({c.real(), c.imag()}));
    return a;
}

std::string opt_text(const std::optional<Rational>& r, const char* none = "0 (identically)") {
    return r ? to_string(*r) : std::string(none);
}

std::string fixed(double x, int prec = 6) {
    if (std::isnan(x)) return "-";
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(prec);
    os << x;
    return os.str();
}

} // namespace

Json document(const std::string& kind, Json payload) {
    payload["schema"] = kReportSchema;
    payload["kind"] = kind;
    return payload;
}

Json to_json(const JSeries& x) { return to_string(x); }

Json to_json(const JPoly& p) {
    Json a = Json::array();
    for (const auto& [m, c] : p.terms()) a.push_back({{"monomial", to_string(m)}, {"coeff", to_string(c)}});
    return a;
}

Json to_json(const ValidationReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations)
        v.push_back({{"component", x.component}, {"monomial", x.monomial}, {"weight", x.weight}, {"reason", x.reason}});
    return {{"valid", r.valid}, {"violations", v}};
}

Json to_json(const PshCertificate& c) {
    return {{"psh", c.psh}, {"min_eig", c.min_eig}, {"witness", complex_vector(c.witness)}, {"samples", c.samples}};
}

Json to_json(const StrongHReport& r) {
    return {{"extendible", r.extendible}, {"delta", r.delta}, {"verdict", r.verdict}, {"certificate", to_json(r.at_delta)}};
}

Json to_json(const ConditionVerdict& c) {
    return {{"id", c.id},
            {"verdict", c.holds},
            {"lhs_exponent", opt_rational(c.lhs_exponent)},
            {"rhs_exponent", opt_rational(c.rhs_exponent)},
            {"detail", c.detail}};
}

Json to_json(const ConvergenceReport& r) {
    Json conds = Json::array();
    for (const auto& c : r.conditions) conds.push_back(to_json(c));
    Json j{{"class", r.class_id}, {"label", r.label}, {"conditions", conds}, {"epsilon", to_json(r.epsilon)},
           {"notes", r.notes}};
    j["nu"] = r.nu ? Json(*r.nu) : Json(nullptr);
    if (r.witness)
        j["witness"] = {{"l", r.witness->l}, {"lp", r.witness->lp}, {"profile", to_string(r.witness->profile)},
                        {"value", r.witness->value}};
    else
        j["witness"] = nullptr;
    return j;
}

Json to_json(const TauVector& t) {
    Json taus = Json::array(), mult = Json::array();
    for (const auto& x : t.tau) taus.push_back(to_json(x));
    for (const auto& q : t.multipliers) mult.push_back(to_string(q));
    return {{"mode", to_string(t.mode)}, {"nu", t.nu}, {"tau", taus}, {"multipliers", mult}, {"notes", t.notes}};
}

Json to_json(const ScalingRun& run) {
    Json absorbed = Json::array();
    for (const auto& a : run.shear.absorbed)
        absorbed.push_back({{"monomial", to_string(a.monomial)}, {"shift", to_string(a.shift)},
                            {"post_order", to_string(a.post_order)}, {"pass", a.pass}});
    Json dropped = Json::array();
    for (const auto& d : run.dropped)
        dropped.push_back({{"monomial", to_string(d.monomial)}, {"exponent", to_string(d.order)}, {"coeff", to_string(d.coeff)}});
    ModelDomain canon = canonicalize_model(model_from_limit(run.limit));
    return {{"epsilon", to_json(run.epsilon)},
            {"tau", to_json(run.tau)},
            {"shear_policy", to_string(run.policy)},
            {"truncation", to_string(run.truncation)},
            {"recentered", to_json(run.recentered)},
            {"shear", {{"absorbed", absorbed}, {"H", to_json(run.shear.H)}, {"rotation", to_json(run.shear.rotation)},
                       {"passes", run.shear.passes}}},
            {"scaled", to_json(run.scaled)},
            {"limit", {{"raw", format_poly(run.limit)}, {"canonical", "Re(w) + " + format_poly(canon.H)}}},
            {"dropped", dropped},
            {"diagnostics", run.diagnostics}};
}

Json to_json(const RateReport& r) {
    Json rows = Json::array();
    for (const auto& w : r.rows) {
        Json row{{"label", w.label},
                 {"kind", w.kind},
                 {"predicted", opt_rational(w.predicted)},
                 {"exact", opt_rational(w.exact)},
                 {"measured", std::isnan(w.measured) ? Json(nullptr) : Json(w.measured)},
                 {"pass", w.pass}};
        if (!w.limit_value.empty()) {
            row["limit"] = w.limit_value;
            row["expected"] = w.expected_value;
        }
        rows.push_back(row);
    }
    return {{"lemma", r.lemma}, {"pass", r.pass}, {"rows", rows}, {"notes", r.notes}};
}

Json to_json(const NormalConvergenceReport& r) {
    return {{"delta", r.delta},
            {"j", r.js},
            {"mismatches", r.mismatches},
            {"threshold", r.threshold ? Json(*r.threshold) : Json(nullptr)},
            {"monotone", r.monotone}};
}

Json to_json(const GoldenResult& g) {
    return {{"name", g.name}, {"pass", g.pass}, {"expected", g.expected}, {"got", g.got}, {"message", g.message}};
}

MultitypeReport multitype_report(const DomainSpec& spec, const SamplingOptions& opt) {
    MultitypeReport r;
    r.spec = spec;
    r.validation = validate_domain(spec);
    r.psh = psh_check(spec.P, opt);
    r.strong_h = strong_h_extendible(spec.P, spec.weights, opt);
    return r;
}

std::string text_report(const MultitypeReport& r) {
    std::ostringstream os;
    os << "domain: " << (r.spec.name.empty() ? "(unnamed)" : r.spec.name) << "\n";
    os << "P = " << format_poly(r.spec.P) << "\n";
    os << "multitype: (";
    auto mt = r.spec.weights.multitype();
    for (std::size_t k = 0; k < mt.size(); ++k) os << (k ? "," : "") << mt[k];
    os << ")" << (r.spec.weights_given ? "" : " (inferred)") << "\n";
    os << "valid: " << (r.validation.valid ? "yes" : "no") << "\n";
    for (const auto& v : r.validation.violations)
        os << "  " << v.component << ": " << v.monomial << " weight " << v.weight << ": " << v.reason << "\n";
    os << "P psh (sampled): " << (r.psh.psh ? "yes" : "no") << ", min eigenvalue " << r.psh.min_eig << " over "
       << r.psh.samples << " points\n";
    os << r.strong_h.verdict << ", delta = " << r.strong_h.delta << " (min eigenvalue " << r.strong_h.at_delta.min_eig
       << ")\n";
    return os.str();
}

std::string text_report(const ConvergenceReport& r) {
    std::ostringstream os;
    os << "class: " << r.label << " [" << r.class_id << "]\n";
    os << "epsilon = " << to_string(r.epsilon) << "\n";
    for (const auto& c : r.conditions)
        os << "  " << (c.holds ? "[x] " : "[ ] ") << c.id << ": lhs " << opt_text(c.lhs_exponent) << " vs rhs "
           << opt_text(c.rhs_exponent) << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    if (r.witness)
        os << "witness g_{" << r.witness->l << "," << r.witness->lp << "} = " << to_string(r.witness->profile)
           << ", value " << r.witness->value << "\n";
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    return os.str();
}

std::string text_report(const ScalingRun& run) {
    std::ostringstream os;
    os << "epsilon = " << to_string(run.epsilon) << "\n";
    os << "tau (" << to_string(run.tau.mode) << "):";
    for (const auto& t : run.tau.tau) os << " " << to_string(t);
    os << "\n";
    for (const auto& a : run.shear.absorbed)
        os << "absorbed " << to_string(a.monomial) << ": shift " << to_string(a.shift) << ", post-dilation order "
           << to_string(a.post_order) << "\n";
    os << "limit: " << format_poly(run.limit) << " < 0\n";
    std::size_t shown = 0;
    for (const auto& d : run.dropped) {
        if (++shown > 8) {
            os << "  ... " << run.dropped.size() - 8 << " more dropped terms\n";
            break;
        }
        os << "  dropped " << to_string(d.monomial) << ": " << to_string(d.coeff) << "\n";
    }
    for (const auto& d : run.diagnostics) os << "note: " << d << "\n";
    return os.str();
}

std::string text_report(const RateReport& r) {
    std::ostringstream os;
    os << r.lemma << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& n : r.notes) os << "  # " << n << "\n";
    for (const auto& w : r.rows) {
        os << "  " << (w.pass ? "ok   " : "FAIL ") << w.label << "  " << w.kind << "  predicted "
           << opt_text(w.predicted) << "  exact " << opt_text(w.exact) << "  measured " << fixed(w.measured, 4);
        if (!w.limit_value.empty()) os << "  limit " << w.limit_value << " (expected " << w.expected_value << ")";
        os << "\n";
    }
    return os.str();
}

std::string text_report(const NormalConvergenceReport& r) {
    std::ostringstream os;
    os << "delta = " << r.delta << ", threshold ";
    if (r.threshold)
        os << "j >= " << *r.threshold;
    else
        os << "not reached";
    os << (r.monotone ? ", monotone" : ", NOT monotone") << "\n";
    for (std::size_t i = 0; i < r.js.size(); ++i) os << "  j = " << r.js[i] << ": " << r.mismatches[i] << " sign mismatches\n";
    return os.str();
}

std::string text_report(const std::vector<GoldenResult>& rows) {
    std::ostringstream os;
    for (const auto& g : rows) {
        os << (g.pass ? "PASS " : "FAIL ") << g.name << ": " << g.message << "\n";
        if (!g.pass) os << "  expected " << g.expected << "\n  got      " << g.got << "\n";
    }
    return os.str();
}

} // namespace scalelimit
