// Command-line front end. Exit codes: 0 ok, 1 math failure, 2 input error, 3 verification failure.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scalelimit/embedded.hpp"
#include "scalelimit/errors.hpp"
#include "scalelimit/kvfile.hpp"
#include "scalelimit/report.hpp"

using namespace scalelimit;

namespace {

enum Exit { kOk = 0, kMath = 1, kInput = 2, kVerify = 3 };

// A path on disk, or the name of an embedded data file (with or without its extension).
std::string read_input(const std::string& arg, const std::string& ext) {
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    const auto& files = embedded_files();
    for (const auto& name : {arg, arg + ext})
        if (auto it = files.find(name); it != files.end()) return it->second;
    throw InputError("cannot open '" + arg + "' (not a file or a built-in " + ext + " name)");
}

std::uint64_t default_seed() {
    const char* env = std::getenv("PINCHUK_SEED");
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw InputError(std::string("PINCHUK_SEED is not a non-negative integer: ") + env);
    }
}

struct Flags {
    std::string domain, orbit, suite, example;
    std::string tau = "formula3", tau_mult, shear = "divergent";
    std::optional<int> nu;
    std::optional<std::string> truncation;
    std::size_t budget = 10000, points = 200;
    double tol = 1e-9, delta = 0.1, radius = 0.25;
    std::optional<std::uint64_t> seed;
    bool json = false;
};

ScaleOptions scale_options(const Flags& f) {
    ScaleOptions o;
    o.mode = parse_tau_mode(f.tau);
    o.shear = parse_shear_policy(f.shear);
    o.nu = f.nu;
    if (!f.tau_mult.empty())
        for (const auto& s : split(f.tau_mult, ',')) o.multipliers.push_back(parse_rational(trim(s)));
    if (f.truncation) o.truncation = parse_rational(*f.truncation);
    return o;
}

void emit(const Flags& f, const std::string& kind, const Json& payload, const std::string& text) {
    if (f.json)
        std::cout << document(kind, payload).dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_multitype(const Flags& f) {
    DomainSpec spec = parse_domain(read_input(f.domain, ".domain"));
    SamplingOptions so;
    so.budget = f.budget;
    so.tol = f.tol;
    so.seed = f.seed.value_or(default_seed());
    MultitypeReport r = multitype_report(spec, so);
    Json j{{"domain", spec.name},
           {"n", spec.n},
           {"P", format_poly(spec.P)},
           {"weights", spec.weights.m},
           {"weights_inferred", !spec.weights_given},
           {"multitype", spec.weights.multitype()},
           {"valid", r.validation.valid},
           {"violations", to_json(r.validation)["violations"]},
           {"psh", to_json(r.psh)},
           {"strong_h", to_json(r.strong_h)},
           {"seed", so.seed},
           {"budget", so.budget},
           {"tol", so.tol}};
    emit(f, "multitype", j, text_report(r));
    return r.validation.valid ? kOk : kInput;
}

int cmd_classify(const Flags& f) {
    DomainSpec spec = parse_domain(read_input(f.domain, ".domain"));
    OrbitSpec orbit = parse_orbit(read_input(f.orbit, ".orbit"), spec.n);
    ConvergenceReport r = classify(spec, orbit);
    emit(f, "classify", to_json(r), text_report(r));
    return kOk;
}

int cmd_scale(const Flags& f) {
    DomainSpec spec = parse_domain(read_input(f.domain, ".domain"));
    OrbitSpec orbit = parse_orbit(read_input(f.orbit, ".orbit"), spec.n);
    ScalingRun run = run_scaling(spec, orbit, scale_options(f));
    emit(f, "scale", to_json(run), text_report(run));
    return kOk;
}

int cmd_verify(const Flags& f) {
    if (f.suite == "golden") {
        auto rows = golden_examples();
        Json a = Json::array();
        bool ok = true;
        for (const auto& g : rows) {
            a.push_back(to_json(g));
            ok = ok && g.pass;
        }
        emit(f, "verify_golden", {{"pass", ok}, {"examples", a}}, text_report(rows));
        return ok ? kOk : kVerify;
    }
    if (f.domain.empty() || f.orbit.empty()) throw InputError("verify " + f.suite + " needs DOMAIN and ORBIT");
    DomainSpec spec = parse_domain(read_input(f.domain, ".domain"));
    OrbitSpec orbit = parse_orbit(read_input(f.orbit, ".orbit"), spec.n);
    if (f.suite == "lemma32" || f.suite == "lemma33" || f.suite == "lemma42" || f.suite == "lemma52") {
        RateReport r;
        if (f.suite == "lemma32")
            r = check_lemma32(spec, orbit);
        else if (f.suite == "lemma33")
            r = check_lemma33(spec, orbit);
        else if (f.suite == "lemma42")
            r = check_lemma42(spec, orbit);
        else {
            int nu = f.nu ? *f.nu : 0;
            if (!f.nu) {
                ConvergenceReport cr = classify(spec, orbit);
                if (!cr.nu) throw InputError("lemma52 needs --nu (the orbit has no tangency order)");
                nu = *cr.nu;
            }
            r = check_lemma52(spec, orbit, nu);
        }
        emit(f, "verify_" + f.suite, to_json(r), text_report(r));
        return r.pass ? kOk : kVerify;
    }
    ScalingRun run = run_scaling(spec, orbit, scale_options(f));
    const std::uint64_t seed = f.seed.value_or(default_seed());
    if (f.suite == "normal") {
        if (!(f.delta > 0)) throw InputError("--delta must be positive");
        auto pts = margin_points(run.limit, f.delta, f.points, f.radius, seed);
        NormalConvergenceReport r = check_normal_convergence(run, pts, normal_j_ladder(), f.delta);
        Json j = to_json(r);
        j["points"] = f.points;
        j["radius"] = f.radius;
        j["seed"] = seed;
        emit(f, "verify_normal", j, text_report(r));
        return r.threshold && r.monotone ? kOk : kVerify;
    }
    if (f.suite == "exactness") {
        Json rows = Json::array();
        std::ostringstream os;
        bool ok = true;
        for (double j : {1e3, 1e6}) {
            double err = pipeline_exactness_error(spec, orbit, run, j, f.points, seed);
            bool pass = err <= 1e-8;
            ok = ok && pass;
            rows.push_back({{"j", j}, {"max_rel_error", err}, {"pass", pass}});
            os << (pass ? "ok   " : "FAIL ") << "j = " << j << ": max relative error " << err << "\n";
        }
        emit(f, "verify_exactness", {{"pass", ok}, {"rows", rows}, {"seed", seed}}, os.str());
        return ok ? kOk : kVerify;
    }
    throw InputError("unknown suite '" + f.suite + "' (lemma32, lemma33, lemma42, lemma52, normal, exactness, golden)");
}

int cmd_example(const Flags& f) {
    if (f.example == "list") {
        auto names = example_names();
        std::ostringstream os;
        for (const auto& n : names) os << n << "\n";
        emit(f, "example_list", {{"examples", names}}, os.str());
        return kOk;
    }
    ExampleCase ex = load_example(f.example);
    DomainSpec spec = load_domain(ex.domain_file);
    OrbitSpec orbit = load_orbit(ex.orbit_file, spec.n);
    ScalingRun run = run_scaling(spec, orbit, ex.options);
    GoldenResult g = run_golden(ex);
    Json j{{"name", ex.name}, {"golden", to_json(g)}, {"run", to_json(run)}};
    emit(f, "example", j, text_report(run) + text_report(std::vector<GoldenResult>{g}));
    return g.pass ? kOk : kVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scaling limits of model hypersurfaces along orbits"};
    app.require_subcommand(1);
    Flags f;

    auto add_json = [&](CLI::App* c) { c->add_flag("--json", f.json, "Emit a JSON report"); };
    auto add_sampling = [&](CLI::App* c) {
        c->add_option("--budget", f.budget, "Levi sampling points")->capture_default_str();
        c->add_option("--tol", f.tol, "Eigenvalue tolerance")->capture_default_str();
        c->add_option("--seed", f.seed, "Random seed (default: PINCHUK_SEED or 0)");
    };
    auto add_scale = [&](CLI::App* c) {
        c->add_option("--tau", f.tau, "formula3 | formula4 | formula5 | catlin")->capture_default_str();
        c->add_option("--tau-mult", f.tau_mult, "Positive rational multipliers a/b,...");
        c->add_option("--shear", f.shear, "divergent | all")->capture_default_str();
        c->add_option("--nu", f.nu, "Tangency order for formula5");
        c->add_option("--truncation", f.truncation, "Relative truncation order for rational powers");
    };

    auto* mt = app.add_subcommand("multitype", "Validate a domain, report its multitype and h-extendibility");
    mt->add_option("domain", f.domain, "Domain file or built-in name")->required();
    add_sampling(mt);
    add_json(mt);

    auto* cl = app.add_subcommand("classify", "Classify how an orbit approaches the origin");
    cl->add_option("domain", f.domain)->required();
    cl->add_option("orbit", f.orbit)->required();
    add_json(cl);

    auto* sc = app.add_subcommand("scale", "Run the scaling pipeline and print the limit domain");
    sc->add_option("domain", f.domain)->required();
    sc->add_option("orbit", f.orbit)->required();
    add_scale(sc);
    add_json(sc);

    auto* vf = app.add_subcommand("verify", "Run a verification suite");
    vf->add_option("suite", f.suite, "lemma32 | lemma33 | lemma42 | lemma52 | normal | exactness | golden")->required();
    vf->add_option("domain", f.domain);
    vf->add_option("orbit", f.orbit);
    add_scale(vf);
    vf->add_option("--delta", f.delta, "Margin for normal convergence")->capture_default_str();
    vf->add_option("--points", f.points, "Sample points")->capture_default_str();
    vf->add_option("--radius", f.radius, "Sampling radius in the scaled variables")->capture_default_str();
    vf->add_option("--seed", f.seed, "Random seed (default: PINCHUK_SEED or 0)");
    add_json(vf);

    auto* exm = app.add_subcommand("example", "Run a built-in example and diff against its expected limit");
    exm->add_option("name", f.example, "Example name, or 'list'")->required();
    add_json(exm);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }
    try {
        if (*mt) return cmd_multitype(f);
        if (*cl) return cmd_classify(f);
        if (*sc) return cmd_scale(f);
        if (*vf) return cmd_verify(f);
        if (*exm) return cmd_example(f);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const MathError& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return kMath;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerify;
    }
    return kInput;
}
