// Python bindings. Reports cross the boundary as JSON strings; the package wrapper decodes them.
#include <filesystem>
#include <fstream>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scalelimit/embedded.hpp"
#include "scalelimit/errors.hpp"
#include "scalelimit/kvfile.hpp"
#include "scalelimit/report.hpp"

namespace py = pybind11;
using namespace scalelimit;

namespace {

// Inline text (contains '='), a file path, or a built-in data name.
std::string resolve(const std::string& arg, const std::string& ext) {
    if (arg.find('=') != std::string::npos) return arg;
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    const auto& files = embedded_files();
    for (const auto& name : {arg, arg + ext})
        if (auto it = files.find(name); it != files.end()) return it->second;
    throw InputError("cannot resolve '" + arg + "' as text, file or built-in " + ext + " name");
}

std::string dump(const std::string& kind, Json payload) { return document(kind, std::move(payload)).dump(); }

std::string py_multitype(const std::string& domain, std::size_t budget, double tol, std::uint64_t seed) {
    DomainSpec spec = parse_domain(resolve(domain, ".domain"));
    SamplingOptions so;
    so.budget = budget;
    so.tol = tol;
    so.seed = seed;
    MultitypeReport r = multitype_report(spec, so);
    return dump("multitype", {{"n", spec.n},
                              {"P", format_poly(spec.P)},
                              {"weights", spec.weights.m},
                              {"multitype", spec.weights.multitype()},
                              {"valid", r.validation.valid},
                              {"psh", to_json(r.psh)},
                              {"strong_h", to_json(r.strong_h)}});
}

std::string py_classify(const std::string& domain, const std::string& orbit) {
    DomainSpec spec = parse_domain(resolve(domain, ".domain"));
    return dump("classify", to_json(classify(spec, parse_orbit(resolve(orbit, ".orbit"), spec.n))));
}

std::string py_scale(const std::string& domain, const std::string& orbit, const std::string& tau,
                     const std::vector<std::string>& multipliers, const std::string& shear, std::optional<int> nu) {
    DomainSpec spec = parse_domain(resolve(domain, ".domain"));
    OrbitSpec o = parse_orbit(resolve(orbit, ".orbit"), spec.n);
    ScaleOptions opt;
    opt.mode = parse_tau_mode(tau);
    opt.shear = parse_shear_policy(shear);
    opt.nu = nu;
    for (const auto& m : multipliers) opt.multipliers.push_back(parse_rational(m));
    return dump("scale", to_json(run_scaling(spec, o, opt)));
}

std::string py_verify(const std::string& suite, const std::string& domain, const std::string& orbit,
                      std::optional<int> nu) {
    if (suite == "golden") {
        Json a = Json::array();
        bool ok = true;
        for (const auto& g : golden_examples()) {
            a.push_back(to_json(g));
            ok = ok && g.pass;
        }
        return dump("verify_golden", {{"pass", ok}, {"examples", a}});
    }
    DomainSpec spec = parse_domain(resolve(domain, ".domain"));
    OrbitSpec o = parse_orbit(resolve(orbit, ".orbit"), spec.n);
    RateReport r;
    if (suite == "lemma32")
        r = check_lemma32(spec, o);
    else if (suite == "lemma33")
        r = check_lemma33(spec, o);
    else if (suite == "lemma42")
        r = check_lemma42(spec, o);
    else if (suite == "lemma52") {
        if (!nu) nu = classify(spec, o).nu;
        if (!nu) throw InputError("lemma52 needs nu (the orbit has no tangency order)");
        r = check_lemma52(spec, o, *nu);
    } else
        throw InputError("unknown suite '" + suite + "' (lemma32, lemma33, lemma42, lemma52, golden)");
    return dump("verify_" + suite, to_json(r));
}

std::string py_example(const std::string& name) {
    ExampleCase ex = load_example(name);
    DomainSpec spec = load_domain(ex.domain_file);
    ScalingRun run = run_scaling(spec, load_orbit(ex.orbit_file, spec.n), ex.options);
    return dump("example", {{"name", ex.name}, {"golden", to_json(run_golden(ex))}, {"run", to_json(run)}});
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact scaling limits of weighted model hypersurfaces";
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);
    py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);

    m.def("multitype", &py_multitype, py::arg("domain"), py::arg("budget") = 10000, py::arg("tol") = 1e-9,
          py::arg("seed") = 0);
    m.def("classify", &py_classify, py::arg("domain"), py::arg("orbit"));
    m.def("scale", &py_scale, py::arg("domain"), py::arg("orbit"), py::arg("tau") = "formula3",
          py::arg("multipliers") = std::vector<std::string>{}, py::arg("shear") = "divergent",
          py::arg("nu") = std::nullopt);
    m.def("verify", &py_verify, py::arg("suite"), py::arg("domain") = "", py::arg("orbit") = "",
          py::arg("nu") = std::nullopt);
    m.def("example", &py_example, py::arg("name"));
    m.def("example_names", &example_names);
    m.attr("schema_version") = kReportSchema;
    m.attr("__version__") = "0.1.0";
}
