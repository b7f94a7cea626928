#include <doctest.h>

#include "support.hpp"

using namespace scalelimit;
using namespace scalelimit::testing;

namespace {

struct Loaded {
    DomainSpec spec;
    OrbitSpec orbit;
};

Loaded load(const std::string& d, const std::string& o) {
    DomainSpec spec = load_domain(d + ".domain");
    return {spec, load_orbit(o + ".orbit", spec.n)};
}

void check_rows(const RateReport& r) {
    CHECK_MESSAGE(r.pass, r.lemma);
    CHECK_FALSE(r.rows.empty());
    for (const auto& row : r.rows) {
        CHECK_MESSAGE(row.pass, r.lemma, " ", row.label);
        if (row.kind == "decay" || row.kind == "bounded") {
            REQUIRE(row.exact);
            REQUIRE(row.predicted);
            CHECK(*row.exact == *row.predicted);
            CHECK(std::abs(row.measured - row.exact->get_d()) <= 0.01);
        }
        if (row.kind == "decay") CHECK(*row.exact > 0);
        if (row.kind == "bounded") CHECK(*row.exact == 0);
        if (row.kind == "zero") CHECK_FALSE(row.exact);
    }
}

ScalingRun golden_run(const std::string& name) {
    ExampleCase ex = load_example(name);
    DomainSpec spec = load_domain(ex.domain_file);
    return run_scaling(spec, load_orbit(ex.orbit_file, spec.n), ex.options);
}

} // namespace

TEST_CASE("dilated derivative rates on a uniformly tangential orbit") {
    auto x = load("e124", "e124_uniform");
    RateReport r = check_lemma32(x.spec, x.orbit);
    check_rows(r);
    int bounded = 0;
    for (const auto& row : r.rows) {
        if (row.label == "p=(1,0) q=(1,0)" || row.label == "p=(0,1) q=(0,1)" || row.label == "p=(1,0) q=(0,1)") {
            CHECK(row.kind == "bounded");
            ++bounded;
        }
    }
    CHECK(bounded == 3);
}

TEST_CASE("derivative rates for a zero polynomial are trivial") {
    DomainSpec spec;
    spec.n = 1;
    spec.P = spec.R1 = spec.R = spec.R2 = RPoly(1);
    spec.weights = WeightTuple{{1}};
    spec.weights_given = true;
    OrbitSpec orbit = parse_orbit("alpha_1 = j^(-1/4)\nbeta = -j^(-1)\n", 1);
    RateReport r = check_lemma32(spec, orbit);
    CHECK(r.pass);
    for (const auto& row : r.rows) CHECK(row.kind == "zero");
}

TEST_CASE("rates for the higher-weight part") {
    auto x = load("e124_q", "e124_q");
    check_rows(check_lemma33(x.spec, x.orbit));
}

TEST_CASE("spherical rates on the Kohn-Nirenberg and corank-one models") {
    auto kn = load("kn", "kn_original");
    RateReport r = check_lemma42(kn.spec, kn.orbit);
    check_rows(r);
    bool found = false;
    for (const auto& row : r.rows)
        if (row.kind == "limit") {
            found = true;
            CHECK(row.limit_value == "124");
            CHECK(row.expected_value == "124");
        }
    CHECK(found);
    check_rows(check_lemma42(load("corank1", "corank1").spec, load("corank1", "corank1").orbit));
}

TEST_CASE("tangency-order rates") {
    auto m = load("kn_modified", "kn_modified");
    RateReport r = check_lemma52(m.spec, m.orbit, 2);
    check_rows(r);
    bool witness = false;
    for (const auto& row : r.rows) {
        if (row.label.rfind("(a)", 0) == 0) CHECK(row.kind == "zero");
        if (row.label.rfind("(b)", 0) == 0) CHECK(row.kind == "decay");
        if (row.kind == "limit") {
            witness = true;
            CHECK(row.limit_value == "144");
        }
    }
    CHECK(witness);

    auto r1 = load("kn_modified_r1", "kn_modified_r1");
    RateReport rr = check_lemma52(r1.spec, r1.orbit, 2);
    check_rows(rr);
    bool c_rows = false;
    for (const auto& row : rr.rows)
        if (row.label.rfind("(c)", 0) == 0) c_rows = true;
    CHECK(c_rows);
}

TEST_CASE("rate checks refuse to run without their hypotheses") {
    auto e = load("e124", "e124");
    CHECK_THROWS_WITH_AS(check_lemma32(e.spec, e.orbit), doctest::Contains("hypothesis fails"), InputError);
    auto m = load("kn_modified", "kn_modified");
    CHECK_THROWS_AS(check_lemma52(m.spec, m.orbit, 1), InputError);
    CHECK_THROWS_AS(check_lemma42(e.spec, e.orbit), InputError);
    CHECK_THROWS_AS(check_lemma52(e.spec, e.orbit, 2), InputError);
}

TEST_CASE("margin points keep their distance from the limit surface") {
    RPoly limit = parse_poly("Re(w) + 36*abs2(z1)^2 - 48*abs2(z1)*Re(z1^2)", 1);
    auto pts = margin_points(limit, 0.1, 200, 0.25, 7);
    REQUIRE(pts.size() == 200);
    int inner = 0;
    for (const auto& p : pts) {
        double v = eval(limit, p.z, p.u, p.v);
        CHECK(std::abs(v) >= 0.1 - 1e-12);
        CHECK((v > 0) == (p.sign > 0));
        inner += p.sign < 0;
    }
    CHECK(inner == 100);
}

TEST_CASE("scaled domains converge normally") {
    ScalingRun kn = golden_run("kn_modified");
    // Base point (0, -1) is inside at j = 1e3.
    MarginPoint base{{{0, 0}}, -1.0, 0.0, -1};
    auto b = check_normal_convergence(kn, {base}, {1e3}, 0.1);
    CHECK(b.mismatches[0] == 0);

    ScalingRun e = golden_run("e124");
    MarginPoint outer{{{0, 0}, {0, 0}}, 1.0, 0.0, 1};
    auto o = check_normal_convergence(e, {outer}, normal_j_ladder(), 0.1);
    for (auto c : o.mismatches) CHECK(c == 0);

    for (const auto* run : {&kn, &e}) {
        std::optional<double> prev;
        for (double delta : {0.1, 0.01}) {
            auto pts = margin_points(run->limit, delta, 200, 0.25, 3);
            auto rep = check_normal_convergence(*run, pts, normal_j_ladder(), delta);
            CHECK(rep.monotone);
            REQUIRE(rep.threshold);
            if (prev) CHECK(*rep.threshold >= *prev);
            prev = rep.threshold;
        }
    }
}

TEST_CASE("pipeline inverse reproduces the scaled polynomial") {
    for (const auto& r : golden_runs())
        for (double j : {1e3, 1e6}) CHECK_MESSAGE(pipeline_exactness_error(r.spec, r.orbit, r.run, j, 20, 5) < 1e-8, r.name);
}

TEST_CASE("golden examples") {
    auto rows = golden_examples();
    CHECK(rows.size() == example_names().size());
    for (const auto& g : rows) CHECK_MESSAGE(g.pass, g.name, ": ", g.message, " expected ", g.expected, " got ", g.got);
    auto again = golden_examples();
    REQUIRE(again.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(to_json(again[i]).dump() == to_json(rows[i]).dump());
    CHECK_THROWS_AS(load_example("no_such_case"), InputError);
}

TEST_CASE("reports serialise with a schema tag") {
    auto x = load("kn", "kn_original");
    Json d = document("verify", to_json(check_lemma42(x.spec, x.orbit)));
    CHECK(d["schema"] == kReportSchema);
    CHECK(d["kind"] == "verify");
    CHECK(d.dump() == document("verify", to_json(check_lemma42(x.spec, x.orbit))).dump());
}
