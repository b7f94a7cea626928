#include <doctest.h>

#include "support.hpp"

using namespace scalelimit;
using namespace scalelimit::testing;

TEST_CASE("limit models are invariant under eps -> c eps") {
    SuiteResult r = eps_rescaling_suite(100, 61);
    CHECK(r.cases == 100);
    CHECK_MESSAGE(r.failures == 0, r.first_failure);
}

TEST_CASE("capped formula3 runs are not rescaling invariant") {
    // tau_2 is capped at |alpha_2| on the (4,8,1) orbit, so it ignores eps and the |z2|^4 coefficient moves.
    DomainSpec spec = load_domain("e124.domain");
    OrbitSpec orbit = load_orbit("e124.orbit", spec.n);
    ScaleOptions opt;
    opt.multipliers = {Rational(1, 2), Rational(1)};
    ScalingRun base = run_scaling(spec, orbit, opt);
    OrbitSpec moved = orbit;
    moved.beta = orbit.beta - base.epsilon * JSeries(GaussRational(15));
    CHECK(run_scaling(spec, moved, opt).limit != base.limit);
}

TEST_CASE("pipeline exactness over every stored run") {
    CHECK(pipeline_exactness_worst(golden_runs()) < 1e-8);
}

TEST_CASE("reality is preserved at every stage") {
    CHECK(reality_everywhere(golden_runs()));
}

TEST_CASE("symbolic and finite-difference derivatives agree") {
    CHECK(fd_derivative_error(97) < 1e-6);
}

TEST_CASE("ball map sends the Siegel boundary to the sphere") {
    CHECK(ball_map_deviation(Eigen::MatrixXcd::Identity(2, 2), 13) < 1e-10);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2, 2);
    H(0, 0) = 2;
    H(1, 1) = 1;
    CHECK(ball_map_deviation(H, 17) < 1e-10);
}
