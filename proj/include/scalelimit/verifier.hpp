#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scalelimit/scaler.hpp"

namespace scalelimit {

// j ladder for slope measurements: 10^2, ..., 10^6.
std::vector<double> default_j_ladder();
// Half-decade ladder 10^2 .. 10^8 for sign-agreement thresholds.
std::vector<double> normal_j_ladder();

struct RateRow {
    std::string label;
    std::string kind;                   // "decay", "bounded", "limit", "zero"
    std::optional<Rational> predicted;  // nullopt: identically zero predicted
    std::optional<Rational> exact;      // nullopt: identically zero
    double measured = 0;                // decay exponent from the log-slope (NaN for zero rows)
    std::string limit_value;            // for "limit" rows
    std::string expected_value;
    bool pass = false;
};

struct RateReport {
    std::string lemma;
    std::vector<RateRow> rows;
    std::vector<std::string> notes;
    bool pass = true;
};

// Weight-1 part of a uniformly tangential orbit: X_{pq} = eps^{-1} |D^p Dbar^q P(alpha)| prod tau^{p+q}.
RateReport check_lemma32(const DomainSpec& spec, const OrbitSpec& orbit, const std::vector<double>& js = default_j_ladder());
// Same quantity for the higher-weight part R1 of the spec.
RateReport check_lemma33(const DomainSpec& spec, const OrbitSpec& orbit, const std::vector<double>& js = default_j_ladder());
// Corank-one / planar: rows k >= 3 decay, k = 2 Laplacian row equals (2m)^2 g + g''.
RateReport check_lemma42(const DomainSpec& spec, const OrbitSpec& orbit, const std::vector<double>& js = default_j_ladder());
// Order-2nu tangency rows (a)-(d).
RateReport check_lemma52(const DomainSpec& spec, const OrbitSpec& orbit, int nu,
                         const std::vector<double>& js = default_j_ladder());

struct MarginPoint {
    std::vector<std::complex<double>> z;
    double u = 0, v = 0;
    int sign = 0; // sign of the limit value (-1 inner, +1 outer)
};

// Points at distance at least delta from the limit hypersurface in the value of the limit polynomial.
std::vector<MarginPoint> margin_points(const RPoly& limit, double delta, std::size_t count, double radius, std::uint64_t seed);

struct NormalConvergenceReport {
    double delta = 0;
    std::vector<double> js;
    std::vector<std::size_t> mismatches; // per j
    std::optional<double> threshold;      // smallest j from which all later j agree
    bool monotone = true;
};

NormalConvergenceReport check_normal_convergence(const ScalingRun& run, const std::vector<MarginPoint>& pts,
                                                 const std::vector<double>& js, double delta);

// eps^{-1} rho(pipeline^{-1}(point)) against the scaled polynomial at j; returns the
// largest |a - b| / max(1, |b|) over the points.
double pipeline_exactness_error(const DomainSpec& spec, const OrbitSpec& orbit, const ScalingRun& run, double j,
                                std::size_t npoints, std::uint64_t seed);

struct ExampleCase {
    std::string name;
    std::string domain_file, orbit_file;
    ScaleOptions options;
    std::string expect;
    bool canonical_compare = false;
};

std::vector<std::string> example_names();
ExampleCase load_example(const std::string& name);
DomainSpec load_domain(const std::string& file);
OrbitSpec load_orbit(const std::string& file, int n);

struct GoldenResult {
    std::string name;
    bool pass = false;
    std::string expected, got, message;
};

GoldenResult run_golden(const ExampleCase& ex);
std::vector<GoldenResult> golden_examples();

} // namespace scalelimit
