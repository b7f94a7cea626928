#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scalelimit/orbit.hpp"

namespace scalelimit {

enum class TauMode { Formula3, Formula4, Formula5, Catlin };
enum class ShearPolicy { DivergentOnly, AllHarmonicUptoWeight1 };

std::string to_string(TauMode m);
TauMode parse_tau_mode(const std::string& s);
std::string to_string(ShearPolicy p);
ShearPolicy parse_shear_policy(const std::string& s);

struct TauVector {
    TauMode mode = TauMode::Formula3;
    int nu = 0; // formula5 only
    std::vector<JSeries> tau;
    std::vector<Rational> multipliers;
    std::vector<std::string> notes;
};

// Default relative truncation order for rational powers: max weight in rho plus 2.
Rational default_truncation(const DomainSpec& spec);

// rho(alpha + z, Re beta + eps + u, Im beta + v) expanded in (z, u, v).
JPoly recenter(const DomainSpec& spec, const OrbitSpec& orbit, const JSeries& eps);

// Catlin mode reads the recentered coefficients; the other modes ignore them.
TauVector make_tau(const DomainSpec& spec, const OrbitSpec& orbit, const JSeries& eps, TauMode mode,
                   const std::vector<Rational>& multipliers, int nu, const JPoly* recentered,
                   const Rational& truncation);

// Decay exponent after z_k -> tau_k z_k, (u, v) -> eps (u, v) and division by eps.
std::optional<Rational> post_dilation_order(const Monomial& m, const JSeries& coeff, const TauVector& tau,
                                            const JSeries& eps);

struct AbsorbedTerm {
    Monomial monomial;    // holomorphic monomial in the recentered variables
    JSeries shift;        // coefficient of this monomial in the w-shift 2H
    Rational post_order;  // its decay exponent after dilation
    int pass = 0;
};

struct ShearRecord {
    std::vector<AbsorbedTerm> absorbed;
    JPoly H;              // w_new = w_old + 2H(z)
    JSeries rotation;     // coefficient of Im w after shearing (base-point rotation)
    int passes = 0;
};

struct ShearResult {
    JPoly sheared;
    ShearRecord record;
};

ShearResult shear_absorb(const JPoly& recentered, const TauVector& tau, const JSeries& eps, ShearPolicy policy,
                         const WeightTuple& weights);

struct DroppedTerm {
    Monomial monomial;
    Rational order;
    JSeries coeff;
};

struct ScalingRun {
    JSeries epsilon;
    TauVector tau;
    ShearPolicy policy = ShearPolicy::DivergentOnly;
    Rational truncation;
    JPoly recentered;
    ShearRecord shear;
    JPoly scaled;
    RPoly limit;
    std::vector<DroppedTerm> dropped;
    std::vector<std::string> diagnostics;
};

// Dilate, divide by eps and take termwise limits. Throws MathError
// ("dilation mismatch") when a term diverges.
void dilate_and_limit(ScalingRun& run, const JPoly& sheared);

struct ScaleOptions {
    TauMode mode = TauMode::Formula3;
    std::vector<Rational> multipliers;  // empty: all 1
    ShearPolicy shear = ShearPolicy::DivergentOnly;
    std::optional<int> nu;              // formula5; inferred by classification when absent
    std::optional<Rational> truncation; // relative order for rational powers
};

ScalingRun run_scaling(const DomainSpec& spec, const OrbitSpec& orbit, const ScaleOptions& opt);

// a_{kl} = (1/2) lim d^2P/dz_k dzbar_l (alpha) eps^{-1} tau_k tau_l
std::vector<std::vector<GaussRational>> hessian_limit(const DomainSpec& spec, const OrbitSpec& orbit,
                                                      const JSeries& eps, const TauVector& tau);

// {Re w + H(z) < 0}
struct ModelDomain {
    int n = 0;
    RPoly H;
    bool canonical = false;
};

ModelDomain model_from_limit(const RPoly& limit);
ModelDomain canonicalize_model(const ModelDomain& m);
// Exact equality of two limit polynomials after removing pluriharmonic terms.
bool same_canonical_model(const RPoly& a, const RPoly& b);

// (z, w) -> (2 S z / (1 - w), (1 + w)/(1 - w)) with S^* S = H.
// Maps {Re w + z^* H z < 0} onto the unit ball.
class BallMap {
public:
    explicit BallMap(const Eigen::MatrixXcd& H);

    const Eigen::MatrixXcd& S() const { return S_; }
    std::pair<Eigen::VectorXcd, std::complex<double>> apply(const Eigen::VectorXcd& z, std::complex<double> w) const;

    struct Check {
        double max_sphere_deviation = 0; // | |image|^2 - 1 | over boundary samples
        double base_point_image = 0;     // |image of (0, -1)|
        std::size_t samples = 0;
    };
    Check check(std::size_t samples, std::uint64_t seed) const;

private:
    Eigen::MatrixXcd H_, S_;
};

// Hermitian matrix of the quadratic part sum H_{kl} z_k zbar_l of a limit polynomial.
Eigen::MatrixXcd quadratic_form(const RPoly& limit);

} // namespace scalelimit
