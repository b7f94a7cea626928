#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalelimit/geometry.hpp"
#include "scalelimit/jseries.hpp"
#include "scalelimit/trigpoly.hpp"

namespace scalelimit {

// eta_j = (alpha_j, beta_j), each coordinate a closed-form series in j.
struct OrbitSpec {
    std::vector<JSeries> alpha;
    JSeries beta;
};

OrbitSpec parse_orbit(const std::string& text, int n);
// Dimension, convergence to the origin, and the fixed-ray condition.
void validate_orbit(const OrbitSpec& orbit, int n);

// Unit direction of a series whose coefficients lie on one open ray;
// nullopt when the modulus of the direction is irrational.
// Throws InputError when the coefficients are not on a common ray.
std::optional<GaussRational> ray_direction(const JSeries& x);
// Angle of the ray in radians.
double ray_angle(const JSeries& x);

// p evaluated at z = alpha, zbar = conj(alpha), u, v.
JSeries eval_series(const RPoly& p, const std::vector<JSeries>& alpha, const JSeries& u = JSeries(),
                    const JSeries& v = JSeries());

// eps with rho(alpha, Re beta + eps + i Im beta) = 0.
JSeries boundary_gap(const DomainSpec& spec, const OrbitSpec& orbit);

struct ConditionVerdict {
    std::string id;
    bool holds = false;
    std::optional<Rational> lhs_exponent; // nullopt: identically zero
    std::optional<Rational> rhs_exponent;
    std::string detail;
};

struct ProfileWitness {
    int l = 0, lp = 0;
    TrigPoly profile;
    std::string value; // g_{l,l'}(theta) on the orbit's ray
};

struct TangencyOrderResult {
    int nu = 0;
    bool holds = false;
    std::vector<ConditionVerdict> conditions;
    std::optional<ProfileWitness> witness;
};

// Conditions (iii) and (iv) of the order-2nu tangency notion for n = 1.
TangencyOrderResult check_tangency_order(const DomainSpec& spec, const OrbitSpec& orbit, const JSeries& eps, int nu);

struct ConvergenceReport {
    std::string class_id;
    std::string label;
    std::vector<ConditionVerdict> conditions;
    std::optional<int> nu;
    std::optional<ProfileWitness> witness;
    JSeries epsilon;
    std::vector<std::string> notes;

    const ConditionVerdict* find(const std::string& id) const;
};

ConvergenceReport classify(const DomainSpec& spec, const OrbitSpec& orbit);

// m_1 when the model has corank-one structure (n = 1, or m_k = 1 for k >= 2).
bool is_corank_one(const DomainSpec& spec);

std::optional<Rational> order_of(const JSeries& x);

} // namespace scalelimit
