#pragma once

#include <complex>
#include <string>
#include <vector>

#include "scalelimit/poly.hpp"

namespace scalelimit {

// Polynomial with Gaussian-rational coefficients; real-valued ones model rho.
using RPoly = Poly<GaussRational>;

// Parse an expression in z1..zn, Re(w), Im(w). The result must be real-valued.
RPoly parse_poly(const std::string& text, int n);
// Same grammar without the reality requirement.
RPoly parse_complex_poly(const std::string& text, int n);

// Text in the input grammar; parse_poly(format_poly(p), n) == p for real p.
std::string format_poly(const RPoly& p);

// Split into pluriharmonic part (holomorphic, antiholomorphic and constant monomials) and the rest.
struct HarmonicSplit {
    RPoly harmonic;
    RPoly rest;
};
HarmonicSplit split_harmonic(const RPoly& p);

// Keep only monomials without u and v.
RPoly z_part(const RPoly& p);
// Set z_k = 0 for the listed k.
RPoly restrict_zero(const RPoly& p, const std::vector<int>& vars);

// True when every monomial has weight exactly 1 for the weights m.
bool is_weighted_homogeneous(const RPoly& p, const std::vector<int>& m);

// Compiled form for fast repeated floating-point evaluation.
class NumericPoly {
public:
    NumericPoly() = default;
    explicit NumericPoly(const RPoly& p);

    // Complex value at (z, u, v); pairwise summation in fixed term order.
    std::complex<double> eval_complex(const std::vector<std::complex<double>>& z, double u = 0,
                                      double v = 0) const;
    // Real part; throws MathError on non-finite results.
    double eval(const std::vector<std::complex<double>>& z, double u = 0, double v = 0) const;
    int nvars() const { return n_; }

private:
    int n_ = 0;
    std::vector<std::complex<double>> coeff_;
    std::vector<std::vector<int>> exps_;
    int max_exp_ = 0;
};

double eval(const RPoly& p, const std::vector<std::complex<double>>& z, double u = 0, double v = 0);

} // namespace scalelimit
