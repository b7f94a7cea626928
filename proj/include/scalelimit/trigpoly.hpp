#pragma once

#include <map>
#include <string>

#include "scalelimit/rpoly.hpp"

namespace scalelimit {

// Finite sum of c_k e^{i k theta}, c_k Gaussian rational.
class TrigPoly {
public:
    TrigPoly() = default;

    void add(int k, const GaussRational& c);
    GaussRational coeff(int k) const;
    const std::map<int, GaussRational>& coeffs() const { return c_; }
    int degree() const;
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }
    bool is_real() const;

    TrigPoly derivative() const;
    TrigPoly scaled(const GaussRational& s) const;
    TrigPoly& operator+=(const TrigPoly& o);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.c_ == b.c_; }

    std::complex<double> eval(double theta) const;
    // Exact value at e^{i theta} = omega (a unit Gaussian rational).
    GaussRational eval_exact(const GaussRational& omega) const;

    // Cosine/sine coefficients of a real trig polynomial:
    // a_0 + sum a_k cos(k theta) + b_k sin(k theta).
    Rational cos_coeff(int k) const;
    Rational sin_coeff(int k) const;

    struct Minimum {
        double theta;
        double value;
    };
    // Global minimum of the real part over [0, 2 pi); the smallest minimizing theta wins ties.
    Minimum minimize() const;

private:
    std::map<int, GaussRational> c_;
};

// "64 + 60*cos(6*theta)" for real polynomials, exponential form otherwise.
std::string to_string(const TrigPoly& t);

// g with d^{l+l'}p/dz^l dzbar^{l'} (r e^{i theta}) = r^{deg - l - l'} g(theta).
// p must be a homogeneous polynomial in the single variable z_{var}.
TrigPoly circle_profile(const RPoly& p, int l, int lp, int var = 0);

// (2m)^2 g + g'' for the undifferentiated profile g, i.e. the profile of 4 d dbar p.
TrigPoly laplacian_profile(const RPoly& p, int var = 0);

} // namespace scalelimit
