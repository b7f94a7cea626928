#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "scalelimit/gauss_rational.hpp"

namespace scalelimit {

// z^a zbar^b u^eu v^ev in n complex variables, u = Re w, v = Im w.
// Stored as one exponent vector [a_1..a_n, b_1..b_n, eu, ev].
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int n) : e_(static_cast<std::size_t>(2 * n + 2), 0) {}

    static Monomial z(int n, int k, int power = 1);
    static Monomial zbar(int n, int k, int power = 1);
    static Monomial u(int n, int power = 1);
    static Monomial v(int n, int power = 1);

    int nvars() const { return static_cast<int>(e_.size() / 2) - 1; }
    int a(int k) const { return e_[static_cast<std::size_t>(k)]; }
    int b(int k) const { return e_[static_cast<std::size_t>(nvars() + k)]; }
    int eu() const { return e_[e_.size() - 2]; }
    int ev() const { return e_[e_.size() - 1]; }
    int& a(int k) { return e_[static_cast<std::size_t>(k)]; }
    int& b(int k) { return e_[static_cast<std::size_t>(nvars() + k)]; }
    int& eu() { return e_[e_.size() - 2]; }
    int& ev() { return e_[e_.size() - 1]; }

    int z_degree() const;
    int total_degree() const { return z_degree() + eu() + ev(); }
    bool is_constant() const { return total_degree() == 0; }
    bool has_w() const { return eu() != 0 || ev() != 0; }
    // Pure z (no zbar, no w) or pure zbar, and non-constant.
    bool is_harmonic() const;
    bool is_holomorphic() const;
    // Indices k with a_k + b_k > 0.
    std::vector<int> z_support() const;
    // Sum over k of (a_k + b_k)/(2 m_k).
    Rational weight(const std::vector<int>& m) const;

    Monomial conj() const;
    Monomial operator*(const Monomial& o) const;

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

private:
    std::vector<int> e_;
};

// Human/grammar text of a bare monomial, e.g. "z1^2*conj(z1)*Re(w)".
std::string to_string(const Monomial& m);

} // namespace scalelimit
