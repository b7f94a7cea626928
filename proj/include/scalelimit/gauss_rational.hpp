#pragma once

#include <complex>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace scalelimit {

using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// Exact p-th root of a non-negative rational when it exists.
std::optional<Rational> exact_root(const Rational& q, unsigned long p);
// q^(a/b) when exact, for q > 0.
std::optional<Rational> exact_rational_power(const Rational& q, const Rational& e);

// Element of Q(i).
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long v) : re_(v) {}
    GaussRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRational i() { return GaussRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    Rational abs2() const { return re_ * re_ + im_ * im_; }
    GaussRational conj() const { return GaussRational(re_, -im_); }
    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussRational operator-() const { return GaussRational(-re_, -im_); }
    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    GaussRational pow(unsigned e) const;

private:
    Rational re_{0};
    Rational im_{0};
};

// "a/b", "a/b*i", "a/b + c/d*i".
std::string to_string(const GaussRational& c);

// Unit complex number c/|c| when |c| is rational.
std::optional<GaussRational> exact_direction(const GaussRational& c);

} // namespace scalelimit
