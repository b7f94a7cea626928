#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "scalelimit/poly.hpp"

namespace scalelimit {

// Finite asymptotic expansion sum_i c_i j^{-r_i} with exact rational decay
// exponents r_i (negative r means growth) and Gaussian-rational c_i.
// An optional error order T marks that every term with r >= T is unknown.
class JSeries {
public:
    struct Term {
        Rational r;
        GaussRational c;
        bool operator==(const Term& o) const { return r == o.r && c == o.c; }
    };

    JSeries() = default;
    JSeries(long v) : JSeries(GaussRational(v)) {}
    JSeries(const GaussRational& c);
    static JSeries monomial(const GaussRational& c, const Rational& r);
    // Zero known terms, error O(j^{-T}).
    static JSeries big_o(const Rational& T);

    const std::vector<Term>& terms() const { return terms_; }
    const std::optional<Rational>& error_order() const { return err_; }
    bool exact() const { return !err_; }
    bool is_zero() const { return terms_.empty() && !err_; }
    bool is_single_term() const { return terms_.size() == 1 && exact(); }

    // Decay exponent of the leading known term; nullopt when there is none.
    std::optional<Rational> order() const;
    // Leading term exponent, or the error order, or nullopt for exact zero.
    std::optional<Rational> order_bound() const;
    GaussRational leading_coeff() const;
    // Coefficient of j^{-r} (zero when absent).
    GaussRational coeff(const Rational& r) const;

    JSeries operator-() const;
    JSeries& operator+=(const JSeries& o);
    JSeries& operator-=(const JSeries& o);
    friend JSeries operator+(JSeries a, const JSeries& b) { return a += b; }
    friend JSeries operator-(JSeries a, const JSeries& b) { return a -= b; }
    friend JSeries operator*(const JSeries& a, const JSeries& b);
    JSeries& operator*=(const JSeries& o) { return *this = *this * o; }
    friend bool operator==(const JSeries& a, const JSeries& b) { return a.terms_ == b.terms_ && a.err_ == b.err_; }
    friend bool operator!=(const JSeries& a, const JSeries& b) { return !(a == b); }

    JSeries conj() const;
    JSeries abs2() const { return *this * conj(); }
    JSeries pow(unsigned e) const;
    JSeries real_part() const;
    JSeries imag_part() const;
    // Drop all terms with decay >= T and record the error order.
    JSeries truncated(const Rational& T) const;

    std::complex<double> eval(double j) const;

private:
    void normalize();
    std::vector<Term> terms_;
    std::optional<Rational> err_;
};

// Limit as j -> infinity.
struct JLimit {
    enum class Kind { Finite, Diverges };
    Kind kind;
    GaussRational value;   // Finite
    Rational decay;        // Diverges: decay exponent of the leading term (negative)
};
JLimit limit(const JSeries& x);

// x^p for rational p, keeping terms up to relative order `rel` beyond the
// leading one (the result carries the matching error order). Single-term
// exact inputs give exact results. Fractional p needs a positive real
// leading coefficient with an exact rational root.
JSeries rational_power(const JSeries& x, const Rational& p, const Rational& rel);
JSeries inverse(const JSeries& x, const Rational& rel);

// Asymptotic comparison of magnitudes by leading exponents.
enum class JRelation { LittleO, Equivalent, Dominates };
JRelation compare(const JSeries& x, const JSeries& y);
std::string to_string(JRelation r);

std::string to_string(const JSeries& x);
JSeries parse_jseries(const std::string& text);
std::string exponent_text(const Rational& r);

using JPoly = Poly<JSeries>;

} // namespace scalelimit
