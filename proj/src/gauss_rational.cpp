#include "scalelimit/gauss_rational.hpp"

#include "scalelimit/errors.hpp"

namespace scalelimit {

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw InputError("invalid rational '" + s + "'");
    q.canonicalize();
    return q;
}

namespace {

std::optional<mpz_class> exact_int_root(const mpz_class& z, unsigned long p) {
    if (sgn(z) < 0) return std::nullopt;
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), z.get_mpz_t(), p) == 0) return std::nullopt;
    return r;
}

} // namespace

std::optional<Rational> exact_root(const Rational& q, unsigned long p) {
    if (p == 0) throw MathError("zeroth root");
    if (sgn(q) < 0) return std::nullopt;
    auto n = exact_int_root(q.get_num(), p);
    auto d = exact_int_root(q.get_den(), p);
    if (!n || !d) return std::nullopt;
    Rational r(*n, *d);
    r.canonicalize();
    return r;
}

std::optional<Rational> exact_rational_power(const Rational& q, const Rational& e) {
    if (sgn(q) <= 0) return std::nullopt;
    auto root = exact_root(q, e.get_den().get_ui());
    if (!root) return std::nullopt;
    mpz_class a = abs(e.get_num());
    Rational r(1);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), root->get_num_mpz_t(), a.get_ui());
    mpz_pow_ui(den.get_mpz_t(), root->get_den_mpz_t(), a.get_ui());
    r = Rational(num, den);
    r.canonicalize();
    if (sgn(e) < 0) r = 1 / r;
    return r;
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    Rational d = o.abs2();
    if (sgn(d) == 0) throw MathError("division by zero");
    Rational r = (re_ * o.re_ + im_ * o.im_) / d;
    Rational i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussRational GaussRational::pow(unsigned e) const {
    GaussRational result(1), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

std::string to_string(const GaussRational& c) {
    if (c.is_real()) return to_string(c.re());
    std::string im;
    if (c.im() == 1)
        im = "i";
    else if (c.im() == -1)
        im = "-i";
    else
        im = to_string(c.im()) + "*i";
    if (sgn(c.re()) == 0) return im;
    if (sgn(c.im()) < 0) {
        std::string mag = c.im() == -1 ? "i" : to_string(Rational(-c.im())) + "*i";
        return to_string(c.re()) + " - " + mag;
    }
    return to_string(c.re()) + " + " + im;
}

std::optional<GaussRational> exact_direction(const GaussRational& c) {
    if (c.is_zero()) return std::nullopt;
    auto m = exact_root(c.abs2(), 2);
    if (!m) return std::nullopt;
    return GaussRational(c.re() / *m, c.im() / *m);
}

} // namespace scalelimit
