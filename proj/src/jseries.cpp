#include "scalelimit/jseries.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace scalelimit {

JSeries::JSeries(const GaussRational& c) {
    if (!c.is_zero()) terms_.push_back({Rational(0), c});
}

JSeries JSeries::monomial(const GaussRational& c, const Rational& r) {
    JSeries s;
    if (!c.is_zero()) {
        Rational rr = r;
        rr.canonicalize();
        s.terms_.push_back({rr, c});
    }
    return s;
}

JSeries JSeries::big_o(const Rational& T) {
    JSeries s;
    s.err_ = T;
    return s;
}

void JSeries::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.r < b.r; });
    std::vector<Term> out;
    for (auto& t : terms_) {
        if (!out.empty() && out.back().r == t.r)
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
    }
    std::erase_if(out, [&](const Term& t) { return t.c.is_zero() || (err_ && t.r >= *err_); });
    terms_ = std::move(out);
}

std::optional<Rational> JSeries::order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().r;
}

std::optional<Rational> JSeries::order_bound() const {
    if (!terms_.empty()) return terms_.front().r;
    return err_;
}

GaussRational JSeries::leading_coeff() const {
    return terms_.empty() ? GaussRational() : terms_.front().c;
}

GaussRational JSeries::coeff(const Rational& r) const {
    for (const auto& t : terms_)
        if (t.r == r) return t.c;
    return GaussRational();
}

JSeries JSeries::operator-() const {
    JSeries s = *this;
    for (auto& t : s.terms_) t.c = -t.c;
    return s;
}

JSeries& JSeries::operator+=(const JSeries& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    if (o.err_ && (!err_ || *o.err_ < *err_)) err_ = o.err_;
    normalize();
    return *this;
}

JSeries& JSeries::operator-=(const JSeries& o) { return *this += -o; }

JSeries operator*(const JSeries& a, const JSeries& b) {
    JSeries r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) r.terms_.push_back({x.r + y.r, x.c * y.c});
    std::optional<Rational> err;
    auto consider = [&](const std::optional<Rational>& e, const JSeries& other) {
        if (!e) return;
        Rational cand = *e + *other.order_bound();
        if (!err || cand < *err) err = cand;
    };
    consider(a.err_, b);
    consider(b.err_, a);
    r.err_ = err;
    r.normalize();
    return r;
}

JSeries JSeries::conj() const {
    JSeries s = *this;
    for (auto& t : s.terms_) t.c = t.c.conj();
    return s;
}

JSeries JSeries::pow(unsigned e) const {
    JSeries result(1), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

JSeries JSeries::real_part() const {
    JSeries s = *this;
    for (auto& t : s.terms_) t.c = GaussRational(t.c.re());
    s.normalize();
    return s;
}

JSeries JSeries::imag_part() const {
    JSeries s = *this;
    for (auto& t : s.terms_) t.c = GaussRational(t.c.im());
    s.normalize();
    return s;
}

JSeries JSeries::truncated(const Rational& T) const {
    JSeries s = *this;
    if (!s.err_ || T < *s.err_) s.err_ = T;
    s.normalize();
    return s;
}

std::complex<double> JSeries::eval(double j) const {
    std::complex<double> s = 0;
    for (const auto& t : terms_) s += t.c.to_complex() * std::pow(j, -t.r.get_d());
    return s;
}

JLimit limit(const JSeries& x) {
    if (x.is_zero()) return {JLimit::Kind::Finite, GaussRational(), Rational(0)};
    auto ord = x.order();
    if (ord && sgn(*ord) < 0) return {JLimit::Kind::Diverges, GaussRational(), *ord};
    if (ord && sgn(*ord) == 0) return {JLimit::Kind::Finite, x.leading_coeff(), Rational(0)};
    if (x.error_order() && sgn(*x.error_order()) <= 0)
        throw MathError("insufficient truncation order: limit of " + to_string(x) + " is undetermined");
    return {JLimit::Kind::Finite, GaussRational(), Rational(0)};
}

JSeries rational_power(const JSeries& x, const Rational& p, const Rational& rel) {
    if (x.is_zero()) {
        if (sgn(p) > 0) return JSeries();
        throw MathError("non-positive power of zero");
    }
    if (!x.order()) throw MathError("insufficient truncation order: no known terms in " + to_string(x));
    if (sgn(rel) <= 0) throw InputError("relative truncation order must be positive");
    const GaussRational c = x.leading_coeff();
    const Rational r0 = *x.order();

    GaussRational cp;
    if (p.get_den() == 1) {
        mpz_class e = abs(p.get_num());
        cp = c.pow(static_cast<unsigned>(e.get_ui()));
        if (sgn(p) < 0) cp = GaussRational(1) / cp;
    } else {
        if (!c.is_real() || sgn(c.re()) <= 0)
            throw MathError("fractional power of a series with non-positive leading coefficient");
        auto root = exact_rational_power(c.re(), p);
        if (!root) throw MathError("irrational leading power: (" + to_string(c) + ")^(" + to_string(p) + ")");
        cp = GaussRational(*root);
    }
    Rational base_r = r0 * p;

    // x = c j^{-r0} (1 + y)
    JSeries y;
    {
        JSeries shifted;
        for (std::size_t i = 1; i < x.terms().size(); ++i) {
            const auto& t = x.terms()[i];
            shifted += JSeries::monomial(t.c / c, t.r - r0);
        }
        if (x.error_order()) shifted = shifted.truncated(*x.error_order() - r0);
        y = shifted;
    }
    if (y.is_zero()) return JSeries::monomial(cp, base_r);

    Rational R = rel;
    if (y.error_order() && *y.error_order() < R) R = *y.error_order();

    JSeries sum(1), term(1);
    Rational binom(1);
    for (long k = 1;; ++k) {
        term = (term * y).truncated(R);
        binom = binom * (p - (k - 1)) / k;
        binom.canonicalize();
        if (!term.order()) break;
        sum += term * JSeries(GaussRational(binom));
        if (k > 10000) throw MathError("binomial expansion did not terminate");
    }
    sum = sum.truncated(R);
    return sum * JSeries::monomial(cp, base_r);
}

JSeries inverse(const JSeries& x, const Rational& rel) { return rational_power(x, Rational(-1), rel); }

JRelation compare(const JSeries& x, const JSeries& y) {
    if (x.is_zero() && y.is_zero()) return JRelation::Equivalent;
    if (x.is_zero()) return JRelation::LittleO;
    if (y.is_zero()) return JRelation::Dominates;
    auto ox = x.order(), oy = y.order();
    if (!ox || !oy) throw MathError("insufficient truncation order for comparison");
    if (*ox > *oy) return JRelation::LittleO;
    if (*ox < *oy) return JRelation::Dominates;
    return JRelation::Equivalent;
}

std::string to_string(JRelation r) {
    switch (r) {
    case JRelation::LittleO: return "x = o(y)";
    case JRelation::Equivalent: return "x ~ y";
    case JRelation::Dominates: return "y = o(x)";
    }
    return "?";
}

std::string exponent_text(const Rational& r) {
    Rational neg = -r;
    neg.canonicalize();
    if (neg.get_den() == 1 && sgn(neg) > 0) return to_string(neg);
    return "(" + to_string(neg) + ")";
}

std::string to_string(const JSeries& x) {
    std::string out;
    for (const auto& t : x.terms()) {
        std::string jpart = sgn(t.r) == 0 ? "" : "j^" + exponent_text(t.r);
        bool neg = false;
        std::string cpart;
        if (t.c.is_real()) {
            neg = sgn(t.c.re()) < 0;
            Rational a = abs(t.c.re());
            cpart = (a == 1 && !jpart.empty()) ? "" : to_string(a);
        } else if (sgn(t.c.re()) == 0) {
            neg = sgn(t.c.im()) < 0;
            Rational a = abs(t.c.im());
            cpart = a == 1 ? "i" : to_string(a) + "*i";
        } else {
            cpart = "(" + to_string(t.c) + ")";
        }
        std::string body = cpart;
        if (!jpart.empty()) body += (cpart.empty() ? "" : "*") + jpart;
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    if (x.error_order()) {
        std::string o = "O(j^" + exponent_text(*x.error_order()) + ")";
        out = out.empty() ? o : out + " + " + o;
    }
    return out.empty() ? "0" : out;
}

namespace {

class SeriesParser {
public:
    explicit SeriesParser(const std::string& s) : s_(s) {}

    JSeries parse() {
        JSeries x = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return x;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    mpz_class integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal literals are not supported");
        return mpz_class(s_.substr(start, pos_ - start));
    }

    JSeries expr() {
        JSeries acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    JSeries term() {
        JSeries acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                JSeries d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                if (!d.is_single_term()) throw ParseError("division by a multi-term series", at);
                acc *= JSeries::monomial(GaussRational(1) / d.leading_coeff(), -*d.order());
            } else {
                return acc;
            }
        }
    }

    JSeries unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Rational exponent() {
        skip_ws();
        bool paren = accept('(');
        bool neg = false;
        if (accept('-')) neg = true;
        Rational e(integer());
        if (paren && accept('/')) {
            mpz_class d = integer();
            if (d == 0) fail("zero denominator in exponent");
            e = Rational(e.get_num(), d);
        }
        if (paren) expect(')');
        e.canonicalize();
        return neg ? Rational(-e) : e;
    }

    JSeries power() {
        JSeries base = primary();
        if (!accept('^')) return base;
        std::size_t at = pos_;
        Rational e = exponent();
        if (accept('^')) fail("chained exponent; use parentheses");
        if (e.get_den() == 1 && sgn(e) >= 0) {
            if (e > 10000) throw ParseError("exponent too large", at);
            return base.pow(static_cast<unsigned>(e.get_num().get_ui()));
        }
        if (!base.is_single_term()) throw ParseError("non-integer or negative power of a multi-term series", at);
        try {
            return rational_power(base, e, Rational(1));
        } catch (const MathError& err) {
            throw ParseError(err.what(), at);
        }
    }

    JSeries primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return JSeries(GaussRational(Rational(integer())));
        if (c == '(') {
            ++pos_;
            JSeries x = expr();
            expect(')');
            return x;
        }
        if (c == 'i') {
            ++pos_;
            return JSeries(GaussRational::i());
        }
        if (c == 'j') {
            ++pos_;
            return JSeries::monomial(GaussRational(1), Rational(0) - 1);
        }
        if (c == 'O') {
            ++pos_;
            expect('(');
            std::size_t at = pos_;
            JSeries x = expr();
            expect(')');
            if (!x.is_single_term()) throw ParseError("O() needs a single power of j", at);
            return JSeries::big_o(*x.order());
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

JSeries parse_jseries(const std::string& text) { return SeriesParser(text).parse(); }

} // namespace scalelimit
