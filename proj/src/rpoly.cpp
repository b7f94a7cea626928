#include "scalelimit/rpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace scalelimit {

namespace {

class PolyParser {
public:
    PolyParser(const std::string& text, int n) : s_(text), n_(n) {}

    RPoly parse() {
        RPoly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
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

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    RPoly constant(const GaussRational& c) const { return RPoly(n_, c); }

    RPoly expr() {
        RPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    RPoly term() {
        RPoly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                RPoly d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                if (d.size() != 1 || !d.terms().begin()->first.is_constant())
                    throw ParseError("division by a non-constant expression", at);
                GaussRational inv = GaussRational(1) / d.terms().begin()->second;
                acc = acc.scaled(inv);
            } else {
                return acc;
            }
        }
    }

    RPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RPoly power() {
        RPoly base = primary();
        if (!accept('^')) return base;
        skip_ws();
        bool paren = accept('(');
        skip_ws();
        std::size_t at = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') fail("negative exponent");
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected a non-negative integer exponent", at);
        if (pos_ < s_.size() && (s_[pos_] == '/' || s_[pos_] == '.'))
            fail("non-integer exponent");
        unsigned long e = std::stoul(s_.substr(start, pos_ - start));
        if (e > 1000) throw ParseError("exponent too large", at);
        if (paren) expect(')');
        if (accept('^')) fail("chained exponent; use parentheses");
        return base.pow(static_cast<unsigned>(e));
    }

    RPoly primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal literals are not supported");
            return constant(GaussRational(Rational(mpz_class(s_.substr(start, pos_ - start)))));
        }
        if (c == '(') {
            ++pos_;
            RPoly p = expr();
            expect(')');
            return p;
        }
        std::size_t at = pos_;
        std::string id = identifier();
        if (id.empty()) fail("unexpected '" + std::string(1, c) + "'");
        if (id == "i") return constant(GaussRational::i());
        if (id == "w") throw ParseError("w may only appear as Re(w) or Im(w)", at);
        if (id.size() > 1 && id[0] == 'z' &&
            std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            long k = std::stol(id.substr(1));
            if (k < 1 || k > n_)
                throw ParseError("variable " + id + " out of range for n = " + std::to_string(n_), at);
            return RPoly(Monomial::z(n_, static_cast<int>(k - 1)), GaussRational(1));
        }
        if (id == "Re" || id == "Im" || id == "conj" || id == "abs2") {
            expect('(');
            if (id == "Re" || id == "Im") {
                std::size_t save = pos_;
                std::string inner = identifier();
                if (inner == "w" && accept(')'))
                    return RPoly(id == "Re" ? Monomial::u(n_) : Monomial::v(n_), GaussRational(1));
                pos_ = save;
            }
            RPoly arg = expr();
            expect(')');
            if (id == "conj") return arg.conj();
            if (id == "abs2") return arg * arg.conj();
            if (id == "Re") return (arg + arg.conj()).scaled(GaussRational(Rational(1, 2)));
            return (arg - arg.conj()).scaled(GaussRational(Rational(0), Rational(-1, 2)));
        }
        throw ParseError("unknown identifier '" + id + "'", at);
    }

    const std::string& s_;
    int n_;
    std::size_t pos_ = 0;
};

std::string coeff_text(const Rational& c) { return to_string(c); }

// Sort key for printing: w-terms first, then by z-degree, then canonical order.
bool print_before(const Monomial& x, const Monomial& y) {
    if (x.has_w() != y.has_w()) return x.has_w();
    if (x.total_degree() != y.total_degree()) return x.total_degree() < y.total_degree();
    return x < y;
}

struct Piece {
    bool negative;
    std::string body;
};

Piece real_term(const Rational& c, const std::string& mono) {
    Rational a = abs(c);
    std::string body;
    if (mono == "1")
        body = coeff_text(a);
    else if (a == 1)
        body = mono;
    else
        body = coeff_text(a) + "*" + mono;
    return {sgn(c) < 0, body};
}

} // namespace

RPoly parse_complex_poly(const std::string& text, int n) {
    if (n < 1) throw InputError("dimension n must be at least 1");
    return PolyParser(text, n).parse();
}

RPoly parse_poly(const std::string& text, int n) {
    RPoly p = parse_complex_poly(text, n);
    if (!p.is_real()) throw InputError("expression is not real-valued: " + text);
    return p;
}

std::string format_poly(const RPoly& p) {
    std::vector<Monomial> order;
    for (const auto& [m, c] : p.terms()) order.push_back(m);
    std::sort(order.begin(), order.end(), print_before);

    std::vector<Piece> pieces;
    bool real = p.is_real();
    for (const Monomial& m : order) {
        const GaussRational& c = p.terms().at(m);
        Monomial mc = m.conj();
        if (real && mc == m) {
            pieces.push_back(real_term(c.re(), to_string(m)));
        } else if (real) {
            if (mc < m) continue;
            // c m + conj(c) conj(m) = 2 Re(c m)
            if (c.is_real()) {
                pieces.push_back(real_term(2 * c.re(), "Re(" + to_string(m) + ")"));
            } else if (sgn(c.re()) == 0) {
                // 2 Re(i b m) = -2 b Im(m)
                pieces.push_back(real_term(-2 * c.im(), "Im(" + to_string(m) + ")"));
            } else {
                pieces.push_back({false, "2*Re((" + to_string(c) + ")*" + to_string(m) + ")"});
            }
        } else {
            std::string mono = to_string(m);
            if (c.is_real()) {
                pieces.push_back(real_term(c.re(), mono));
            } else {
                std::string body = "(" + to_string(c) + ")";
                if (mono != "1") body += "*" + mono;
                pieces.push_back({false, body});
            }
        }
    }
    if (pieces.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i == 0)
            out = (pieces[i].negative ? "-" : "") + pieces[i].body;
        else
            out += (pieces[i].negative ? " - " : " + ") + pieces[i].body;
    }
    return out;
}

HarmonicSplit split_harmonic(const RPoly& p) {
    HarmonicSplit s{RPoly(p.nvars()), RPoly(p.nvars())};
    for (const auto& [m, c] : p.terms()) {
        if (m.has_w()) throw InputError("pluriharmonic split needs a polynomial in z only");
        (m.is_harmonic() || m.is_constant() ? s.harmonic : s.rest).add_term(m, c);
    }
    return s;
}

RPoly z_part(const RPoly& p) {
    RPoly r(p.nvars());
    for (const auto& [m, c] : p.terms())
        if (!m.has_w()) r.add_term(m, c);
    return r;
}

RPoly restrict_zero(const RPoly& p, const std::vector<int>& vars) {
    RPoly r(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        bool keep = true;
        for (int k : vars)
            if (m.a(k) + m.b(k) > 0) keep = false;
        if (keep) r.add_term(m, c);
    }
    return r;
}

bool is_weighted_homogeneous(const RPoly& p, const std::vector<int>& m) {
    for (const auto& [mono, c] : p.terms())
        if (mono.has_w() || mono.weight(m) != 1) return false;
    return true;
}

NumericPoly::NumericPoly(const RPoly& p) : n_(p.nvars()) {
    for (const auto& [m, c] : p.terms()) {
        coeff_.push_back(c.to_complex());
        std::vector<int> e;
        for (int k = 0; k < n_; ++k) e.push_back(m.a(k));
        for (int k = 0; k < n_; ++k) e.push_back(m.b(k));
        e.push_back(m.eu());
        e.push_back(m.ev());
        for (int x : e) max_exp_ = std::max(max_exp_, x);
        exps_.push_back(std::move(e));
    }
}

namespace {

std::complex<double> pairwise_sum(std::vector<std::complex<double>>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        std::complex<double> s = 0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

} // namespace

std::complex<double> NumericPoly::eval_complex(const std::vector<std::complex<double>>& z, double u,
                                               double v) const {
    if (static_cast<int>(z.size()) != n_) throw InputError("point has wrong dimension");
    // powers[var][e]
    const std::size_t nv = static_cast<std::size_t>(2 * n_ + 2);
    std::vector<std::vector<std::complex<double>>> pw(nv, std::vector<std::complex<double>>(
                                                              static_cast<std::size_t>(max_exp_ + 1)));
    for (std::size_t var = 0; var < nv; ++var) {
        std::complex<double> x;
        if (var < static_cast<std::size_t>(n_))
            x = z[var];
        else if (var < static_cast<std::size_t>(2 * n_))
            x = std::conj(z[var - static_cast<std::size_t>(n_)]);
        else if (var == nv - 2)
            x = u;
        else
            x = v;
        pw[var][0] = 1;
        for (int e = 1; e <= max_exp_; ++e) pw[var][static_cast<std::size_t>(e)] = pw[var][static_cast<std::size_t>(e - 1)] * x;
    }
    std::vector<std::complex<double>> vals(coeff_.size());
    for (std::size_t t = 0; t < coeff_.size(); ++t) {
        std::complex<double> val = coeff_[t];
        for (std::size_t var = 0; var < nv; ++var) {
            int e = exps_[t][var];
            if (e) val *= pw[var][static_cast<std::size_t>(e)];
        }
        vals[t] = val;
    }
    if (vals.empty()) return 0;
    return pairwise_sum(vals, 0, vals.size());
}

double NumericPoly::eval(const std::vector<std::complex<double>>& z, double u, double v) const {
    std::complex<double> r = eval_complex(z, u, v);
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) throw MathError("non-finite evaluation result");
    return r.real();
}

double eval(const RPoly& p, const std::vector<std::complex<double>>& z, double u, double v) {
    return NumericPoly(p).eval(z, u, v);
}

} // namespace scalelimit
