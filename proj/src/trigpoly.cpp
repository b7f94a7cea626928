#include "scalelimit/trigpoly.hpp"

#include <cmath>
#include <numbers>

namespace scalelimit {

void TrigPoly::add(int k, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = c_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

GaussRational TrigPoly::coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? GaussRational() : it->second;
}

int TrigPoly::degree() const {
    int d = 0;
    for (const auto& [k, c] : c_) d = std::max(d, std::abs(k));
    return d;
}

bool TrigPoly::is_real() const {
    for (const auto& [k, c] : c_)
        if (coeff(-k) != c.conj()) return false;
    return true;
}

TrigPoly TrigPoly::derivative() const {
    TrigPoly r;
    for (const auto& [k, c] : c_) r.add(k, c * GaussRational(Rational(0), Rational(k)));
    return r;
}

TrigPoly TrigPoly::scaled(const GaussRational& s) const {
    TrigPoly r;
    for (const auto& [k, c] : c_) r.add(k, c * s);
    return r;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    for (const auto& [k, c] : o.c_) add(k, c);
    return *this;
}

std::complex<double> TrigPoly::eval(double theta) const {
    std::complex<double> s = 0;
    for (const auto& [k, c] : c_) s += c.to_complex() * std::polar(1.0, k * theta);
    return s;
}

GaussRational TrigPoly::eval_exact(const GaussRational& omega) const {
    if (omega.abs2() != 1) throw MathError("eval_exact needs a unit direction");
    GaussRational s;
    GaussRational inv = omega.conj();
    for (const auto& [k, c] : c_) {
        GaussRational p = k >= 0 ? omega.pow(static_cast<unsigned>(k)) : inv.pow(static_cast<unsigned>(-k));
        s += c * p;
    }
    return s;
}

Rational TrigPoly::cos_coeff(int k) const {
    if (k == 0) return coeff(0).re();
    return coeff(k).re() + coeff(-k).re();
}

Rational TrigPoly::sin_coeff(int k) const {
    // c_k e^{ik} + c_{-k} e^{-ik}: sin part is i (c_k - c_{-k})
    if (k == 0) return Rational(0);
    return coeff(-k).im() - coeff(k).im();
}

TrigPoly::Minimum TrigPoly::minimize() const {
    const double two_pi = 2 * std::numbers::pi;
    const int grid = std::max(4096, 256 * (degree() + 1));
    auto f = [&](double t) { return eval(t).real(); };
    int best = 0;
    double bestv = f(0.0);
    for (int i = 1; i < grid; ++i) {
        double v = f(two_pi * i / grid);
        if (v < bestv - 1e-13) {
            bestv = v;
            best = i;
        }
    }
    // Golden-section refinement on the bracketing cell.
    double lo = two_pi * (best - 1) / grid, hi = two_pi * (best + 1) / grid;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    double t = (lo + hi) / 2;
    double v = f(t);
    if (bestv <= v) return {two_pi * best / grid, bestv};
    t = std::fmod(t + two_pi, two_pi);
    return {t, v};
}

std::string to_string(const TrigPoly& t) {
    if (t.is_zero()) return "0";
    std::string out;
    auto emit = [&](const Rational& c, const std::string& fn) {
        if (sgn(c) == 0) return;
        Rational a = abs(c);
        std::string body = fn.empty() ? to_string(a) : (a == 1 ? fn : to_string(a) + "*" + fn);
        if (out.empty())
            out = (sgn(c) < 0 ? "-" : "") + body;
        else
            out += (sgn(c) < 0 ? " - " : " + ") + body;
    };
    if (t.is_real()) {
        emit(t.cos_coeff(0), "");
        for (int k = 1; k <= t.degree(); ++k) {
            std::string arg = (k == 1 ? std::string("theta") : std::to_string(k) + "*theta");
            emit(t.cos_coeff(k), "cos(" + arg + ")");
            emit(t.sin_coeff(k), "sin(" + arg + ")");
        }
        return out.empty() ? "0" : out;
    }
    for (const auto& [k, c] : t.coeffs()) {
        std::string term = "(" + to_string(c) + ")";
        if (k != 0) term += "*exp(" + std::to_string(k) + "*i*theta)";
        out += (out.empty() ? "" : " + ") + term;
    }
    return out;
}

TrigPoly circle_profile(const RPoly& p, int l, int lp, int var) {
    if (l < 0 || lp < 0) throw InputError("negative derivative order");
    RPoly d = p.diff_z(var, l).diff_zbar(var, lp);
    TrigPoly g;
    int deg = -1;
    for (const auto& [m, c] : p.terms()) {
        if (m.has_w()) throw InputError("circle profile needs a polynomial in z only");
        for (int k = 0; k < m.nvars(); ++k)
            if (k != var && m.a(k) + m.b(k) > 0) throw InputError("circle profile needs a one-variable polynomial");
        if (deg < 0) deg = m.z_degree();
        if (m.z_degree() != deg) throw InputError("circle profile needs a homogeneous polynomial");
    }
    if (deg >= 0 && l + lp > deg) throw InputError("derivative order exceeds the degree");
    for (const auto& [m, c] : d.terms()) g.add(m.a(var) - m.b(var), c);
    return g;
}

TrigPoly laplacian_profile(const RPoly& p, int var) {
    TrigPoly g = circle_profile(p, 0, 0, var);
    int deg = 0;
    for (const auto& [m, c] : p.terms()) deg = m.z_degree();
    TrigPoly r = g.scaled(GaussRational(static_cast<long>(deg) * deg));
    r += g.derivative().derivative();
    return r;
}

} // namespace scalelimit
