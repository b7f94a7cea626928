#include "scalelimit/monomial.hpp"

namespace scalelimit {

Monomial Monomial::z(int n, int k, int power) {
    Monomial m(n);
    m.a(k) = power;
    return m;
}

Monomial Monomial::zbar(int n, int k, int power) {
    Monomial m(n);
    m.b(k) = power;
    return m;
}

Monomial Monomial::u(int n, int power) {
    Monomial m(n);
    m.eu() = power;
    return m;
}

Monomial Monomial::v(int n, int power) {
    Monomial m(n);
    m.ev() = power;
    return m;
}

int Monomial::z_degree() const {
    int d = 0;
    for (int k = 0; k < nvars(); ++k) d += a(k) + b(k);
    return d;
}

bool Monomial::is_holomorphic() const {
    if (has_w()) return false;
    for (int k = 0; k < nvars(); ++k)
        if (b(k) != 0) return false;
    return true;
}

bool Monomial::is_harmonic() const {
    if (has_w() || is_constant()) return false;
    return is_holomorphic() || conj().is_holomorphic();
}

std::vector<int> Monomial::z_support() const {
    std::vector<int> s;
    for (int k = 0; k < nvars(); ++k)
        if (a(k) + b(k) > 0) s.push_back(k);
    return s;
}

Rational Monomial::weight(const std::vector<int>& m) const {
    Rational w(0);
    for (int k = 0; k < nvars(); ++k) w += Rational(a(k) + b(k), 2 * m[static_cast<std::size_t>(k)]);
    w.canonicalize();
    return w;
}

Monomial Monomial::conj() const {
    Monomial r = *this;
    for (int k = 0; k < nvars(); ++k) std::swap(r.a(k), r.b(k));
    return r;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

namespace {

void append_factor(std::string& out, const std::string& base, int power) {
    if (power == 0) return;
    if (!out.empty()) out += "*";
    out += base;
    if (power != 1) out += "^" + std::to_string(power);
}

} // namespace

std::string to_string(const Monomial& m) {
    std::string out;
    for (int k = 0; k < m.nvars(); ++k) {
        const std::string zk = "z" + std::to_string(k + 1);
        int c = std::min(m.a(k), m.b(k));
        append_factor(out, "abs2(" + zk + ")", c);
        append_factor(out, zk, m.a(k) - c);
        append_factor(out, "conj(" + zk + ")", m.b(k) - c);
    }
    append_factor(out, "Re(w)", m.eu());
    append_factor(out, "Im(w)", m.ev());
    return out.empty() ? "1" : out;
}

} // namespace scalelimit
