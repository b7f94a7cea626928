#pragma once

#include <map>
#include <utility>

#include "scalelimit/errors.hpp"
#include "scalelimit/monomial.hpp"

namespace scalelimit {

// Sparse polynomial in z, zbar, u, v with coefficients in C.
// C must provide +=, *, unary -, is_zero() and conj().
template <class C>
class Poly {
public:
    using Terms = std::map<Monomial, C>;

    Poly() = default;
    explicit Poly(int n) : n_(n) {}
    Poly(int n, const C& constant) : n_(n) { add_term(Monomial(n), constant); }
    Poly(const Monomial& m, const C& c) : n_(m.nvars()) { add_term(m, c); }

    int nvars() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    C coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C() : it->second;
    }

    void add_term(const Monomial& m, const C& c) {
        if (m.nvars() != n_) throw InputError("monomial arity mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void set_term(const Monomial& m, const C& c) {
        if (c.is_zero())
            terms_.erase(m);
        else
            terms_[m] = c;
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly operator-() const {
        Poly r(n_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        Poly r(a.n_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const C& s) const {
        Poly r(n_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }

    Poly pow(unsigned e) const {
        Poly result(n_, C(1)), base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return result;
    }

    // Complex conjugate: swaps z and zbar, conjugates coefficients.
    Poly conj() const {
        Poly r(n_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m.conj(), c.conj());
        return r;
    }

    bool is_real() const {
        for (const auto& [m, c] : terms_) {
            auto it = terms_.find(m.conj());
            if (it == terms_.end() || it->second != c.conj()) return false;
        }
        return true;
    }

    // d/dz_k; zbar_k, u, v are independent.
    Poly diff_z(int k, int times = 1) const { return diff(k, times, false); }
    Poly diff_zbar(int k, int times = 1) const { return diff(k, times, true); }

    Poly diff_u() const {
        Poly r(n_);
        for (const auto& [m, c] : terms_) {
            if (m.eu() == 0) continue;
            Monomial d = m;
            d.eu() -= 1;
            r.add_term(d, c * C(m.eu()));
        }
        return r;
    }

    bool has_w() const {
        for (const auto& [m, c] : terms_)
            if (m.has_w()) return true;
        return false;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void check(const Poly& o) const {
        if (o.n_ != n_) throw InputError("polynomial arity mismatch");
    }

    Poly diff(int k, int times, bool bar) const {
        if (k < 0 || k >= n_) throw InputError("variable index out of range");
        Poly r(n_);
        for (const auto& [m, c] : terms_) {
            int e = bar ? m.b(k) : m.a(k);
            if (e < times) continue;
            long factor = 1;
            for (int t = 0; t < times; ++t) factor *= (e - t);
            Monomial d = m;
            (bar ? d.b(k) : d.a(k)) -= times;
            r.add_term(d, c * C(factor));
        }
        return r;
    }

    int n_ = 0;
    Terms terms_;
};

} // namespace scalelimit
