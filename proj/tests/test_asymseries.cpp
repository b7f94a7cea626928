#include <doctest.h>

#include "support.hpp"

using namespace scalelimit;
using namespace scalelimit::testing;

namespace {

JSeries jpow(long c, long num, long den = 1) { return JSeries::monomial(GaussRational(c), Rational(num, den)); }

JSeries random_series(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> nterms(1, 3), num(0, 12);
    JSeries x;
    for (int t = nterms(gen); t > 0; --t) x += JSeries::monomial(small_gauss(gen), Rational(num(gen), 8));
    return x;
}

} // namespace

TEST_CASE("products add exponents") {
    CHECK(jpow(1, 1, 4) * jpow(1, 3, 8) == jpow(1, 5, 8));
    CHECK(jpow(1, 1, 8).abs2().pow(4) == jpow(1, 1));
    JSeries a = parse_jseries("-1*j^(-1) - 2*j^(-2) - 1*j^(-3)");
    JSeries b = parse_jseries("j^(-1) + j^(-2) + j^(-3)");
    CHECK(a + b == jpow(-1, 2));
}

TEST_CASE("abs2 has real coefficients") {
    JSeries x = JSeries::monomial(GaussRational(Rational(1), Rational(2)), Rational(1, 3)) + jpow(3, 1);
    for (const auto& t : x.abs2().terms()) CHECK(t.c.is_real());
}

TEST_CASE("rational powers") {
    Rational rel(4);
    CHECK(rational_power(jpow(1, 2) * inverse(jpow(1, 1), rel), Rational(1, 2), rel) == jpow(1, 1, 2));
    JSeries tau1 = jpow(1, 1, 4) * rational_power(jpow(1, 2) * inverse(jpow(1, 1), rel), Rational(1, 2), rel);
    CHECK(tau1 == jpow(1, 3, 4));
    JSeries tau51 = jpow(1, 1, 8) * rational_power(jpow(1, 1), Rational(1, 4), rel);
    CHECK(tau51 == jpow(1, 3, 8));

    // (1 + j^-1)^(1/2) = 1 + j^-1/2 - j^-2/8 + O(j^-3); terms at the truncation order itself are unknown.
    JSeries s = rational_power(jpow(1, 0) + jpow(1, 1), Rational(1, 2), Rational(3));
    CHECK(s.coeff(Rational(0)) == GaussRational(1));
    CHECK(s.coeff(Rational(1)) == GaussRational(Rational(1, 2)));
    CHECK(s.coeff(Rational(2)) == GaussRational(Rational(-1, 8)));
    REQUIRE(s.error_order());
    CHECK(*s.error_order() == Rational(3));
    CHECK(std::abs(s.eval(1e3).real() - std::sqrt(1.001)) < 1e-9);

    CHECK_THROWS_AS(rational_power(jpow(-1, 1), Rational(1, 2), rel), MathError);
    CHECK_THROWS_AS(rational_power(jpow(2, 1), Rational(1, 2), rel), MathError);
}

TEST_CASE("limits") {
    auto a = limit(jpow(5, 1, 2) + jpow(3, 2));
    CHECK(a.kind == JLimit::Kind::Finite);
    CHECK(a.value == GaussRational(0));
    auto b = limit(jpow(4, 0) + jpow(1, 1, 2));
    CHECK(b.kind == JLimit::Kind::Finite);
    CHECK(b.value == GaussRational(4));
    auto c = limit(jpow(1, -1, 2));
    CHECK(c.kind == JLimit::Kind::Diverges);
    CHECK(c.decay == Rational(-1, 2));
}

TEST_CASE("comparisons") {
    CHECK(compare(jpow(1, 2), jpow(1, 1)) == JRelation::LittleO);
    CHECK(compare(jpow(1, 1), jpow(1, 3)) == JRelation::Dominates);
    JSeries x = jpow(3, 1, 2) + jpow(1, 1);
    CHECK(compare(x, x) == JRelation::Equivalent);
}

TEST_CASE("parse and print round trip") {
    for (const char* s : {"-1*j^(-1) - 2*j^(-2) - 1*j^(-3)", "(1/2 + 3/4*i)*j^(-5/8)", "7", "9/7*j^(-1) - j^(-2)"}) {
        JSeries x = parse_jseries(s);
        CHECK(parse_jseries(to_string(x)) == x);
    }
    CHECK_THROWS_AS(parse_jseries("j^(-1"), ParseError);
}

TEST_CASE("ring laws on random series") {
    std::mt19937_64 gen(31);
    for (int t = 0; t < 200; ++t) {
        JSeries a = random_series(gen), b = random_series(gen), c = random_series(gen);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a + b).conj() == a.conj() + b.conj());
        CHECK((a - a).is_zero());
        if (!a.is_zero() && !b.is_zero()) CHECK(*(a * b).order() == *a.order() + *b.order());
        auto la = limit(a), lb = limit(b), lab = limit(a * b);
        if (la.kind == JLimit::Kind::Finite && lb.kind == JLimit::Kind::Finite) {
            CHECK(lab.kind == JLimit::Kind::Finite);
            CHECK(lab.value == la.value * lb.value);
        }
    }
}

TEST_CASE("numeric evaluation matches the symbolic value") {
    std::mt19937_64 gen(37);
    for (int t = 0; t < 100; ++t) {
        JSeries a = random_series(gen), b = random_series(gen);
        for (double j : {1e3, 1e6}) {
            std::complex<double> lhs = (a * b).eval(j), rhs = a.eval(j) * b.eval(j);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
        }
    }
    // Truncated powers agree once the error order is accounted for.
    JSeries x = jpow(2, 1) + jpow(3, 2) + jpow(1, 3);
    x = x * x;
    JSeries r = rational_power(x, Rational(1, 2), Rational(6));
    for (double j : {1e3, 1e6}) {
        double exact = std::sqrt(x.eval(j).real());
        CHECK(std::abs(r.eval(j).real() - exact) <= 1e-8 * exact);
    }
}

TEST_CASE("truncation records an error order") {
    JSeries x = jpow(1, 1) + jpow(2, 2) + jpow(3, 3);
    JSeries t = x.truncated(Rational(2));
    CHECK(t.terms().size() == 1);
    REQUIRE(t.error_order());
    CHECK(*t.error_order() == Rational(2));
    CHECK(!t.exact());
    CHECK((t * jpow(1, 1)).error_order() == Rational(3));
}
