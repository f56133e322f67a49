#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cohn/expr.hpp"
#include "cohn/interval.hpp"

using namespace cohn;

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(Interval(std::nan(""), 1.0), DomainError);
    Interval a(1.0, 2.0);
    CHECK(a.contains(1.5));
    CHECK(!a.contains(2.0000001));
}

TEST_CASE("basic arithmetic containment") {
    Interval a(1.0, 2.0), b(-0.5, 0.25);
    Interval s = a + b;
    CHECK(s.lo <= 0.5);
    CHECK(s.hi >= 2.25);
    Interval d = a - b;
    CHECK(d.contains(1.5 - 0.0));
    CHECK(d.contains(2.0 + 0.5));
    Interval m = a * b;
    CHECK(m.contains(-1.0));
    CHECK(m.contains(0.5));
    CHECK_THROWS_AS(a / b, DomainError); // divisor straddles zero
    Interval q = a / Interval(2.0, 4.0);
    CHECK(q.contains(0.25));
    CHECK(q.contains(1.0));
}

TEST_CASE("degenerate operations stay within a few ulps") {
    Interval two(2.0);
    Interval four = two * two;
    CHECK(four.contains(4.0));
    CHECK(width(four) <= 4 * std::ldexp(1.0, -50)); // 4 ulps at 4
    Interval p = pow_iv(two, two);
    CHECK(p.contains(4.0));
    CHECK(width(p) <= 4 * std::ldexp(1.0, -50));
    Interval e = exp_iv(Interval(0.0));
    CHECK(e.contains(1.0));
    CHECK(width(e) <= 8 * std::ldexp(1.0, -52));
}

TEST_CASE("intersect and hull") {
    Interval a(0.0, 1.0), b(0.5, 2.0), c(3.0, 4.0);
    auto i = intersect(a, b);
    REQUIRE(i.has_value());
    CHECK(i->lo == 0.5);
    CHECK(i->hi == 1.0);
    CHECK(!intersect(a, c).has_value());
    Interval h = hull(a, c);
    CHECK(h.lo == 0.0);
    CHECK(h.hi == 4.0);
}

TEST_CASE("pow domain handling") {
    CHECK_THROWS_AS(pow_iv(Interval(-1.0, 1.0), Interval(2.0)), DomainError);
    CHECK_THROWS_AS(pow_iv(Interval(0.0, 1.0), Interval(-1.0, 1.0)), DomainError);
    Interval z = pow_iv(Interval(0.0, 1.0), Interval(0.5, 2.0));
    CHECK(z.lo == 0.0);
    CHECK(z.contains(1.0));
    Interval w = powi_iv(Interval(-2.0, 3.0), 2);
    CHECK(w.contains(0.0));
    CHECK(w.contains(9.0));
    CHECK(w.lo <= 0.0);
}

namespace {

double rnd(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace

TEST_CASE("containment fuzz: point operations inside interval results") {
    std::mt19937_64 rng(20240811);
    for (int it = 0; it < 10000; ++it) {
        double xl = rnd(rng, -10.0, 10.0), xw = rnd(rng, 0.0, 2.0);
        double yl = rnd(rng, -10.0, 10.0), yw = rnd(rng, 0.0, 2.0);
        Interval X(xl, xl + xw), Y(yl, yl + yw);
        double x = rnd(rng, X.lo, X.hi), y = rnd(rng, Y.lo, Y.hi);
        CHECK((X + Y).contains(x + y));
        CHECK((X - Y).contains(x - y));
        CHECK((X * Y).contains(x * y));
        if (Y.lo > 0.0 || Y.hi < 0.0) CHECK((X / Y).contains(x / y));
        if (X.lo > 0.0) {
            CHECK(log_iv(X).contains(std::log(x)));
            CHECK(pow_iv(X, Y).contains(std::pow(x, y)));
        }
        if (X.hi < 700.0) CHECK(exp_iv(X).contains(std::exp(x)));
    }
}

TEST_CASE("inclusion monotonicity") {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 2000; ++it) {
        double xl = rnd(rng, 0.1, 5.0);
        Interval X(xl, xl + rnd(rng, 0.0, 1.0));
        double il = rnd(rng, X.lo, X.hi);
        Interval Xi(il, rnd(rng, il, X.hi));
        Interval Y(rnd(rng, -3.0, 0.0), rnd(rng, 0.0, 3.0));
        double jl = rnd(rng, Y.lo, Y.hi);
        Interval Yi(jl, rnd(rng, jl, Y.hi));
        CHECK((X + Y).contains(Xi + Yi));
        CHECK((X * Y).contains(Xi * Yi));
        CHECK(pow_iv(X, Y).contains(pow_iv(Xi, Yi)));
    }
}

TEST_CASE("monotone_eval picks sharp corners") {
    MonotoneDescriptor f{
        [](double x, double y) { return Interval(x) + Interval(y); }, +1, +1};
    Interval r = monotone_eval(f, Interval(1.0, 2.0), Interval(10.0, 20.0));
    CHECK(r.contains(11.0));
    CHECK(r.contains(22.0));
    CHECK(width(r) < 11.0 + 1e-9);

    MonotoneDescriptor g{
        [](double x, double y) { return Interval(x) - Interval(y); }, +1, -1};
    Interval s = monotone_eval(g, Interval(1.0, 2.0), Interval(10.0, 20.0));
    CHECK(s.lo <= -19.0);
    CHECK(s.hi >= -8.0);
}

TEST_CASE("rational_eval natural extension vs point sampling") {
    // f(x, y) = (x*y + 2) / (x - y)
    auto f = (expr_x() * expr_y() + expr_const(2.0)) / (expr_x() - expr_y());
    Interval X(3.0, 4.0), Y(0.5, 1.0);
    Interval R = rational_eval(f, X, Y);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 1000; ++it) {
        double x = rnd(rng, X.lo, X.hi), y = rnd(rng, Y.lo, Y.hi);
        CHECK(R.contains((x * y + 2.0) / (x - y)));
    }
    CHECK_THROWS_AS(rational_eval(f, Interval(0.0, 1.0), Interval(0.5, 1.0)),
                    DomainError);
}
