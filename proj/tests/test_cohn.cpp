#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cohn/cohn.hpp"
#include "cohn/derivatives.hpp"

using namespace cohn;

namespace {

// Independent scalar bisection for tau_p: root of 2(1-t)^p = 1 + t^p.
double tau_p_bisect(double p) {
    auto f = [p](double t) { return 2.0 * std::pow(1.0 - t, p) - 1.0 - std::pow(t, p); };
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Scalar bisection for tau(p, sigma) on Phi = A^p + B^p - 1 = 0.
double tau_bisect(double p, double sigma) {
    auto phi = [p, sigma](double t) {
        double b0 = std::pow(1.0 + std::pow(t, p), -1.0 / p);
        double a0 = std::pow(1.0 + std::pow(sigma, p), -1.0 / p);
        double A = b0 - a0, B = t * b0 + sigma * a0;
        return std::pow(A, p) + std::pow(B, p) - 1.0;
    };
    double lo = 0.0, hi = 0.37;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (phi(lo) * phi(mid) <= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("sigma_p closed form values") {
    CHECK(sigma_p(Interval(2.0)).contains(std::sqrt(3.0)));
    CHECK(sigma_p(Interval(1.0)).contains(1.0));
    Interval s = sigma_p(Interval(1.5, 2.5));
    CHECK(s.lo <= std::pow(std::pow(2.0, 1.5) - 1.0, 1.0 / 1.5));
    CHECK(s.hi >= std::pow(std::pow(2.0, 2.5) - 1.0, 1.0 / 2.5));
}

TEST_CASE("make_box validation and clipping") {
    CHECK_THROWS_AS(make_box(Interval(0.5, 0.5), Interval(1.0)), InvalidRegion);
    CHECK_THROWS_AS(make_box(Interval(2.0), Interval(0.9, 1.0)), InvalidRegion);
    CHECK_THROWS_AS(make_box(Interval(2.0), Interval(1.0, 1.9)), InvalidRegion);
    bool clipped = false;
    Box b = make_box(Interval(2.0), Interval(1.0, 1.9), /*clip=*/true, &clipped);
    CHECK(clipped);
    CHECK(b.sigma.hi < 1.7330509);
    Box ok = make_box(Interval(2.0, 3.0), Interval(1.0, 1.7));
    CHECK(ok.sigma.hi == 1.7);
}

TEST_CASE("tau_p enclosure: p = 2 gives 2 - sqrt(3)") {
    TauEnclosure te = tau_p_enclose(Interval(2.0));
    CHECK(te.converged);
    CHECK(te.tau.contains(2.0 - std::sqrt(3.0)));
    CHECK(width(te.tau) < 1e-12);
}

TEST_CASE("tau_p stays inside the initial bracket and matches bisection") {
    for (double p : {1.05, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0}) {
        TauEnclosure te = tau_p_enclose(Interval(p));
        CHECK(te.tau.lo >= 0.0);
        CHECK(te.tau.hi <= 0.36);
        CHECK(te.tau.lo <= tau_p_bisect(p) + 1e-12);
        CHECK(te.tau.hi >= tau_p_bisect(p) - 1e-12);
    }
}

TEST_CASE("tau_p limit toward p = 1 is 1/3") {
    TauEnclosure te = tau_p_enclose(Interval(1.0001));
    CHECK(te.tau.contains(tau_p_bisect(1.0001)));
    CHECK(std::abs(midpoint(te.tau) - 1.0 / 3.0) < 1e-3);
}

TEST_CASE("tau(p, 1) equals tau_p") {
    for (double p : {1.3, 2.0, 3.5}) {
        Box b = make_box(Interval(p), Interval(1.0));
        TauEnclosure te = tau_enclose(b);
        TauEnclosure tp = tau_p_enclose(Interval(p));
        CHECK(intersect(te.tau, tp.tau).has_value());
        CHECK(width(te.tau) < 1e-10);
    }
}

TEST_CASE("tau enclosure contains the bisection root across the domain") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> pd(1.1, 6.0), f(0.0, 0.98);
    for (int it = 0; it < 200; ++it) {
        double p = pd(rng);
        double sp = std::pow(std::pow(2.0, p) - 1.0, 1.0 / p);
        double sigma = 1.0 + f(rng) * (sp - 1.0);
        Box b = make_box(Interval(p), Interval(sigma));
        TauEnclosure te = tau_enclose(b);
        CHECK(te.tau.contains(tau_bisect(p, sigma)));
    }
}

TEST_CASE("tau at sigma = sigma_p vanishes") {
    for (double p : {1.5, 2.0, 3.0}) {
        Interval sp = sigma_p(Interval(p));
        Box b{Interval(p), Interval(sp.lo)};
        TauEnclosure te = tau_enclose(b);
        CHECK(te.tau.lo <= 1e-12);
        CHECK(te.tau.hi < 1e-6);
    }
}

TEST_CASE("atoms satisfy the defining identity A^p + B^p = 1") {
    for (double p : {1.4, 2.0, 3.0}) {
        Box b = make_box(Interval(p), Interval(1.2));
        Interval tau = tau_enclose(b).tau;
        CohnAtoms at = atoms(b, tau);
        Interval unit = at.alpha[0] + at.beta[0];
        CHECK(unit.contains(1.0));
        CHECK(width(unit) < 1e-9);
        // alpha_0 = A^p = A^(p-1) * A and the a/b ladders step by one power
        CHECK(intersect(at.alpha[0], at.alpha[1] * at.A).has_value());
        CHECK(intersect(at.s[0], at.s[1] * b.sigma).has_value());
    }
}

TEST_CASE("delta at p = 2 is sqrt(3)/2") {
    const double v = std::sqrt(3.0) / 2.0;
    for (double sigma : {1.0, 1.2, 1.5, 1.7}) {
        Box b = make_box(Interval(2.0), Interval(sigma));
        Interval d = delta_enclose(b);
        CHECK(d.contains(v));
        CHECK(width(d) < 1e-9);
    }
}

TEST_CASE("endpoint closed forms match the generic evaluation") {
    for (double p : {1.25, 1.5, 2.5, 3.0, 4.0, 6.0}) {
        auto [d1, dp] = delta_endpoints(Interval(p));
        Box at1 = make_box(Interval(p), Interval(1.0));
        CHECK(intersect(d1, delta_enclose(at1)).has_value());

        double tp = tau_p_bisect(p);
        double ref1 = std::pow(2.0, -2.0 / p) * (1.0 + tp) / (1.0 - tp);
        CHECK(d1.lo <= ref1 + 1e-9);
        CHECK(d1.hi >= ref1 - 1e-9);

        double sp = std::pow(std::pow(2.0, p) - 1.0, 1.0 / p);
        CHECK(dp.lo <= sp / 2.0 + 1e-9);
        CHECK(dp.hi >= sp / 2.0 - 1e-9);
    }
}

TEST_CASE("enclosure width decays with box width") {
    double prev = 1e300;
    for (double w : {0.1, 0.01, 0.001, 0.0001}) {
        Box b = make_box(Interval(1.5, 1.5 + w), Interval(1.1, 1.1 + w));
        double cur = width(delta_enclose(b));
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev < 1e-2);
    // the centered form converges like width times the gradient bound
    Box small = make_box(Interval(1.5, 1.5001), Interval(1.1, 1.1001));
    CHECK(width(delta_refined(small)) < 1e-4);
}

TEST_CASE("minkowski constant at p = 2 is 2/sqrt(3)") {
    Interval c = minkowski_constant(Interval(2.0));
    CHECK(c.contains(2.0 / std::sqrt(3.0)));
    CHECK(width(c) < 1e-9);
}
