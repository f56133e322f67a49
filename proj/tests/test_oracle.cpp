#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cohn/cohn.hpp"
#include "cohn/oracle.hpp"

using namespace cohn;

TEST_CASE("oracle tau_p matches known values") {
    CHECK(std::abs(oracle::tau_p_point(2.0) - (2.0 - std::sqrt(3.0))) < 1e-12);
    // p -> 1+ limit is 1/3
    CHECK(std::abs(oracle::tau_p_point(1.0001) - 1.0 / 3.0) < 1e-3);
}

TEST_CASE("oracle delta at p = 2 is constant sqrt(3)/2") {
    for (double s : {1.0, 1.3, 1.7}) {
        CHECK(std::abs(oracle::delta_point(2.0, s) - std::sqrt(3.0) / 2.0) < 1e-10);
    }
}

TEST_CASE("oracle tau at sigma = 1 matches the quadratic root") {
    CHECK(std::abs(oracle::tau_point(2.0, 1.0) - (2.0 - std::sqrt(3.0))) < 1e-12);
    CHECK_THROWS_AS(oracle::tau_point(0.5, 1.0), DomainError);
}

TEST_CASE("finite differences are small at p = 2") {
    CHECK(std::abs(oracle::fd_derivative(oracle::DerivId::d_sigma, 2.0, 1.3)) < 1e-7);
}

TEST_CASE("parallelogram minimum areas at the classical p values") {
    oracle::OracleConfig cfg;
    CHECK(std::abs(oracle::min_parallelogram_area(1.0, cfg) - 0.5) < 1e-3);
    CHECK(std::abs(oracle::min_parallelogram_area(2.0, cfg) - std::sqrt(3.0) / 2.0) < 1e-3);
    CHECK(oracle::min_parallelogram_area(50.0, cfg) >= 0.95);
}

TEST_CASE("parallelogram minimum is consistent with the endpoint minimum") {
    for (double p : {1.5, 2.0, 3.0, 6.0}) {
        auto [d1, dp] = delta_endpoints(Interval(p));
        double endpoint_min = std::min(midpoint(d1), midpoint(dp));
        double area = oracle::min_parallelogram_area(p);
        CHECK(area >= endpoint_min - 1e-3);
        CHECK(area <= endpoint_min + 1e-2); // the endpoints are candidates
    }
}

TEST_CASE("oracle is deterministic and parallel mode agrees with serial") {
    oracle::OracleConfig par, ser;
    ser.parallel = false;
    for (double p : {1.2, 2.7}) {
        double a = oracle::min_parallelogram_area(p, par);
        double b = oracle::min_parallelogram_area(p, par);
        double c = oracle::min_parallelogram_area(p, ser);
        CHECK(a == b);
        CHECK(std::abs(a - c) < 1e-12);
    }
}
