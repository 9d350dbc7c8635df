#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "agboost/potential.hpp"

using namespace agboost;

namespace {
const double e = std::exp(1.0);
}

TEST_CASE("phi point values") {
    CHECK(phi(0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(phi(-1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(phi(1.0) == doctest::Approx(3.0 / e).epsilon(1e-14));
    CHECK(phi(1.0) == doctest::Approx(1.103638).epsilon(1e-6));
}

TEST_CASE("phi_prime point values") {
    CHECK(phi_prime(-5.0) == -1.0);
    CHECK(phi_prime(0.0) == -1.0);
    CHECK(phi_prime(1.0) == doctest::Approx(-2.0 / e).epsilon(1e-14));
    CHECK(phi_prime(1.0) == doctest::Approx(-0.735759).epsilon(1e-6));
}

TEST_CASE("phi_second point values") {
    CHECK(phi_second(-2.0) == 0.0);
    CHECK(phi_second(1.0) == doctest::Approx(1.0 / e).epsilon(1e-14));
    CHECK(phi_second(2.0) == doctest::Approx(2.0 / (e * e)).epsilon(1e-14));
    CHECK(phi_second(2.0) == doctest::Approx(0.270671).epsilon(1e-6));
}

TEST_CASE("grid bounds, convexity and monotonicity") {
    double prev = phi(-10.0);
    double peak = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double z = -10.0 + 20.0 * i / 9999;
        const double v = phi(z);
        REQUIRE(v >= 0.0);
        REQUIRE(phi_prime(z) >= -1.0);
        REQUIRE(phi_prime(z) <= 0.0);
        REQUIRE(phi_second(z) >= 0.0);
        REQUIRE(phi_second(z) <= 1.0);
        REQUIRE(v <= prev);
        prev = v;
        peak = std::max(peak, phi_second(z));
    }
    CHECK(peak <= 1.0 / e + 1e-15);
    CHECK(std::abs(phi_second(1.0) - std::exp(-1.0)) <= 1e-12);
}

TEST_CASE("seam continuity") {
    for (double h : {1e-13, 1e-14, 1e-15}) {
        CHECK(std::abs(phi(-h) - phi(h)) <= 1e-12);
        CHECK(std::abs(phi_prime(-h) - phi_prime(h)) <= 1e-12);
        CHECK(std::abs(phi_second(-h) - phi_second(h)) <= 1e-12);
    }
}

TEST_CASE("central differences match derivatives") {
    const double h = 1e-5;
    for (int i = 0; i < 10000; ++i) {
        const double z = -10.0 + 20.0 * i / 9999;
        CHECK(std::abs((phi(z + h) - phi(z - h)) / (2 * h) - phi_prime(z)) <= 1e-6);
        CHECK(std::abs((phi_prime(z + h) - phi_prime(z - h)) / (2 * h) - phi_second(z)) <= 1e-6);
    }
}

TEST_CASE("second difference at the seam has an O(h) error") {
    // phi''' jumps from 0 to 1 at the origin, so the centered difference of
    // phi' is off by h/4 there.
    const double h = 1e-5;
    const double fd = (phi_prime(h) - phi_prime(-h)) / (2 * h);
    CHECK(fd == doctest::Approx(h / 4).epsilon(1e-3));
}

TEST_CASE("far right tail returns the exact limit") {
    CHECK(phi(701.0) == 0.0);
    CHECK(phi_prime(701.0) == 0.0);
    CHECK(phi_second(701.0) == 0.0);
    CHECK(phi(700.0) > 0.0);
}

TEST_CASE("non-finite input is rejected") {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(phi(nan), std::domain_error);
    CHECK_THROWS_AS(phi_prime(inf), std::domain_error);
    CHECK_THROWS_AS(phi_second(-inf), std::domain_error);
}

TEST_CASE("madaboost variant") {
    CHECK(madaboost_weight(0.0) == 1.0);
    CHECK(madaboost_weight(-3.0) == 1.0);
    CHECK(madaboost_weight(2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK(phi_madaboost(-2.0) == 3.0);
    CHECK(phi_madaboost(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(potential_prime(PotentialKind::MadaBoost, 1.5) == doctest::Approx(-std::exp(-1.5)));
    CHECK(potential(PotentialKind::SmoothPiecewise, 0.5) == phi(0.5));
}
