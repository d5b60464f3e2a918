#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dressed_rabi/elliptic.hpp"

using namespace rabi;

TEST_CASE("elliptic E endpoint values")
{
    CHECK(comp_ellint_2(0.0) == M_PI / 2.0);
    CHECK(comp_ellint_2(1.0) == 1.0);
    CHECK_THAT(comp_ellint_2(0.5), Catch::Matchers::WithinRel(1.3506438810476755, 1e-14));
}

TEST_CASE("AGM route agrees with quadrature route")
{
    for (double m : {1e-6, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        double agm = comp_ellint_2(m);
        double quad = comp_ellint_2_quadrature(m);
        CHECK_THAT(agm, Catch::Matchers::WithinRel(quad, 1e-12));
    }
}

TEST_CASE("elliptic E series behaviour near m = 0")
{
    // E(m) = (pi/2)(1 - m/4 - 3 m^2/64 - 5 m^3/256 - ...)
    for (double m : {1e-4, 1e-3, 1e-2}) {
        double series = 0.5 * M_PI * (1.0 - m / 4.0 - 3.0 * m * m / 64.0);
        double next_term = 0.5 * M_PI * 5.0 * m * m * m / 256.0;
        CHECK_THAT(comp_ellint_2(m),
                   Catch::Matchers::WithinAbs(series, 1.5 * next_term + 1e-15));
    }
}

TEST_CASE("elliptic E is monotone decreasing in m")
{
    double prev = comp_ellint_2(0.0);
    for (int i = 1; i <= 100; ++i) {
        double cur = comp_ellint_2(i / 100.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("elliptic E rejects out-of-range parameters")
{
    CHECK_THROWS_AS(comp_ellint_2(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(comp_ellint_2(1.1), std::invalid_argument);
    CHECK_THROWS_AS(comp_ellint_2(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(comp_ellint_2_quadrature(2.0), std::invalid_argument);
}
