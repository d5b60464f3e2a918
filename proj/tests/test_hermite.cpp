#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "dressed_rabi/hermite.hpp"

using namespace rabi;

namespace {

// independent oracle: unnormalized physicists' Hermite polynomials via the
// plain recurrence, usable only at small order where nothing overflows
double phi_oracle(long n, double x)
{
    double h0 = 1.0, h1 = 2.0 * x;
    if (n == 0)
        h1 = h0;
    for (long k = 1; k < n; ++k) {
        double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    double log_norm = 0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(M_PI));
    return h1 * std::exp(-0.5 * x * x - log_norm);
}

} // namespace

TEST_CASE("hermite function matches naive recurrence at small order")
{
    std::vector<double> pts = {-3.0, -1.2, 0.0, 0.4, 1.0, 2.5, 5.0};
    for (long n : {0L, 1L, 2L, 5L, 12L, 30L}) {
        auto vals = hermite_function(n, pts);
        for (std::size_t i = 0; i < pts.size(); ++i)
            CHECK_THAT(vals[i], Catch::Matchers::WithinAbs(phi_oracle(n, pts[i]), 1e-12));
    }
}

TEST_CASE("hermite function orthonormality by Simpson oracle")
{
    // integral phi_a phi_b over [-L, L] with composite Simpson
    const double limit = 20.0;
    const int steps = 4000; // even
    const double h = 2.0 * limit / steps;
    std::vector<double> grid(steps + 1);
    for (int i = 0; i <= steps; ++i)
        grid[i] = -limit + h * i;
    auto dot = [&](long a, long b) {
        auto fa = hermite_function(a, grid);
        auto fb = hermite_function(b, grid);
        double s = 0.0;
        for (int i = 0; i <= steps; ++i) {
            double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            s += w * fa[i] * fb[i];
        }
        return s * h / 3.0;
    };
    CHECK_THAT(dot(0, 0), Catch::Matchers::WithinAbs(1.0, 1e-10));
    CHECK_THAT(dot(7, 7), Catch::Matchers::WithinAbs(1.0, 1e-10));
    CHECK_THAT(dot(40, 40), Catch::Matchers::WithinAbs(1.0, 1e-10));
    CHECK_THAT(dot(0, 2), Catch::Matchers::WithinAbs(0.0, 1e-10));
    CHECK_THAT(dot(3, 9), Catch::Matchers::WithinAbs(0.0, 1e-10));
}

TEST_CASE("hermite function survives extreme order")
{
    // closed form at the origin: phi_{2m}(0) = (-1)^m pi^{-1/4}
    // sqrt((2m-1)!!/(2m)!!), evaluated through log-gamma
    auto origin_oracle = [](long n) {
        long m = n / 2;
        double log_ratio = std::lgamma(n + 1.0) - 2.0 * (m * std::log(2.0) + std::lgamma(m + 1.0));
        double mag = std::exp(0.5 * log_ratio - 0.25 * std::log(M_PI));
        return (m % 2 ? -mag : mag);
    };
    std::vector<double> origin = {0.0};
    for (long n : {1000L, 100000L, 1000000L}) {
        auto v = hermite_function(n, origin);
        REQUIRE(std::isfinite(v[0]));
        CHECK_THAT(v[0], Catch::Matchers::WithinRel(origin_oracle(n), 1e-9));
    }
    // frozen reference for the largest case
    CHECK_THAT(hermite_function(1000000, origin)[0],
               Catch::Matchers::WithinRel(0.021216928277649344, 1e-10));
    // far outside the classical region the value underflows cleanly to zero
    std::vector<double> far = {2000.0};
    CHECK(hermite_function(1000000, far)[0] == 0.0);
}

TEST_CASE("gauss hermite rule")
{
    auto r1 = gauss_hermite(1);
    CHECK(r1.nodes == std::vector<double>{0.0});
    CHECK_THAT(r1.weights[0], Catch::Matchers::WithinRel(std::sqrt(M_PI), 1e-15));

    // moments of e^{-x^2}: order-n rule integrates x^{2k} exactly for 2k <= 2n-1
    auto moment = [](const QuadratureRule& r, int p) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            s += r.weights[i] * std::pow(r.nodes[i], p);
        return s;
    };
    for (long order : {2L, 5L, 20L, 64L}) {
        auto r = gauss_hermite(order);
        double sp = std::sqrt(M_PI);
        CHECK_THAT(moment(r, 0), Catch::Matchers::WithinRel(sp, 1e-13));
        CHECK_THAT(moment(r, 2), Catch::Matchers::WithinRel(0.5 * sp, 1e-12));
        if (order >= 3)
            CHECK_THAT(moment(r, 4), Catch::Matchers::WithinRel(0.75 * sp, 1e-12));
        CHECK_THAT(moment(r, 1), Catch::Matchers::WithinAbs(0.0, 1e-12));
        // symmetric nodes
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            CHECK(std::abs(r.nodes[i] + r.nodes[r.nodes.size() - 1 - i]) < 1e-12);
    }
}

TEST_CASE("absorbed rule agrees with plain rule at modest order")
{
    for (long order : {5L, 40L, 200L}) {
        auto plain = gauss_hermite(order);
        auto absorbed = gauss_hermite_absorbed(order);
        for (std::size_t i = 0; i < plain.nodes.size(); ++i) {
            CHECK_THAT(absorbed.nodes[i], Catch::Matchers::WithinAbs(plain.nodes[i], 1e-10));
            double expected = plain.weights[i] * std::exp(plain.nodes[i] * plain.nodes[i]);
            CHECK_THAT(absorbed.weights[i], Catch::Matchers::WithinRel(expected, 1e-9));
        }
    }
}

TEST_CASE("absorbed rule integrates hermite densities at large order")
{
    // integral phi_n(x)^2 dx = 1, evaluated as sum w_i e^{x_i^2} phi_n(x_i)^2
    for (long n : {500L, 2000L}) {
        long order = n + 40;
        auto r = gauss_hermite_absorbed(order);
        auto phi = hermite_function(n, r.nodes);
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            s += r.weights[i] * phi[i] * phi[i];
        CHECK_THAT(s, Catch::Matchers::WithinRel(1.0, 1e-11));
        // finite weights even though the bare w_i underflow at this order
        for (double w : r.weights)
            CHECK(std::isfinite(w));
    }
}

TEST_CASE("quadrature input validation")
{
    CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_hermite_absorbed(-3), std::invalid_argument);
    std::vector<double> p = {0.0};
    CHECK_THROWS_AS(hermite_function(-1, p), std::invalid_argument);
}
