#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "dressed_rabi/linalg.hpp"
#include "dressed_rabi/parallel.hpp"

namespace rabi {

namespace detail {

// phi_k(x) spans ~ exp(+-x^2/2) across orders, far outside double range for
// the regimes used here, so the three-term recurrence is run on a mantissa
// m with a separate power-of-two exponent: phi = m * 2^e.
constexpr double kRescaleHigh = 1e100;
constexpr double kRescaleLow = 1e-100;
constexpr int kRescaleShift = 332; // 2^332 ~ 8.7e99

struct ScaledPhi {
    double m;
    long e;

    double value() const
    {
        if (m == 0.0 || e < -1200)
            return 0.0;
        if (e > 1020)
            throw std::overflow_error("hermite: scaled value out of double range");
        return std::ldexp(m, static_cast<int>(e));
    }
};

// phi_0(x) = pi^{-1/4} exp(-x^2/2), in scaled form.
inline ScaledPhi phi0_scaled(double x)
{
    constexpr double log2e = 1.4426950408889634;
    double t = (-0.5 * x * x - 0.25 * std::log(M_PI)) * log2e;
    double ef = std::floor(t);
    return {std::exp2(t - ef), static_cast<long>(ef)};
}

// Recurrence coefficients phi_{k+1} = a[k] x phi_k - b[k] phi_{k-1}.
struct PhiCoeffs {
    std::vector<double> a, b;

    explicit PhiCoeffs(long k_max) : a(static_cast<std::size_t>(k_max)), b(a.size())
    {
        for (long k = 0; k < k_max; ++k) {
            a[static_cast<std::size_t>(k)] = std::sqrt(2.0 / static_cast<double>(k + 1));
            b[static_cast<std::size_t>(k)] =
                std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1));
        }
    }
};

// Runs the recurrence up to order k_max at a single point, returning
// phi_{n_select}(x) and, when sumsq is non-null, the Christoffel denominator
// sum_{k=0}^{k_max} phi_k(x)^2.
inline double phi_recurrence(const PhiCoeffs& c, long n_select, long k_max, double x,
                             double* sumsq)
{
    ScaledPhi cur = phi0_scaled(x);
    double prev_m = 0.0; // shares cur.e
    double sel_m = (n_select == 0) ? cur.m : 0.0;
    long sel_e = cur.e;
    double s = cur.m * cur.m; // true sum = s * 2^{2e}
    for (long k = 0; k < k_max; ++k) {
        std::size_t ku = static_cast<std::size_t>(k);
        double next = c.a[ku] * x * cur.m - c.b[ku] * prev_m;
        prev_m = cur.m;
        cur.m = next;
        if (sumsq)
            s += next * next;
        if (k + 1 == n_select) {
            sel_m = cur.m;
            sel_e = cur.e;
        }
        double mag = std::max(std::abs(cur.m), std::abs(prev_m));
        if (mag > kRescaleHigh) {
            cur.m = std::ldexp(cur.m, -kRescaleShift);
            prev_m = std::ldexp(prev_m, -kRescaleShift);
            cur.e += kRescaleShift;
            s = std::ldexp(s, -2 * kRescaleShift);
        } else if (mag < kRescaleLow && mag > 0.0) {
            cur.m = std::ldexp(cur.m, kRescaleShift);
            prev_m = std::ldexp(prev_m, kRescaleShift);
            cur.e -= kRescaleShift;
            s = std::ldexp(s, 2 * kRescaleShift);
        }
    }
    if (sumsq)
        *sumsq = ScaledPhi{s, 2 * cur.e}.value();
    return ScaledPhi{sel_m, sel_e}.value();
}

} // namespace detail

/// Normalized Hermite function phi_n (weight e^{-x^2/2}, orthonormal on R),
/// by the stable normalized three-term recurrence. Underflow to zero far
/// outside the classical region is accepted.
inline std::vector<double> hermite_function(long n, std::span<const double> points)
{
    if (n < 0)
        throw std::invalid_argument("hermite_function: n must be >= 0");
    detail::PhiCoeffs coeffs(n);
    std::vector<double> out(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        out[i] = detail::phi_recurrence(coeffs, n, n, points[i], nullptr);
    });
    return out;
}

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

inline TridiagonalSymmetric hermite_jacobi_matrix(long order)
{
    std::vector<double> d(static_cast<std::size_t>(order), 0.0);
    std::vector<double> e(static_cast<std::size_t>(order - 1));
    for (long i = 0; i + 1 < order; ++i)
        e[static_cast<std::size_t>(i)] = std::sqrt(0.5 * static_cast<double>(i + 1));
    return TridiagonalSymmetric(std::move(d), std::move(e));
}

} // namespace detail

/// Gauss-Hermite rule for weight e^{-x^2}: Golub-Welsch eigensolve of the
/// Jacobi matrix, weights from the first eigenvector components.
inline QuadratureRule gauss_hermite(long order)
{
    if (order < 1)
        throw std::invalid_argument("gauss_hermite: order must be >= 1");
    if (order == 1)
        return {{0.0}, {std::sqrt(M_PI)}};
    Spectrum s = eigh_tridiagonal(detail::hermite_jacobi_matrix(order), true);
    QuadratureRule rule;
    rule.nodes = s.eigenvalues;
    rule.weights.resize(static_cast<std::size_t>(order));
    double mu0 = std::sqrt(M_PI);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        double v0 = s.vec(0, j);
        rule.weights[j] = mu0 * v0 * v0;
    }
    return rule;
}

/// Gauss-Hermite nodes with the e^{-x^2} weight absorbed into the integrand:
/// weights[i] = w_i e^{x_i^2}, computed through the Christoffel function
/// 1 / sum_{k<order} phi_k(x_i)^2 so no intermediate leaves double range.
/// Intended for integrands built from Hermite functions.
inline QuadratureRule gauss_hermite_absorbed(long order)
{
    if (order < 1)
        throw std::invalid_argument("gauss_hermite_absorbed: order must be >= 1");
    if (order == 1)
        return {{0.0}, {std::sqrt(M_PI)}};
    Spectrum s = eigh_tridiagonal(detail::hermite_jacobi_matrix(order), false);
    detail::PhiCoeffs coeffs(order - 1);
    QuadratureRule rule;
    rule.nodes = s.eigenvalues;
    rule.weights.resize(static_cast<std::size_t>(order));
    parallel_for(rule.nodes.size(), [&](std::size_t i) {
        double sum = 0.0;
        detail::phi_recurrence(coeffs, 0, order - 1, rule.nodes[i], &sum);
        rule.weights[i] = 1.0 / sum;
    });
    return rule;
}

} // namespace rabi
