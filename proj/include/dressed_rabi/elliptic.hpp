#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rabi {

/// Complete elliptic integral of the second kind E(m), parameter convention
/// E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt, 0 <= m <= 1.
/// Arithmetic-geometric mean iteration; converges quadratically.
inline double comp_ellint_2(double m)
{
    if (!(m >= 0.0 && m <= 1.0))
        throw std::invalid_argument("comp_ellint_2: parameter m must be in [0, 1]");
    if (m == 0.0)
        return M_PI / 2.0;
    if (m == 1.0)
        return 1.0;
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double c = std::sqrt(m);
    double sum = 0.5 * c * c; // 2^{n-1} c_n^2 accumulated from n = 0
    double pow2 = 1.0;
    for (int it = 0; it < 64; ++it) {
        double an = 0.5 * (a + b);
        double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        sum += pow2 * c * c;
        pow2 *= 2.0;
        if (c * c * pow2 < 1e-18)
            break;
    }
    double k_complete = M_PI / (2.0 * a);
    return k_complete * (1.0 - sum);
}

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on the Legendre
// recurrence with the Chebyshev initial guess.
inline void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w)
{
    x.resize(order);
    w.resize(order);
    int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (z * p0 - p1) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-15)
                break;
        }
        x[i] = -z;
        x[order - 1 - i] = z;
        w[i] = w[order - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

} // namespace detail

/// Same E(m) through fixed-order Gauss-Legendre on the defining integral.
/// Kept as an independent route to cross-check the AGM reduction.
inline double comp_ellint_2_quadrature(double m, int order = 64)
{
    if (!(m >= 0.0 && m <= 1.0))
        throw std::invalid_argument("comp_ellint_2_quadrature: m must be in [0, 1]");
    std::vector<double> x, w;
    detail::gauss_legendre(order, x, w);
    // theta = (pi/4)(t + 1), t in [-1, 1]
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
        double theta = 0.25 * M_PI * (x[i] + 1.0);
        double s = std::sin(theta);
        sum += w[i] * std::sqrt(1.0 - m * s * s);
    }
    return 0.25 * M_PI * sum;
}

} // namespace rabi
