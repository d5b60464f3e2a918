#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dressed_rabi/elliptic.hpp"
#include "dressed_rabi/hermite.hpp"
#include "dressed_rabi/linalg.hpp"
#include "dressed_rabi/model.hpp"

namespace rabi {

enum class GapMethod { quadrature, operator_diag, wkb, series, ahmad_bullough, ostrovsky };

struct Method {
    GapMethod kind;
    long k = 0; // resonance index, ahmad_bullough only

    std::string name() const
    {
        switch (kind) {
        case GapMethod::quadrature: return "quadrature";
        case GapMethod::operator_diag: return "operator";
        case GapMethod::wkb: return "wkb";
        case GapMethod::series: return "series";
        case GapMethod::ahmad_bullough:
            // k = 0 stands for "index chosen per use", e.g. per table row
            return k > 0 ? "ahmad_bullough(" + std::to_string(k) + ")" : "ahmad_bullough";
        case GapMethod::ostrovsky: return "ostrovsky";
        }
        return "?";
    }
};

inline Method parse_method(const std::string& s, long k = 0)
{
    if (s == "quadrature")
        return {GapMethod::quadrature};
    if (s == "operator")
        return {GapMethod::operator_diag};
    if (s == "wkb")
        return {GapMethod::wkb};
    if (s == "series")
        return {GapMethod::series};
    if (s == "ostrovsky")
        return {GapMethod::ostrovsky};
    if (s == "ahmad_bullough")
        return {GapMethod::ahmad_bullough, k};
    if (s.rfind("ahmad_bullough(", 0) == 0 && s.back() == ')')
        return {GapMethod::ahmad_bullough, std::stol(s.substr(15, s.size() - 16))};
    throw std::invalid_argument("unknown method: " + s);
}

/// Raised when the truncation-doubling check of the operator route fails;
/// carries both values so the caller can see how far apart they are.
struct ConvergenceError : std::runtime_error {
    double value_coarse, value_fine;

    ConvergenceError(double coarse, double fine)
        : std::runtime_error("operator dressed gap not truncation-converged: " +
                             std::to_string(coarse) + " vs " + std::to_string(fine)),
          value_coarse(coarse), value_fine(fine)
    {
    }
};

// Largest n served by the quadrature route; beyond this the Hermite sums get
// too expensive on one core and the WKB error is far below any use here.
constexpr long kQuadratureMaxN = 200000;
// Up to here the rule is Gauss-Hermite of order max(n+64, 512); above, the
// same integral is summed on a uniform grid fine enough to resolve phi_n^2
// (aliasing error controlled by the bandwidth 2 sqrt(2n+1) of phi_n^2).
constexpr long kQuadratureGaussMax = 2000;

inline long default_operator_n_max(long n)
{
    return std::max(4 * n + 64, 256L);
}

namespace detail {

// Discretization of  integral phi_n(x)^2 f(x) dx  ~=  sum_i c[i] f(x[i]).
struct FockDensityRule {
    std::vector<double> x;
    std::vector<double> c;
};

inline std::shared_ptr<const FockDensityRule> fock_density_rule(long n)
{
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const FockDensityRule>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end())
            return it->second;
    }
    auto rule = std::make_shared<FockDensityRule>();
    if (n <= kQuadratureGaussMax) {
        // the order floor covers the slow convergence when the sqrt branch
        // point delta_e/(2 sqrt(2) u) sits close to the real axis (small n,
        // large g): order 512 reaches ~1e-12 at g = 1
        long order = std::max(n + 64, 512L);
        QuadratureRule gh = gauss_hermite_absorbed(order);
        std::vector<double> phi = hermite_function(n, gh.nodes);
        rule->x = std::move(gh.nodes);
        rule->c.resize(rule->x.size());
        for (std::size_t i = 0; i < rule->c.size(); ++i)
            rule->c[i] = gh.weights[i] * phi[i] * phi[i];
    } else {
        double turning = std::sqrt(2.0 * static_cast<double>(n) + 1.0);
        double span = turning + 15.0;
        double h = M_PI / (turning + 10.0);
        std::size_t half = static_cast<std::size_t>(std::ceil(span / h));
        std::vector<double> pts(half + 1);
        for (std::size_t j = 0; j <= half; ++j)
            pts[j] = static_cast<double>(j) * h;
        std::vector<double> phi = hermite_function(n, pts);
        rule->x = std::move(pts);
        rule->c.resize(rule->x.size());
        for (std::size_t j = 0; j < rule->c.size(); ++j)
            rule->c[j] = (j == 0 ? 1.0 : 2.0) * h * phi[j] * phi[j];
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(n, std::move(rule));
    return it->second;
}

inline std::shared_ptr<const Spectrum> position_spectrum_cached(long n_max)
{
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const Spectrum>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n_max);
        if (it != cache.end())
            return it->second;
    }
    auto s = std::make_shared<Spectrum>(eigh_tridiagonal(position_operator_matrix(n_max), true));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(n_max, std::move(s));
    return it->second;
}

} // namespace detail

/// Variational dressed gap <n| sqrt(dE^2 + 4U^2 X^2) |n> evaluated as a
/// position-space integral over phi_n^2 (X = sqrt(2) x).
inline double dressed_gap_quadrature_u(double delta_e, double u, long n)
{
    if (!(delta_e > 0.0) || !(u >= 0.0))
        throw std::invalid_argument("dressed_gap_quadrature_u: need delta_e > 0, u >= 0");
    if (n < 0)
        throw std::invalid_argument("dressed_gap_quadrature_u: n must be >= 0");
    if (n > kQuadratureMaxN)
        throw std::invalid_argument("n too large for quadrature; use wkb");
    if (u == 0.0)
        return delta_e;
    auto rule = detail::fock_density_rule(n);
    double uu8 = 8.0 * u * u;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule->x.size(); ++i) {
        double xx = rule->x[i] * rule->x[i];
        acc += rule->c[i] * std::sqrt(delta_e * delta_e + uu8 * xx);
    }
    return acc;
}

inline double dressed_gap_quadrature(double delta_e, double g, double n)
{
    long nf = fock_index(n);
    if (nf == 0)
        throw std::invalid_argument(
            "dressed_gap_quadrature: g is undefined at n = 0; use the (delta_e, u) form");
    if (!(g >= 0.0))
        throw std::invalid_argument("dressed_gap_quadrature: g must be >= 0");
    double u = g * delta_e / std::sqrt(static_cast<double>(nf));
    return dressed_gap_quadrature_u(delta_e, u, nf);
}

/// Same expectation via the eigendecomposition of the truncated X operator:
/// sum_j |<n|v_j>|^2 sqrt(dE^2 + 4 U^2 lambda_j^2), with a truncation
/// doubling check (n_max vs 2 n_max must agree to 1e-8 relative).
inline double dressed_gap_operator_u(double delta_e, double u, long n, long n_max)
{
    if (n < 0 || !(delta_e > 0.0) || !(u >= 0.0))
        throw std::invalid_argument("dressed_gap_operator_u: invalid arguments");
    if (n_max < 4 * n + 64)
        throw std::invalid_argument("dressed_gap_operator_u: n_max must be >= 4n + 64");
    if (u == 0.0)
        return delta_e;
    auto expectation = [&](long cap) {
        auto s = detail::position_spectrum_cached(cap);
        double acc = 0.0;
        for (std::size_t j = 0; j < s->order; ++j) {
            double amp = s->vec(static_cast<std::size_t>(n), j);
            double lam = s->eigenvalues[j];
            acc += amp * amp * std::sqrt(delta_e * delta_e + 4.0 * u * u * lam * lam);
        }
        return acc;
    };
    double coarse = expectation(n_max);
    double fine = expectation(2 * n_max);
    if (std::abs(coarse - fine) > 1e-8 * std::abs(fine))
        throw ConvergenceError(coarse, fine);
    return fine;
}

inline double dressed_gap_operator(double delta_e, double g, double n, long n_max)
{
    long nf = fock_index(n);
    if (nf == 0)
        throw std::invalid_argument(
            "dressed_gap_operator: g is undefined at n = 0; use the (delta_e, u) form");
    double u = g * delta_e / std::sqrt(static_cast<double>(nf));
    return dressed_gap_operator_u(delta_e, u, nf, n_max);
}

/// WKB form of the dressed gap: with eps = 2n+1 and beta = 8 g^2 eps / n the
/// classical-region integral reduces to (2/pi) sqrt(1+beta) E(beta/(1+beta)).
inline double dressed_gap_wkb(double delta_e, double g, double n)
{
    if (!(n > 0.0))
        throw std::invalid_argument("dressed_gap_wkb: n must be > 0");
    if (!(g >= 0.0) || !(delta_e > 0.0))
        throw std::invalid_argument("dressed_gap_wkb: need g >= 0, delta_e > 0");
    if (g == 0.0)
        return delta_e;
    double eps = 2.0 * n + 1.0;
    double beta = 8.0 * g * g * eps / n;
    double ratio = (2.0 / M_PI) * std::sqrt(1.0 + beta) * comp_ellint_2(beta / (1.0 + beta));
    return delta_e * ratio;
}

/// Small-g series of the variational gap: dE (1 + 4 g^2 - 12 g^4).
inline double dressed_gap_series(double delta_e, double g)
{
    if (!(g >= 0.0) || !(delta_e > 0.0))
        throw std::invalid_argument("dressed_gap_series: need g >= 0, delta_e > 0");
    double g2 = g * g;
    return delta_e * (1.0 + 4.0 * g2 - 12.0 * g2 * g2);
}

/// g^2 / g^4 coefficients of a dressed-gap quartic. The shift fields hold the
/// exact deviations from the large-k values (4, -12); a and b themselves are
/// rounded to double when the shift drops below one ulp of the base.
struct SeriesCoefficients {
    double a, b;
    double a_shift; // a - 4, exact
    double b_shift; // b + 12, exact
    std::string source;
};

inline SeriesCoefficients ahmad_bullough_coefficients(long k)
{
    if (k < 1)
        throw std::invalid_argument("ahmad_bullough_coefficients: k must be >= 1");
    double kd = static_cast<double>(k);
    double a_shift = 1.0 / (kd * (kd + 1.0));
    double num = ((8.0 * kd + 16.0) * kd + 3.0) * kd * kd - 5.0 * kd - 1.0;
    double den = 4.0 * kd * kd * kd * (kd + 1.0) * (kd + 1.0) * (kd + 1.0);
    double b_shift = -num / den;
    return {4.0 + a_shift, -12.0 + b_shift, a_shift, b_shift,
            "ahmad_bullough(" + std::to_string(k) + ")"};
}

inline double literature_gap(double delta_e, double g, const Method& variant)
{
    if (!(g >= 0.0) || !(delta_e > 0.0))
        throw std::invalid_argument("literature_gap: need g >= 0, delta_e > 0");
    double g2 = g * g;
    switch (variant.kind) {
    case GapMethod::ahmad_bullough: {
        SeriesCoefficients c = ahmad_bullough_coefficients(variant.k);
        return delta_e * (1.0 + c.a * g2 + c.b * g2 * g2);
    }
    case GapMethod::ostrovsky: {
        // their q maps onto 4g; the quartic is then identical to the
        // variational series
        double q = 4.0 * g;
        double q2 = q * q;
        return delta_e * (1.0 + 0.25 * q2 - (3.0 / 64.0) * q2 * q2);
    }
    default:
        throw std::invalid_argument("literature_gap: variant must be ahmad_bullough or ostrovsky");
    }
}

/// Dispatch a single dressed-gap evaluation by method.
inline double dressed_gap(double delta_e, double g, double n, const Method& method,
                          long n_max = 0)
{
    switch (method.kind) {
    case GapMethod::quadrature:
        return dressed_gap_quadrature(delta_e, g, n);
    case GapMethod::operator_diag: {
        long nf = fock_index(n);
        if (n_max <= 0)
            n_max = default_operator_n_max(nf);
        return dressed_gap_operator(delta_e, g, n, n_max);
    }
    case GapMethod::wkb:
        return dressed_gap_wkb(delta_e, g, n);
    case GapMethod::series:
        return dressed_gap_series(delta_e, g);
    case GapMethod::ahmad_bullough:
    case GapMethod::ostrovsky:
        return literature_gap(delta_e, g, method);
    }
    throw std::logic_error("dressed_gap: bad method");
}

struct DressedCurve {
    std::vector<double> g_grid;
    std::vector<double> ratio; // dE(g)/dE
    Method method;
    double n;
    double delta_e;
};

inline DressedCurve dressed_curve(double delta_e, double n, std::vector<double> g_grid,
                                  const Method& method)
{
    if (g_grid.empty())
        throw std::invalid_argument("dressed_curve: empty grid");
    for (std::size_t i = 0; i + 1 < g_grid.size(); ++i)
        if (!(g_grid[i] < g_grid[i + 1]))
            throw std::invalid_argument("dressed_curve: grid must be strictly ascending");
    if (!(g_grid.front() >= 0.0))
        throw std::invalid_argument("dressed_curve: g must be >= 0");

    DressedCurve curve;
    curve.method = method;
    curve.n = n;
    curve.delta_e = delta_e;
    curve.ratio.resize(g_grid.size());
    // each point independent; results do not depend on evaluation order
    for (std::size_t i = 0; i < g_grid.size(); ++i)
        curve.ratio[i] = dressed_gap(delta_e, g_grid[i], n, method) / delta_e;
    curve.g_grid = std::move(g_grid);

    if (curve.g_grid.front() == 0.0 && std::abs(curve.ratio.front() - 1.0) > 1e-12)
        throw std::logic_error("dressed_curve: ratio at g=0 deviates from 1");
    bool monotone_method = method.kind == GapMethod::quadrature ||
                           method.kind == GapMethod::operator_diag ||
                           method.kind == GapMethod::wkb;
    if (monotone_method)
        for (std::size_t i = 0; i + 1 < curve.ratio.size(); ++i)
            if (curve.ratio[i + 1] < curve.ratio[i])
                throw std::logic_error("dressed_curve: ratio not non-decreasing");
    return curve;
}

/// CSV serialization, header `g,ratio,method,n,delta_e`.
inline void write_csv(std::ostream& out, const DressedCurve& c)
{
    out.precision(17);
    out << "g,ratio,method,n,delta_e\n";
    for (std::size_t i = 0; i < c.g_grid.size(); ++i)
        out << c.g_grid[i] << ',' << c.ratio[i] << ',' << c.method.name() << ',' << c.n << ','
            << c.delta_e << '\n';
}

} // namespace rabi
