#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rabi {

struct TridiagonalSymmetric {
    std::vector<double> diag;
    std::vector<double> offdiag; // offdiag[i] couples i and i+1

    TridiagonalSymmetric(std::vector<double> d, std::vector<double> e)
        : diag(std::move(d)), offdiag(std::move(e))
    {
        if (diag.empty() || offdiag.size() + 1 != diag.size())
            throw std::invalid_argument("TridiagonalSymmetric: size mismatch");
        for (double v : diag)
            if (!std::isfinite(v))
                throw std::invalid_argument("TridiagonalSymmetric: non-finite diag");
        for (double v : offdiag)
            if (!std::isfinite(v))
                throw std::invalid_argument("TridiagonalSymmetric: non-finite offdiag");
    }

    std::size_t order() const { return diag.size(); }
};

/// Dense symmetric matrix, symmetrized on construction.
class DenseSymmetric {
public:
    DenseSymmetric(std::size_t order, std::vector<double> entries)
        : n_(order), a_(std::move(entries))
    {
        if (a_.size() != n_ * n_)
            throw std::invalid_argument("DenseSymmetric: size mismatch");
        double scale = 0.0;
        for (double v : a_) {
            if (!std::isfinite(v))
                throw std::invalid_argument("DenseSymmetric: non-finite entry");
            scale = std::max(scale, std::abs(v));
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) {
                double& x = a_[i * n_ + j];
                double& y = a_[j * n_ + i];
                worst = std::max(worst, std::abs(x - y));
                x = y = 0.5 * (x + y);
            }
        if (scale > 0.0 && worst > 1e-12 * scale)
            throw std::invalid_argument("DenseSymmetric: input not symmetric");
    }

    explicit DenseSymmetric(const TridiagonalSymmetric& t)
        : n_(t.order()), a_(t.order() * t.order(), 0.0)
    {
        for (std::size_t i = 0; i < n_; ++i)
            a_[i * n_ + i] = t.diag[i];
        for (std::size_t i = 0; i + 1 < n_; ++i)
            a_[i * n_ + (i + 1)] = a_[(i + 1) * n_ + i] = t.offdiag[i];
    }

    std::size_t order() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<double>& data() const { return a_; }

    double trace() const
    {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            t += a_[i * n_ + i];
        return t;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (double v : a_)
            m = std::max(m, std::abs(v));
        return m;
    }

    // One row per line, space separated, full double precision.
    void write_text(std::ostream& out) const
    {
        out.precision(17);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j)
                out << (j ? " " : "") << a_[i * n_ + j];
            out << '\n';
        }
    }

private:
    std::size_t n_;
    std::vector<double> a_;
};

/// Per-state metadata attached by the Hamiltonian layer: dominant basis state
/// |n, m> and parity sector.
struct StateLabel {
    long fock_n = 0;
    int m_twice = 0; // 2m, i.e. +1 or -1
    int parity = 0;  // (-1)^n * sign(m)
};

struct Spectrum {
    std::vector<double> eigenvalues;            // ascending
    std::vector<double> eigenvectors;           // optional; column j <-> eigenvalues[j]
    std::vector<StateLabel> labels;             // optional
    std::size_t order = 0;

    bool has_vectors() const { return !eigenvectors.empty(); }
    double vec(std::size_t i, std::size_t j) const { return eigenvectors[i * order + j]; }
};

namespace detail {

// Implicit-shift QL on a tridiagonal matrix. d holds the diagonal, e the
// subdiagonal in e[0..n-2] (e[n-1] scratch). z, when non-null, is an n x n
// row-major matrix whose columns get rotated (pass identity for eigenvectors).
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e, double* z)
{
    const std::size_t n = d.size();
    if (n == 1)
        return;
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd)
                    break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("eigensolver: QL failed to converge in 50 iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i = m;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        double* zi = z + i;
                        for (std::size_t k = 0; k < n; ++k, zi += n) {
                            double fz = zi[1];
                            zi[1] = s * zi[0] + c * fz;
                            zi[0] = c * zi[0] - s * fz;
                        }
                    }
                }
                if (underflow)
                    continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// Householder reduction to tridiagonal form (in place, row-major symmetric a).
// When accumulate is set, a is overwritten with the orthogonal transform Q so
// that the subsequent QL pass yields full eigenvectors.
inline void householder_tridiagonalize(std::vector<double>& a, std::size_t n,
                                       std::vector<double>& d, std::vector<double>& e,
                                       bool accumulate)
{
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (std::size_t i = n - 1; i >= 1; --i) {
        std::size_t l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k)
                scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    at(j, i) = at(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k)
                        g += at(j, k) * at(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k)
                        g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k)
                        at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (accumulate && d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < i; ++k)
                    g += at(i, k) * at(k, j);
                for (std::size_t k = 0; k < i; ++k)
                    at(k, j) -= g * at(k, i);
            }
        }
        d[i] = at(i, i);
        if (accumulate) {
            at(i, i) = 1.0;
            for (std::size_t j = 0; j < i; ++j)
                at(j, i) = at(i, j) = 0.0;
        }
    }
    // shift subdiagonal to e[0..n-2]
    for (std::size_t i = 0; i + 1 < n; ++i)
        e[i] = e[i + 1];
    e[n - 1] = 0.0;
}

inline void sort_spectrum(Spectrum& s)
{
    const std::size_t n = s.eigenvalues.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return s.eigenvalues[a] < s.eigenvalues[b]; });
    std::vector<double> ev(n);
    for (std::size_t j = 0; j < n; ++j)
        ev[j] = s.eigenvalues[idx[j]];
    s.eigenvalues = std::move(ev);
    if (s.has_vectors()) {
        std::vector<double> v(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                v[i * n + j] = s.eigenvectors[i * n + idx[j]];
        s.eigenvectors = std::move(v);
    }
}

} // namespace detail

inline Spectrum eigh_tridiagonal(const TridiagonalSymmetric& t, bool want_vectors)
{
    const std::size_t n = t.order();
    Spectrum s;
    s.order = n;
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        e[i] = t.offdiag[i];
    if (want_vectors) {
        s.eigenvectors.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            s.eigenvectors[i * n + i] = 1.0;
    }
    detail::ql_implicit(d, e, want_vectors ? s.eigenvectors.data() : nullptr);
    s.eigenvalues = std::move(d);
    detail::sort_spectrum(s);
    return s;
}

inline Spectrum eigh_dense_symmetric(const DenseSymmetric& a, bool want_vectors)
{
    const std::size_t n = a.order();
    Spectrum s;
    s.order = n;
    std::vector<double> z = a.data();
    std::vector<double> d, e;
    if (n == 1) {
        s.eigenvalues = {z[0]};
        if (want_vectors)
            s.eigenvectors = {1.0};
        return s;
    }
    detail::householder_tridiagonalize(z, n, d, e, want_vectors);
    detail::ql_implicit(d, e, want_vectors ? z.data() : nullptr);
    s.eigenvalues = std::move(d);
    if (want_vectors)
        s.eigenvectors = std::move(z);
    detail::sort_spectrum(s);
    return s;
}

/// Matrix of X = a + a^dagger in the Fock basis {|0> ... |n_max>}.
inline TridiagonalSymmetric position_operator_matrix(long n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("position_operator_matrix: n_max must be >= 1");
    std::vector<double> d(static_cast<std::size_t>(n_max) + 1, 0.0);
    std::vector<double> e(static_cast<std::size_t>(n_max));
    for (long i = 0; i < n_max; ++i)
        e[static_cast<std::size_t>(i)] = std::sqrt(static_cast<double>(i + 1));
    return TridiagonalSymmetric(std::move(d), std::move(e));
}

/// f(X) = V f(Lambda) V^T from the eigendecomposition of the truncated X.
template <class F>
DenseSymmetric function_of_position_operator(F&& f, long n_max)
{
    Spectrum s = eigh_tridiagonal(position_operator_matrix(n_max), true);
    const std::size_t n = s.order;
    std::vector<double> fl(n);
    for (std::size_t k = 0; k < n; ++k) {
        fl[k] = f(s.eigenvalues[k]);
        if (!std::isfinite(fl[k]))
            throw std::invalid_argument("function_of_position_operator: f not finite on the spectrum");
    }
    // B = V diag(fl) V^T, accumulated rank-1 by eigenvector
    std::vector<double> b(n * n, 0.0);
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            col[i] = s.vec(i, k);
        for (std::size_t i = 0; i < n; ++i) {
            double w = fl[k] * col[i];
            double* row = b.data() + i * n;
            for (std::size_t j = 0; j < n; ++j)
                row[j] += w * col[j];
        }
    }
    return DenseSymmetric(n, std::move(b));
}

} // namespace rabi
