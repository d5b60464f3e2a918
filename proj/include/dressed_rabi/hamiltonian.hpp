#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dressed_rabi/linalg.hpp"
#include "dressed_rabi/model.hpp"

namespace rabi {

/// Joint spin (x) Fock basis with interleaved ordering i = 2n + (m + 1/2),
/// m in {-1/2, +1/2}. In this ordering the basic Hamiltonian has bandwidth 3.
struct SpinFockBasis {
    long n_max;

    explicit SpinFockBasis(long n_max_) : n_max(n_max_)
    {
        if (n_max < 1)
            throw std::invalid_argument("SpinFockBasis: n_max must be >= 1");
    }

    std::size_t dimension() const { return 2 * static_cast<std::size_t>(n_max + 1); }
    std::size_t index(long n, int m_twice) const
    {
        return 2 * static_cast<std::size_t>(n) + (m_twice > 0 ? 1 : 0);
    }
    long fock_of(std::size_t i) const { return static_cast<long>(i / 2); }
    int m_twice_of(std::size_t i) const { return (i % 2) ? +1 : -1; }
    // conserved parity p = (-1)^n sign(m)
    int parity_of(std::size_t i) const
    {
        int sign_n = (fock_of(i) % 2 == 0) ? +1 : -1;
        return sign_n * m_twice_of(i);
    }
};

inline std::vector<int> parity_index(const SpinFockBasis& basis)
{
    std::vector<int> p(basis.dimension());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = basis.parity_of(i);
    return p;
}

/// Basic Hamiltonian dE s_z/hbar + w0 a^t a + U (a + a^t) 2 s_x/hbar in the
/// interleaved spin-Fock basis. Exactly symmetric, bandwidth 3.
inline DenseSymmetric build_full_hamiltonian(const ModelParams& p, long n_max)
{
    SpinFockBasis basis(n_max);
    std::size_t dim = basis.dimension();
    std::vector<double> h(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        long n = basis.fock_of(i);
        h[i * dim + i] = static_cast<double>(n) * p.omega0 + 0.5 * basis.m_twice_of(i) * p.delta_e;
    }
    // coupling flips m and shifts n by one: <n+1,-m|H|n,m> = U sqrt(n+1)
    for (long n = 0; n < n_max; ++n) {
        double c = p.u * std::sqrt(static_cast<double>(n + 1));
        for (int mt : {-1, +1}) {
            std::size_t i = basis.index(n, mt);
            std::size_t j = basis.index(n + 1, -mt);
            h[i * dim + j] = h[j * dim + i] = c;
        }
    }
    return DenseSymmetric(dim, std::move(h));
}

/// One parity sector of the basic Hamiltonian. Within a sector the chain
/// |0,m0>, |1,-m0>, |2,m0>, ... is exactly tridiagonal; chain index equals
/// the Fock number, with m determined by sign(m) = p (-1)^n.
struct SectorChain {
    int parity;
    TridiagonalSymmetric matrix;

    int m_twice_at(long n) const
    {
        return (n % 2 == 0) ? parity : -parity;
    }
};

inline SectorChain sector_hamiltonian(const ModelParams& p, long n_max, int parity)
{
    if (parity != 1 && parity != -1)
        throw std::invalid_argument("sector_hamiltonian: parity must be +1 or -1");
    std::size_t dim = static_cast<std::size_t>(n_max) + 1;
    std::vector<double> d(dim), e(dim - 1);
    for (long n = 0; n <= n_max; ++n) {
        int mt = (n % 2 == 0) ? parity : -parity;
        d[static_cast<std::size_t>(n)] =
            static_cast<double>(n) * p.omega0 + 0.5 * mt * p.delta_e;
    }
    for (long n = 0; n < n_max; ++n)
        e[static_cast<std::size_t>(n)] = p.u * std::sqrt(static_cast<double>(n + 1));
    return {parity, TridiagonalSymmetric(std::move(d), std::move(e))};
}

/// The three pieces of the rotated Hamiltonian H' = H0 + V + W, all stored as
/// real symmetric joint matrices over the interleaved basis.
struct RotatedParts {
    SpinFockBasis basis;
    DenseSymmetric h0;
    DenseSymmetric v;
    DenseSymmetric w;

    DenseSymmetric sum() const
    {
        std::size_t dim = basis.dimension();
        std::vector<double> s(dim * dim);
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] = h0.data()[i] + v.data()[i] + w.data()[i];
        return DenseSymmetric(dim, std::move(s));
    }
};

inline RotatedParts build_rotated_parts(const ModelParams& p, long n_max)
{
    SpinFockBasis basis(n_max);
    std::size_t nf = static_cast<std::size_t>(n_max) + 1; // Fock dimension
    std::size_t dim = basis.dimension();

    // f(X) = sqrt(dE^2 + 4U^2 X^2) and A(X) = (U/dE) / (1 + (2UX/dE)^2)
    DenseSymmetric fx = function_of_position_operator(
        [&](double x) { return std::sqrt(p.delta_e * p.delta_e + 4.0 * p.u * p.u * x * x); },
        n_max);
    DenseSymmetric ax = function_of_position_operator(
        [&](double x) {
            double r = 2.0 * p.u * x / p.delta_e;
            return (p.u / p.delta_e) / (1.0 + r * r);
        },
        n_max);

    // H0 = f(X) (x) s_z/hbar + w0 a^t a (x) 1
    std::vector<double> h0(dim * dim, 0.0);
    for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b < nf; ++b)
            for (int mt : {-1, +1}) {
                std::size_t i = basis.index(static_cast<long>(a), mt);
                std::size_t j = basis.index(static_cast<long>(b), mt);
                h0[i * dim + j] = 0.5 * mt * fx(a, b);
            }
    for (std::size_t i = 0; i < dim; ++i)
        h0[i * dim + i] += static_cast<double>(basis.fock_of(i)) * p.omega0;

    // V = (w0/2) {A(X)(a - a^t) + (a - a^t)A(X)} (x) i sigma_y, assembled in
    // real form: both Fock and spin factors are real antisymmetric, so the
    // joint matrix is real symmetric. Sign convention: i(a - a^t) carries
    // +sqrt(n+1) at (n+1, n).
    std::vector<double> s_fock(nf * nf, 0.0); // {A D + D A}, D = a - a^t
    for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b < nf; ++b) {
            double acc = 0.0;
            // (A D)_{ab} = A_{a,b-1} sqrt(b) - A_{a,b+1} sqrt(b+1)
            if (b >= 1)
                acc += ax(a, b - 1) * std::sqrt(static_cast<double>(b));
            if (b + 1 < nf)
                acc -= ax(a, b + 1) * std::sqrt(static_cast<double>(b + 1));
            // (D A)_{ab} = sqrt(a+1) A_{a+1,b} - sqrt(a) A_{a-1,b}
            if (a + 1 < nf)
                acc += std::sqrt(static_cast<double>(a + 1)) * ax(a + 1, b);
            if (a >= 1)
                acc -= std::sqrt(static_cast<double>(a)) * ax(a - 1, b);
            s_fock[a * nf + b] = acc;
        }
    std::vector<double> v(dim * dim, 0.0);
    for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b < nf; ++b) {
            double val = 0.5 * p.omega0 * s_fock[a * nf + b];
            // i sigma_y: +1 between <m=+1/2| and |m=-1/2>, -1 transposed
            std::size_t iu = basis.index(static_cast<long>(a), +1);
            std::size_t jd = basis.index(static_cast<long>(b), -1);
            v[iu * dim + jd] = val;
            std::size_t id = basis.index(static_cast<long>(a), -1);
            std::size_t ju = basis.index(static_cast<long>(b), +1);
            v[id * dim + ju] = -val;
        }

    // W = w0 A(X)^2 (x) 1, exactly as printed (no spin factor)
    std::vector<double> a2(nf * nf, 0.0);
    for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t k = 0; k < nf; ++k) {
            double aik = ax(a, k);
            if (aik == 0.0)
                continue;
            for (std::size_t b = 0; b < nf; ++b)
                a2[a * nf + b] += aik * ax(k, b);
        }
    std::vector<double> w(dim * dim, 0.0);
    for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b < nf; ++b)
            for (int mt : {-1, +1}) {
                std::size_t i = basis.index(static_cast<long>(a), mt);
                std::size_t j = basis.index(static_cast<long>(b), mt);
                w[i * dim + j] = p.omega0 * a2[a * nf + b];
            }

    return RotatedParts{basis, DenseSymmetric(dim, std::move(h0)),
                        DenseSymmetric(dim, std::move(v)), DenseSymmetric(dim, std::move(w))};
}

/// Full spectrum with per-state labels: dominant |n, m> (largest squared
/// component, ties toward the lower basis index) and its parity sector.
inline Spectrum spectrum_of(const DenseSymmetric& h, const SpinFockBasis& basis)
{
    if (h.order() != basis.dimension())
        throw std::invalid_argument("spectrum_of: matrix does not match basis");
    Spectrum s = eigh_dense_symmetric(h, true);
    s.labels.resize(s.order);
    for (std::size_t j = 0; j < s.order; ++j) {
        std::size_t best = 0;
        double best_w = -1.0;
        for (std::size_t i = 0; i < s.order; ++i) {
            double wgt = s.vec(i, j) * s.vec(i, j);
            if (wgt > best_w) {
                best_w = wgt;
                best = i;
            }
        }
        s.labels[j] = {basis.fock_of(best), basis.m_twice_of(best), basis.parity_of(best)};
    }
    return s;
}

} // namespace rabi
