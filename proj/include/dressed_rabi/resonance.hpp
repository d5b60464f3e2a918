#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dressed_rabi/dressed.hpp"
#include "dressed_rabi/hamiltonian.hpp"
#include "dressed_rabi/linalg.hpp"
#include "dressed_rabi/model.hpp"

namespace rabi {

/// (2k+1)-photon resonance: the coupling g* at which the dressed gap crosses
/// (2k+1) hbar omega0.
struct ResonanceSolution {
    long k;
    double g_star;
    Method method;
    double residual; // |dE(g*) - (2k+1) hw0|
};

inline ResonanceSolution resonance_coupling(double delta_e, double n, long k,
                                            const Method& method, double omega0 = 1.0)
{
    if (k < 0)
        throw std::invalid_argument("resonance_coupling: k must be >= 0");
    double target = (2.0 * k + 1.0) * omega0;
    if (target < delta_e)
        throw std::domain_error("resonance_coupling: (2k+1) hw0 < delta_e, no solution");
    auto f = [&](double g) { return dressed_gap(delta_e, g, n, method) - target; };
    double f0 = f(0.0);
    if (f0 == 0.0)
        return {k, 0.0, method, 0.0};

    double lo = 0.0, flo = f0;
    double hi, fhi;
    bool quartic = method.kind == GapMethod::series ||
                   method.kind == GapMethod::ahmad_bullough ||
                   method.kind == GapMethod::ostrovsky;
    if (quartic) {
        // the quartic ratio 1 + a g^2 + b g^4 (b < 0) peaks at g^2 = a/(2|b|);
        // only the rising branch below the peak defines a resonance coupling
        double a = 4.0, b = -12.0;
        if (method.kind == GapMethod::ahmad_bullough) {
            SeriesCoefficients c = ahmad_bullough_coefficients(method.k);
            a = c.a;
            b = c.b;
        }
        hi = std::sqrt(a / (2.0 * -b));
        fhi = f(hi);
        if (fhi < 0.0)
            throw std::domain_error(
                "resonance_coupling: target exceeds the maximum of the quartic gap");
    } else {
        hi = 1.0;
        fhi = f(hi);
        while (fhi < 0.0) {
            lo = hi;
            flo = fhi;
            hi *= 2.0;
            if (hi > 1024.0)
                throw std::runtime_error("resonance_coupling: no bracket below g = 1024");
            fhi = f(hi);
        }
    }

    // bisection with a secant refinement step; the dressed-gap ratio is
    // non-decreasing for the integral-based methods, so the root is unique
    double tol = 1e-12 * delta_e;
    double g = lo, fg = flo;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (fhi != flo) {
            double sec = lo - flo * (hi - lo) / (fhi - flo);
            if (sec > lo && sec < hi)
                mid = sec;
        }
        g = mid;
        fg = f(g);
        if (std::abs(fg) <= tol)
            break;
        if (fg < 0.0) {
            lo = g;
            flo = fg;
        } else {
            hi = g;
            fhi = fg;
        }
        if (hi - lo <= 1e-15 * (1.0 + hi))
            break;
    }
    if (std::abs(fg) > 1e-10 * delta_e)
        throw std::runtime_error("resonance_coupling: residual tolerance not reached");
    return {k, g, method, std::abs(fg)};
}

/// Local minimum of a same-parity eigenvalue gap over the coupling U.
struct AnticrossingPoint {
    double u_star;
    double gap;
    StateLabel lower, upper; // pair labels (by Fock number)
    int sector;
};

namespace detail {

// Gap between the eigenstates carrying the most weight on chain sites n1 and
// n2; assignment by projection so branch swaps at the crossing do not matter.
inline double pair_gap(const Spectrum& s, long n1, long n2)
{
    auto top2 = [&](long site, std::size_t& best, std::size_t& second) {
        double wb = -1.0, ws = -1.0;
        best = second = 0;
        for (std::size_t j = 0; j < s.order; ++j) {
            double w = s.vec(static_cast<std::size_t>(site), j);
            w *= w;
            if (w > wb) {
                ws = wb;
                second = best;
                wb = w;
                best = j;
            } else if (w > ws) {
                ws = w;
                second = j;
            }
        }
    };
    std::size_t b1, s1, b2, s2;
    top2(n1, b1, s1);
    top2(n2, b2, s2);
    if (b1 != b2)
        return std::abs(s.eigenvalues[b1] - s.eigenvalues[b2]);
    // both sites dominated by the same eigenstate (deep in the anticrossing):
    // give the second-best to whichever loses less weight
    double w1 = s.vec(static_cast<std::size_t>(n1), s1) * s.vec(static_cast<std::size_t>(n1), s1);
    double w2 = s.vec(static_cast<std::size_t>(n2), s2) * s.vec(static_cast<std::size_t>(n2), s2);
    if (w1 >= w2)
        return std::abs(s.eigenvalues[s1] - s.eigenvalues[b2]);
    return std::abs(s.eigenvalues[b1] - s.eigenvalues[s2]);
}

inline Spectrum sector_spectrum(double delta_e, double u, long n_max, int parity)
{
    ModelParams p(delta_e, u, 0.0);
    return eigh_tridiagonal(sector_hamiltonian(p, n_max, parity).matrix, true);
}

} // namespace detail

/// Scan the eigenvalue gaps of the basic Hamiltonian over U and refine every
/// interior local minimum. Pairs are same-parity adjacent eigenvalues whose
/// dominant Fock labels bracket n_target.
inline std::vector<AnticrossingPoint> anticrossing_scan(double delta_e, long n_target,
                                                        double u_lo, double u_hi,
                                                        int n_points, long n_max)
{
    if (n_max < 4 * n_target + 64)
        throw std::invalid_argument("anticrossing_scan: n_max must be >= 4 n_target + 64");
    if (n_points < 3)
        throw std::invalid_argument("anticrossing_scan: n_points must be >= 3");
    if (!(u_lo >= 0.0) || !(u_lo < u_hi))
        throw std::invalid_argument("anticrossing_scan: need 0 <= u_lo < u_hi");

    std::vector<double> grid(static_cast<std::size_t>(n_points));
    for (int q = 0; q < n_points; ++q)
        grid[static_cast<std::size_t>(q)] =
            u_lo + (u_hi - u_lo) * q / static_cast<double>(n_points - 1);

    std::vector<AnticrossingPoint> found;
    for (int sector : {+1, -1}) {
        std::vector<Spectrum> spectra;
        spectra.reserve(grid.size());
        for (double u : grid)
            spectra.push_back(detail::sector_spectrum(delta_e, u, n_max, sector));

        // candidate pairs: adjacent same-sector eigenvalues whose dominant
        // chain sites bracket n_target, seen anywhere on the coarse grid
        std::vector<std::pair<long, long>> keys;
        for (const Spectrum& s : spectra) {
            std::vector<long> dom(s.order);
            for (std::size_t j = 0; j < s.order; ++j) {
                std::size_t best = 0;
                double bw = -1.0;
                for (std::size_t i = 0; i < s.order; ++i) {
                    double w = s.vec(i, j) * s.vec(i, j);
                    if (w > bw) {
                        bw = w;
                        best = i;
                    }
                }
                dom[j] = static_cast<long>(best);
            }
            for (std::size_t j = 0; j + 1 < s.order; ++j) {
                long a = std::min(dom[j], dom[j + 1]);
                long b = std::max(dom[j], dom[j + 1]);
                if (a == b || a > n_target || b < n_target)
                    continue;
                if (b > n_max / 4)
                    continue; // truncation-contaminated region
                std::pair<long, long> key{a, b};
                if (std::find(keys.begin(), keys.end(), key) == keys.end())
                    keys.push_back(key);
            }
        }
        std::sort(keys.begin(), keys.end());

        SectorChain chain_info = sector_hamiltonian(ModelParams(delta_e, 0.0, 0.0), n_max, sector);
        for (auto [n1, n2] : keys) {
            std::vector<double> gaps(grid.size());
            for (std::size_t q = 0; q < grid.size(); ++q)
                gaps[q] = detail::pair_gap(spectra[q], n1, n2);
            for (std::size_t q = 1; q + 1 < grid.size(); ++q) {
                if (!(gaps[q] <= gaps[q - 1] && gaps[q] <= gaps[q + 1] &&
                      (gaps[q] < gaps[q - 1] || gaps[q] < gaps[q + 1])))
                    continue;
                double a = grid[q - 1], b = grid[q + 1];
                auto eval = [&](double u) {
                    return detail::pair_gap(detail::sector_spectrum(delta_e, u, n_max, sector),
                                            n1, n2);
                };
                // tighten to a unimodal sub-cell, then golden-section
                constexpr int kPre = 8;
                double best_u = grid[q], best_gap = gaps[q];
                {
                    int best_i = -1;
                    std::vector<double> pre(kPre + 1);
                    for (int i = 0; i <= kPre; ++i) {
                        double u = a + (b - a) * i / kPre;
                        pre[static_cast<std::size_t>(i)] = eval(u);
                        if (pre[static_cast<std::size_t>(i)] < best_gap) {
                            best_gap = pre[static_cast<std::size_t>(i)];
                            best_u = u;
                            best_i = i;
                        }
                    }
                    if (best_i > 0 && best_i < kPre) {
                        double aa = a + (b - a) * (best_i - 1) / kPre;
                        double bb = a + (b - a) * (best_i + 1) / kPre;
                        a = aa;
                        b = bb;
                    }
                }
                const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
                double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
                double f1 = eval(x1), f2 = eval(x2);
                while (b - a > 1e-6 * (0.5 * (a + b))) {
                    if (f1 < f2) {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - gr * (b - a);
                        f1 = eval(x1);
                    } else {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + gr * (b - a);
                        f2 = eval(x2);
                    }
                }
                double u_star = 0.5 * (a + b);
                double gap = eval(u_star);
                if (gap > best_gap) {
                    u_star = best_u;
                    gap = best_gap;
                }
                if (u_star <= grid.front() || u_star >= grid.back())
                    continue;
                StateLabel lower{n1, chain_info.m_twice_at(n1), sector};
                StateLabel upper{n2, chain_info.m_twice_at(n2), sector};
                found.push_back({u_star, gap, lower, upper, sector});
            }
        }
    }
    std::sort(found.begin(), found.end(),
              [](const AnticrossingPoint& a, const AnticrossingPoint& b) {
                  return a.u_star < b.u_star;
              });
    return found;
}

struct ReportCell {
    bool ok = false;
    double g_star = 0.0;
    double residual = 0.0;
    std::string error;
};

/// Method-comparison table: g*(k) per method plus pairwise differences.
/// Per-cell failures are recorded inline and never abort the table.
struct ResonanceReport {
    double delta_e = 0.0;
    double n = 0.0;
    std::vector<long> k_list;
    std::vector<Method> methods;
    std::vector<ReportCell> cells; // k-major

    const ReportCell& cell(std::size_t ki, std::size_t mi) const
    {
        return cells[ki * methods.size() + mi];
    }

    // column method for a given row; k = 0 on an ahmad_bullough column means
    // "use the row's resonance index"
    Method method_at(std::size_t ki, std::size_t mi) const
    {
        Method m = methods[mi];
        if (m.kind == GapMethod::ahmad_bullough && m.k == 0)
            m.k = k_list[ki];
        return m;
    }
};

inline ResonanceReport resonance_report(double delta_e, double n,
                                        const std::vector<long>& k_list,
                                        const std::vector<Method>& methods)
{
    ResonanceReport rep;
    rep.delta_e = delta_e;
    rep.n = n;
    rep.k_list = k_list;
    rep.methods = methods;
    rep.cells.resize(k_list.size() * methods.size());
    for (std::size_t ki = 0; ki < k_list.size(); ++ki)
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            ReportCell& c = rep.cells[ki * methods.size() + mi];
            try {
                ResonanceSolution sol =
                    resonance_coupling(delta_e, n, k_list[ki], rep.method_at(ki, mi));
                c.ok = true;
                c.g_star = sol.g_star;
                c.residual = sol.residual;
            } catch (const std::exception& e) {
                c.error = e.what();
            }
        }
    return rep;
}

inline void write_csv(std::ostream& out, const ResonanceReport& rep)
{
    out.precision(17);
    out << "k,method,g_star,residual\n";
    for (std::size_t ki = 0; ki < rep.k_list.size(); ++ki)
        for (std::size_t mi = 0; mi < rep.methods.size(); ++mi) {
            const ReportCell& c = rep.cell(ki, mi);
            out << rep.k_list[ki] << ',' << rep.method_at(ki, mi).name() << ',';
            if (c.ok)
                out << c.g_star << ',' << c.residual << '\n';
            else
                out << ",infeasible: " << c.error << '\n';
        }
    out << "\nk,method_a,method_b,rel_diff\n";
    for (std::size_t ki = 0; ki < rep.k_list.size(); ++ki)
        for (std::size_t mi = 0; mi < rep.methods.size(); ++mi)
            for (std::size_t mj = mi + 1; mj < rep.methods.size(); ++mj) {
                const ReportCell& a = rep.cell(ki, mi);
                const ReportCell& b = rep.cell(ki, mj);
                if (!a.ok || !b.ok)
                    continue;
                double denom = std::max(std::abs(a.g_star), std::abs(b.g_star));
                double rel = denom > 0.0 ? std::abs(a.g_star - b.g_star) / denom : 0.0;
                out << rep.k_list[ki] << ',' << rep.method_at(ki, mi).name() << ','
                    << rep.method_at(ki, mj).name() << ',' << rel << '\n';
            }
}

inline std::string format_table(const ResonanceReport& rep)
{
    std::ostringstream os;
    os << std::left << std::setw(6) << "k";
    for (const Method& m : rep.methods)
        os << std::setw(22) << m.name();
    os << '\n';
    os.precision(10);
    for (std::size_t ki = 0; ki < rep.k_list.size(); ++ki) {
        os << std::left << std::setw(6) << rep.k_list[ki];
        for (std::size_t mi = 0; mi < rep.methods.size(); ++mi) {
            const ReportCell& c = rep.cell(ki, mi);
            if (c.ok)
                os << std::setw(22) << c.g_star;
            else
                os << std::setw(22) << "infeasible";
        }
        os << '\n';
    }
    return os.str();
}

} // namespace rabi
