#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

#include "secnot/constants.hpp"
#include "secnot/quadrature.hpp"

// Surface-electron bound states: the analytic hydrogen-like solutions of the
// image potential, a finite-difference eigensolver with a vertical holding
// field, and the two-ripplon decay-rate model built from both.

namespace secnot {

/// Generalized Laguerre polynomial L_n^(alpha)(x) by the stable three-term
/// recurrence.
inline double laguerre(int n, int alpha, double x) {
    if (n < 0 || alpha < 0)
        throw std::invalid_argument("laguerre: n and alpha must be >= 0");
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double lp1 =
            ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

/// Energy of the n-th bound state of the bare image potential, -R/n^2 (J).
inline double rydberg_energy(int n, const PhysicalConstants& pc = {}) {
    if (n < 1) throw std::invalid_argument("rydberg_energy: n must be >= 1");
    return -pc.rydberg_energy() / (static_cast<double>(n) * n);
}

namespace detail {

/// psi_n in units of r_B: psi_n(z) = psi_dimless(n, z/r_B) / sqrt(r_B).
inline double psi_dimless(int n, double u) {
    const double nn = static_cast<double>(n);
    return 2.0 * std::pow(nn, -2.5) * u * std::exp(-u / nn) *
           laguerre(n - 1, 1, 2.0 * u / nn);
}

/// Integration cutoff: the n-th state's tail is negligible past 40 n^2 r_B.
inline double tail_cutoff(int n) { return 40.0 * n * n; }

} // namespace detail

/// Bound-state wavefunction of the bare image potential, units m^(-1/2).
inline double analytic_wavefunction(int n, double z,
                                    const PhysicalConstants& pc = {}) {
    if (n < 1) throw std::invalid_argument("analytic_wavefunction: n >= 1");
    if (z < 0.0) throw std::invalid_argument("analytic_wavefunction: z < 0");
    const double rb = pc.effective_bohr_radius();
    return detail::psi_dimless(n, z / rb) / std::sqrt(rb);
}

/// One bound state, either analytic (empty grid) or sampled on a z-grid.
struct SEState {
    int n = 1;                    // principal quantum number / level index
    double energy = 0.0;          // J
    std::vector<double> grid;     // z positions in m; empty for analytic
    std::vector<double> values;   // psi(z) in m^(-1/2)

    bool is_analytic() const { return grid.empty(); }
};

inline SEState analytic_state(int n, const PhysicalConstants& pc = {}) {
    return SEState{n, rydberg_energy(n, pc), {}, {}};
}

namespace detail {

inline double grid_norm_sq(const SEState& s) {
    // uniform grid assumed
    const double h = s.grid[1] - s.grid[0];
    double acc = 0.0;
    for (double v : s.values) acc += v * v;
    return acc * h;
}

inline void require_normalized(const SEState& s) {
    if (s.is_analytic()) return; // analytic states are normalized by construction
    if (s.grid.size() < 2 || s.grid.size() != s.values.size())
        throw std::invalid_argument("SEState: malformed grid");
    if (std::abs(grid_norm_sq(s) - 1.0) > 1e-8)
        throw std::invalid_argument("SEState: unnormalized state");
}

} // namespace detail

/// Expectation value <z> in meters.
inline double expected_z(const SEState& s, const PhysicalConstants& pc = {}) {
    detail::require_normalized(s);
    if (s.is_analytic()) {
        const double rb = pc.effective_bohr_radius();
        const double val = quad::integrate(
            [&](double u) {
                const double p = detail::psi_dimless(s.n, u);
                return u * p * p;
            },
            0.0, detail::tail_cutoff(s.n));
        return val * rb;
    }
    const double h = s.grid[1] - s.grid[0];
    double acc = 0.0;
    for (std::size_t k = 0; k < s.grid.size(); ++k)
        acc += s.grid[k] * s.values[k] * s.values[k];
    return acc * h;
}

/// Diagonal matrix element <psi_n| Lambda e^2/z^2 + e E_z |psi_n>, units N.
/// This is the (dV/dz)_nn factor of the two-ripplon rate.
inline double dvdz_element(const SEState& s, double e_z,
                           const PhysicalConstants& pc = {}) {
    detail::require_normalized(s);
    const double rb = pc.effective_bohr_radius();
    const double force_unit = 2.0 * pc.rydberg_energy() / rb; // Lambda e^2/r_B^2
    const double f = pc.elementary_charge * e_z / force_unit; // field, dimensionless
    double val;
    if (s.is_analytic()) {
        val = quad::integrate(
            [&](double u) {
                const double p = detail::psi_dimless(s.n, u);
                return p * p * (1.0 / (u * u) + f);
            },
            1e-12, detail::tail_cutoff(s.n));
    } else {
        const double h = (s.grid[1] - s.grid[0]) / rb;
        val = 0.0;
        for (std::size_t k = 0; k < s.grid.size(); ++k) {
            const double u = s.grid[k] / rb;
            const double p = s.values[k] * s.values[k] * rb; // dimensionless psi^2
            val += p * (1.0 / (u * u) + f);
        }
        val *= h;
    }
    return val * force_unit;
}

struct GridSpec {
    double z_max;  // m
    int points;
};

inline GridSpec default_grid(int n_max, const PhysicalConstants& pc = {},
                             int points = 32000) {
    return GridSpec{40.0 * n_max * n_max * pc.effective_bohr_radius(), points};
}

namespace detail {

// Lowest eigenpairs of the dimensionless problem
//   -psi'' - (2/u) psi + 2 f u psi = eps psi,  psi(0) = psi(u_max) = 0,
// second-order central differences on u_k = k h, k = 1..N. Energies in R.
inline void fd_eigensolve(double f, int n_levels, double u_max, int points,
                          std::vector<double>& energies,
                          std::vector<std::vector<double>>& vectors) {
    const int n = points;
    const double h = u_max / (n + 1);
    std::vector<double> diag(n), off(n - 1, -1.0 / (h * h));
    for (int k = 0; k < n; ++k) {
        const double u = (k + 1) * h;
        diag[k] = 2.0 / (h * h) - 2.0 / u + 2.0 * f * u;
    }
    std::vector<double> w(n), z(static_cast<std::size_t>(n) * n_levels);
    std::vector<lapack_int> isuppz(2 * std::max(1, n_levels));
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1,
        n_levels, 0.0, &m, w.data(), z.data(), n, isuppz.data());
    if (info != 0 || m < n_levels)
        throw std::runtime_error("fd_eigensolve: LAPACK dstevr failed");
    energies.assign(w.begin(), w.begin() + n_levels);
    vectors.assign(n_levels, std::vector<double>(n));
    const double scale = 1.0 / std::sqrt(h);
    for (int j = 0; j < n_levels; ++j) {
        double sign = 1.0;
        // fix the overall sign so psi > 0 near the origin
        for (int k = 0; k < n; ++k) {
            if (std::abs(z[k + static_cast<std::size_t>(j) * n]) > 1e-8) {
                sign = z[k + static_cast<std::size_t>(j) * n] > 0 ? 1.0 : -1.0;
                break;
            }
        }
        for (int k = 0; k < n; ++k)
            vectors[j][k] = sign * scale * z[k + static_cast<std::size_t>(j) * n];
    }
}

} // namespace detail

/// Lowest n_levels bound states of the image potential plus a uniform holding
/// field E_z (V/m), by finite-difference diagonalization with hard walls at
/// z = 0 and z = z_max. With check_convergence the solve is repeated on a
/// refined grid and rejected if any energy moves by more than 0.1%.
inline std::vector<SEState> solve_stark_spectrum(
    double e_z, int n_levels, const GridSpec& gs,
    const PhysicalConstants& pc = {}, bool check_convergence = false) {
    if (n_levels < 1)
        throw std::invalid_argument("solve_stark_spectrum: n_levels >= 1");
    if (gs.points < 2000)
        throw std::invalid_argument("solve_stark_spectrum: need >= 2000 points");
    const double rb = pc.effective_bohr_radius();
    const double r = pc.rydberg_energy();
    const double f = pc.elementary_charge * e_z * rb / (2.0 * r);
    const double u_max = gs.z_max / rb;

    std::vector<double> eps;
    std::vector<std::vector<double>> vec;
    detail::fd_eigensolve(f, n_levels, u_max, gs.points, eps, vec);

    if (check_convergence) {
        std::vector<double> eps2;
        std::vector<std::vector<double>> vec2;
        detail::fd_eigensolve(f, n_levels, u_max, 2 * gs.points, eps2, vec2);
        for (int j = 0; j < n_levels; ++j)
            if (std::abs(eps2[j] - eps[j]) > 1e-3 * std::abs(eps2[j]))
                throw std::runtime_error("solve_stark_spectrum: grid too coarse");
    }

    const double h = u_max / (gs.points + 1);
    std::vector<SEState> out;
    out.reserve(n_levels);
    for (int j = 0; j < n_levels; ++j) {
        double peak = 0.0;
        for (double v : vec[j]) peak = std::max(peak, std::abs(v));
        if (std::abs(vec[j].back()) > 1e-6 * peak)
            throw std::runtime_error("solve_stark_spectrum: z_max too small");
        SEState s;
        s.n = j + 1;
        s.energy = eps[j] * r;
        s.grid.resize(gs.points);
        s.values.resize(gs.points);
        const double vscale = 1.0 / std::sqrt(rb);
        for (int k = 0; k < gs.points; ++k) {
            s.grid[k] = (k + 1) * h * rb;
            s.values[k] = vec[j][k] * vscale;
        }
        out.push_back(std::move(s));
    }
    for (int j = 1; j < n_levels; ++j)
        if (!(out[j].energy > out[j - 1].energy))
            throw std::runtime_error("solve_stark_spectrum: energies not ordered");
    return out;
}

/// Two-ripplon decay rates kappa^(n) relative to kappa^(2). The common
/// prefactor of the rate formula cancels in the ratios; the absolute scale is
/// set externally by the measured lifetime of the first excited state.
struct DecayModel {
    double holding_field = 0.0;    // V/m
    int n_max = 6;
    std::vector<double> ratios;    // kappa^(n)/kappa^(2) for n = 2..n_max
    double kappa2 = 1e6;           // s^-1, calibration

    double ratio(int n) const { return ratios.at(n - 2); }
    double rate(int n) const { return kappa2 * ratio(n); }
};

/// Decay-rate ratios for n = 2..n_max at holding field e_z (V/m). Uses the
/// analytic states at zero field and the finite-difference spectrum
/// otherwise. Only leakage to lower-lying states contributes.
inline DecayModel decay_rate_ratios(double e_z, int n_max,
                                    const PhysicalConstants& pc = {},
                                    double kappa2 = 1e6,
                                    int grid_points = 32000) {
    if (n_max < 2 || n_max > 6)
        throw std::invalid_argument("decay_rate_ratios: n_max must be in [2,6]");
    std::vector<SEState> states;
    if (e_z == 0.0) {
        for (int n = 1; n <= n_max; ++n) states.push_back(analytic_state(n, pc));
    } else {
        states = solve_stark_spectrum(e_z, n_max, default_grid(n_max, pc, grid_points), pc);
    }
    std::vector<double> elem(n_max), en(n_max);
    for (int n = 1; n <= n_max; ++n) {
        elem[n - 1] = dvdz_element(states[n - 1], e_z, pc);
        en[n - 1] = states[n - 1].energy;
    }
    auto rate = [&](int n) {
        double acc = 0.0;
        for (int l = 1; l < n; ++l)
            acc += elem[l - 1] * elem[n - 1] *
                   std::pow(std::abs(en[n - 1] - en[l - 1]), 2.0 / 3.0);
        return acc;
    };
    DecayModel model;
    model.holding_field = e_z;
    model.n_max = n_max;
    model.kappa2 = kappa2;
    const double k2 = rate(2);
    for (int n = 2; n <= n_max; ++n) model.ratios.push_back(rate(n) / k2);
    return model;
}

} // namespace secnot
