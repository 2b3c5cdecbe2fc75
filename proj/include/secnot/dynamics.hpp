#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "secnot/driving.hpp"
#include "secnot/linalg.hpp"
#include "secnot/ode.hpp"

// Time evolution of the driven system by three routes: the master equation
// with projector Lindblad terms, no-jump Schrodinger evolution, and the
// closed-form solutions for the three basis initial states. Time is
// dimensionless (Omega * t).

namespace secnot {

enum class Scheme { coherent, two_step };

struct PulseSegment {
    double duration;    // Omega * t
    DriveParams drive;
};

struct PulseSchedule {
    std::vector<PulseSegment> segments;
    Scheme scheme_tag = Scheme::coherent;

    double total_duration() const {
        double acc = 0.0;
        for (const auto& s : segments) acc += s.duration;
        return acc;
    }
};

/// Both fields on simultaneously for one full period (plus detunings/decays
/// from p).
inline PulseSchedule coherent_schedule(const DriveParams& p,
                                       double duration = 2.0 * M_PI) {
    if (duration <= 0.0)
        throw std::invalid_argument("coherent_schedule: duration <= 0");
    return PulseSchedule{{{duration, p}}, Scheme::coherent};
}

/// Sequential pi pulses at amplitude Omega/sqrt(2): first |10> -> |01>, then
/// |01> -> |11>. Total duration 2*sqrt(2)*pi/Omega.
inline PulseSchedule two_step_schedule(const DriveParams& p) {
    const double amp = p.omega() / std::sqrt(2.0);
    const double seg = std::sqrt(2.0) * M_PI / p.omega();
    DriveParams first = p, second = p;
    first.rabi_1 = 0.0;
    first.rabi_2 = amp;
    second.rabi_1 = amp;
    second.rabi_2 = 0.0;
    return PulseSchedule{{{seg * p.omega(), first}, {seg * p.omega(), second}},
                         Scheme::two_step};
}

struct Trajectory {
    std::vector<double> times;           // Omega * t
    std::vector<DensityMatrix> states;

    std::vector<double> population(Eigen::Index level) const {
        std::vector<double> out;
        out.reserve(states.size());
        for (const auto& s : states) out.push_back(s(level, level).real());
        return out;
    }
};

namespace detail {

inline std::array<Eigen::Index, 3> lossy_levels(Eigen::Index dim) {
    if (dim == 3) return {0, 1, 2};        // (|01>, |10>, |11>)
    if (dim == 4) return {1, 2, 3};        // |00> untouched
    throw std::invalid_argument("dynamics: dimension must be 3 or 4");
}

inline Operator embed_hamiltonian(const DriveParams& p, Eigen::Index dim) {
    const Operator h3 = build_h_rotating(p);
    if (dim == 3) return h3;
    Operator h4 = Operator::Zero(4, 4);
    h4.block(1, 1, 3, 3) = h3;
    return h4;
}

} // namespace detail

/// Right-hand side of the master equation: -i[H, rho] plus the projector
/// dissipators kappa_i (P rho P - {P, rho}/2). Traceless; diagonal entries
/// are untouched when H = 0.
inline DensityMatrix lindblad_rhs(const DensityMatrix& rho, const Operator& h,
                                  const std::array<double, 3>& rates) {
    const Eigen::Index dim = rho.rows();
    if (rho.cols() != dim || h.rows() != dim || h.cols() != dim)
        throw std::invalid_argument("lindblad_rhs: dimension mismatch");
    const auto levels = detail::lossy_levels(dim);
    DensityMatrix d = Complex(0.0, -1.0) * (h * rho - rho * h);
    for (int i = 0; i < 3; ++i) {
        const Eigen::Index l = levels[i];
        const double k = rates[i];
        if (k == 0.0) continue;
        // P rho P only keeps the (l,l) entry; {P, rho}/2 damps row/column l.
        d.row(l) -= 0.5 * k * rho.row(l);
        d.col(l) -= 0.5 * k * rho.col(l);
        d(l, l) += k * rho(l, l);
    }
    return d;
}

namespace detail {

inline void check_density_invariants(const DensityMatrix& rho, double trace_tol) {
    if (hermiticity_defect(rho) > 1e-9)
        throw std::invalid_argument("dynamics: state not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > trace_tol)
        throw std::invalid_argument("dynamics: state trace not 1");
}

// Advance rho through the schedule from time t_from to t_to.
inline DensityMatrix advance(const PulseSchedule& sched, DensityMatrix rho,
                             double t_from, double t_to,
                             const ode::Options& opt) {
    double seg_start = 0.0;
    for (const auto& seg : sched.segments) {
        const double seg_end = seg_start + seg.duration;
        const double a = std::max(t_from, seg_start);
        const double b = std::min(t_to, seg_end);
        if (b > a) {
            const Operator h = embed_hamiltonian(seg.drive, rho.rows());
            const std::array<double, 3> rates = {
                seg.drive.kappa_1, seg.drive.kappa_2, seg.drive.kappa_3};
            rho = ode::integrate(
                [&](double, const DensityMatrix& r) {
                    return lindblad_rhs(r, h, rates);
                },
                std::move(rho), a, b, opt);
        }
        seg_start = seg_end;
    }
    return rho;
}

} // namespace detail

/// Master-equation trajectory sampled at t_grid (dimensionless times within
/// the schedule). Trace is checked to stay within 1e-9 of 1.
inline Trajectory evolve_master(const DensityMatrix& rho0,
                                const PulseSchedule& sched,
                                const std::vector<double>& t_grid,
                                const ode::Options& opt = {}) {
    detail::check_density_invariants(rho0, 1e-9);
    const double total = sched.total_duration();
    Trajectory traj;
    traj.times = t_grid;
    traj.states.reserve(t_grid.size());
    DensityMatrix rho = rho0;
    double t = 0.0;
    for (double ts : t_grid) {
        if (ts < t || ts > total * (1.0 + 1e-12))
            throw std::invalid_argument("evolve_master: t_grid out of range");
        rho = detail::advance(sched, std::move(rho), t, ts, opt);
        t = ts;
        if (std::abs(rho.trace().real() - 1.0) > 1e-9)
            throw std::runtime_error("evolve_master: trace drift beyond 1e-9");
        // keep the state exactly Hermitian against roundoff accumulation
        rho = 0.5 * (rho + rho.adjoint().eval());
        traj.states.push_back(rho);
    }
    return traj;
}

/// No-jump evolution exp(-i H_d t) psi0 in the 3-level subspace. The result
/// is sub-normalized when decay rates are nonzero.
inline Ket evolve_nonhermitian(const Ket& psi0, const DriveParams& p,
                               double t) {
    if (psi0.size() != 3)
        throw std::invalid_argument("evolve_nonhermitian: psi0 must be 3-dim");
    return propagator(build_h_nonhermitian(p), t) * psi0;
}

enum class InitialState { ket01, ket10, ket11 };

/// Closed-form no-jump evolution for the three basis initial states, valid
/// for equal Rabi amplitudes and small complex detunings.
inline Ket analytic_evolution(InitialState initial, const DriveParams& p,
                              double t) {
    const double o = p.omega();
    if (std::abs(p.rabi_1 - p.rabi_2) > 1e-12 * o)
        throw std::domain_error("analytic_evolution: requires rabi_1 == rabi_2");
    const Complex d1 = p.delta_1(), d2 = p.delta_2();
    if (std::abs(d1) > 0.1 * o || std::abs(d2) > 0.1 * o)
        throw std::domain_error("analytic_evolution: detunings too large");
    const Complex i(0.0, 1.0);
    const Complex bright = std::exp(-i * (2.0 * d1 + d2) * t / 4.0);
    const Complex dark = std::exp(-i * d2 * t / 2.0);
    const Complex cos_half = std::cos(o * t / 2.0);
    const Complex sin_half = std::sin(o * t / 2.0);
    const Complex swap_amp = i / std::sqrt(2.0) * sin_half * bright;

    Ket psi(3); // (|01>, |10>, |11>)
    switch (initial) {
        case InitialState::ket10:
            psi << swap_amp,
                   0.5 * cos_half * bright + 0.5 * dark,
                   0.5 * cos_half * bright - 0.5 * dark;
            break;
        case InitialState::ket01:
            psi << cos_half * bright, swap_amp, swap_amp;
            break;
        case InitialState::ket11:
            psi << swap_amp,
                   0.5 * cos_half * bright - 0.5 * dark,
                   0.5 * cos_half * bright + 0.5 * dark;
            break;
        default:
            throw std::invalid_argument("analytic_evolution: bad initial state");
    }
    return psi;
}

struct PeakResult {
    double t_peak;
    double fidelity;
};

/// Locate the first local maximum of the state fidelity against `target`
/// along the schedule (extended by a 20% margin), coarse scan followed by
/// golden-section refinement.
inline PeakResult peak_transfer_search(const PulseSchedule& sched,
                                       const DensityMatrix& rho0,
                                       const DensityMatrix& target,
                                       int coarse_points = 400,
                                       const ode::Options& opt = {}) {
    PulseSchedule ext = sched;
    const double margin = 0.2 * sched.total_duration();
    ext.segments.back().duration += margin;
    const double t_end = ext.total_duration();

    // One pass over the coarse grid, carrying the state forward.
    std::vector<double> ts(coarse_points), fs(coarse_points);
    DensityMatrix rho = rho0;
    double t = 0.0;
    for (int k = 0; k < coarse_points; ++k) {
        ts[k] = t_end * (k + 1) / coarse_points;
        rho = detail::advance(ext, std::move(rho), t, ts[k], opt);
        t = ts[k];
        fs[k] = state_fidelity(target, rho);
    }

    // First interior local maximum; the prominence floor skips flat
    // near-zero stretches before the transfer sets in.
    const double f_max = *std::max_element(fs.begin(), fs.end());
    int peak = -1;
    for (int k = 1; k + 1 < coarse_points; ++k) {
        if (fs[k] >= fs[k - 1] && fs[k] >= fs[k + 1] && fs[k] > 0.1 * f_max) {
            peak = k;
            break;
        }
    }
    if (peak < 0)
        throw std::runtime_error("peak_transfer_search: no interior maximum");

    // Golden-section refinement on [ts[peak-1], ts[peak+1]], integrating
    // forward from the cached state at the bracket start.
    const double t_lo = ts[peak - 1], t_hi = ts[peak + 1];
    const DensityMatrix rho_lo = evolve_master(rho0, ext, {t_lo}, opt).states[0];
    auto fidelity_at = [&](double tq) {
        const DensityMatrix r =
            detail::advance(ext, rho_lo, t_lo, tq, opt);
        return state_fidelity(target, r);
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = t_lo, b = t_hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = fidelity_at(x1), f2 = fidelity_at(x2);
    while (b - a > 1e-7 * t_end) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = fidelity_at(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = fidelity_at(x1);
        }
    }
    const double tp = 0.5 * (a + b);
    return PeakResult{tp, fidelity_at(tp)};
}

enum class DetuningAxis { single_photon, two_photon };

/// Peak transfer fidelity |10> -> |11> as a function of one detuning axis.
inline std::vector<std::pair<double, double>> detuning_sweep(
    DetuningAxis axis, const std::vector<double>& values,
    const DriveParams& p) {
    const double o = p.omega();
    for (double d : values)
        if (std::abs(d) > 0.5 * o)
            throw std::invalid_argument(
                "detuning_sweep: |detuning| must be <= 0.5 Omega");
    const DensityMatrix rho0 = ket_to_density(basis_ket(3, 1));  // |10>
    const DensityMatrix target = ket_to_density(basis_ket(3, 2)); // |11>
    std::vector<std::pair<double, double>> out;
    out.reserve(values.size());
    for (double d : values) {
        DriveParams q = p;
        (axis == DetuningAxis::single_photon ? q.detuning_1 : q.detuning_2) = d;
        const auto peak = peak_transfer_search(
            coherent_schedule(q, 2.0 * M_PI / o), rho0, target);
        out.emplace_back(d, peak.fidelity);
    }
    return out;
}

} // namespace secnot
