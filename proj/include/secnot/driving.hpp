#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "secnot/linalg.hpp"

// Driven three-level Hamiltonians in the rotating frame, the dressed (dark /
// bright) basis, and the perturbative eigenvalues of the lossy Hamiltonian.
// Basis ordering is fixed as (|01>, |10>, |11>) for 3-level objects and
// (|00>, |01>, |10>, |11>) for 4-level objects.

namespace secnot {

/// Drive amplitudes, detunings and decay rates, all in units of a reference
/// angular frequency (internally the total Rabi frequency Omega = 1).
struct DriveParams {
    double rabi_1 = 0.0;     // |01> <-> |11>
    double rabi_2 = 0.0;     // |01> <-> |10>
    double detuning_1 = 0.0; // single-photon
    double detuning_2 = 0.0; // two-photon
    double kappa_1 = 0.0;    // decay of |01>
    double kappa_2 = 0.0;    // decay of |10>
    double kappa_3 = 0.0;    // decay of |11>

    double omega() const { return std::hypot(rabi_1, rabi_2); }
    Complex delta_1() const { return {detuning_1, -0.5 * kappa_1}; }
    Complex delta_2() const { return {detuning_2, -0.5 * kappa_2}; }
};

/// Equal-amplitude resonant drive with total Rabi frequency 1.
inline DriveParams resonant_drive(double kappa_1 = 0.0, double kappa_2 = 0.0,
                                  double kappa_3 = 0.0) {
    DriveParams p;
    p.rabi_1 = p.rabi_2 = 1.0 / std::sqrt(2.0);
    p.kappa_1 = kappa_1;
    p.kappa_2 = kappa_2;
    p.kappa_3 = kappa_3;
    return p;
}

namespace detail {

inline Operator three_level_hamiltonian(Complex d1, Complex d2, double o1,
                                        double o2) {
    Operator h(3, 3);
    h << -2.0 * d1, o2, o1,
         o2, -2.0 * d2, 0.0,
         o1, 0.0, 0.0;
    return -0.5 * h;
}

} // namespace detail

/// Rotating-frame Hamiltonian (Hermitian, detunings only).
inline Operator build_h_rotating(const DriveParams& p) {
    return detail::three_level_hamiltonian(p.detuning_1, p.detuning_2,
                                           p.rabi_1, p.rabi_2);
}

/// No-jump Hamiltonian: the rotating-frame matrix with the detunings made
/// complex, delta_i = Delta_i - i kappa_i / 2.
inline Operator build_h_nonhermitian(const DriveParams& p) {
    return detail::three_level_hamiltonian(p.delta_1(), p.delta_2(), p.rabi_1,
                                           p.rabi_2);
}

/// Dressed eigenbasis at zero two-photon detuning. |a1> is the dark state:
/// it has no amplitude on the lossy intermediate level |01>.
struct DressedBasis {
    double theta = 0.0;   // tan(theta) = rabi_1 / rabi_2
    Complex phi{0.0, 0.0}; // tan(2 phi) = Omega / delta_1, complex if kappa_1 > 0
    Ket a1, a2, a3;
};

inline DressedBasis dressed_basis(const DriveParams& p) {
    DressedBasis b;
    b.theta = (p.rabi_2 == 0.0) ? M_PI / 2.0
                                : std::atan(p.rabi_1 / p.rabi_2);
    const Complex d1 = p.delta_1();
    b.phi = (d1 == Complex(0.0, 0.0))
                ? Complex(M_PI / 4.0, 0.0)
                : 0.5 * std::atan(p.omega() / d1);
    const double st = std::sin(b.theta), ct = std::cos(b.theta);
    const Complex sp = std::sin(b.phi), cp = std::cos(b.phi);
    b.a1 = Ket(3);
    b.a1 << 0.0, -st, ct;
    b.a2 = Ket(3);
    b.a2 << cp, ct * sp, st * sp;
    b.a3 = Ket(3);
    b.a3 << -sp, ct * cp, st * cp;
    return b;
}

/// First-order eigenvalues of the no-jump Hamiltonian, treating delta_2 as
/// the perturbation. Valid for |delta_i| <= 0.1 Omega.
inline std::array<Complex, 3> perturbative_eigenvalues(const DriveParams& p) {
    const double o = p.omega();
    const Complex d1 = p.delta_1(), d2 = p.delta_2();
    if (std::abs(d1) > 0.1 * o || std::abs(d2) > 0.1 * o)
        throw std::domain_error(
            "perturbative_eigenvalues: detunings exceed perturbative regime");
    const double w1 = p.rabi_1 * p.rabi_1 / (o * o);
    const double w2 = p.rabi_2 * p.rabi_2 / (2.0 * o * o);
    return {w1 * d2,
            0.5 * o + 0.5 * d1 + w2 * d2,
            -0.5 * o + 0.5 * d1 + w2 * d2};
}

/// Exact eigenvalues of the no-jump Hamiltonian.
inline std::array<Complex, 3> exact_eigenvalues(const DriveParams& p) {
    Eigen::ComplexEigenSolver<Operator> es(build_h_nonhermitian(p));
    return {es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};
}

/// Reorder `values` to minimize the total absolute difference against
/// `reference` (assignment over the 3! permutations).
inline std::array<Complex, 3> pair_eigenvalues(
    const std::array<Complex, 3>& reference,
    const std::array<Complex, 3>& values) {
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    double best = std::numeric_limits<double>::infinity();
    std::array<Complex, 3> out = values;
    for (const auto& perm : perms) {
        double cost = 0.0;
        for (int i = 0; i < 3; ++i)
            cost += std::abs(reference[i] - values[perm[i]]);
        if (cost < best) {
            best = cost;
            out = {values[perm[0]], values[perm[1]], values[perm[2]]};
        }
    }
    return out;
}

} // namespace secnot
