#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "secnot/dynamics.hpp"
#include "secnot/linalg.hpp"

// Assembly of the four-level CNOT: the closed-form gate matrix with its decay
// coefficients, the end-to-end simulated channel, and fidelity reporting.
// Basis ordering (|00>, |01>, |10>, |11>).

namespace secnot {

/// Ideal CNOT with the second ("upper/lower mode") bit as control.
inline Operator ideal_cnot() {
    Operator u = Operator::Zero(4, 4);
    u(0, 0) = 1.0;
    u(1, 1) = 1.0;
    u(2, 3) = 1.0;
    u(3, 2) = 1.0;
    return u;
}

/// Phase operation adding a pi phase to |01>, |10> and |11>.
inline Operator phase_correction() {
    Operator p = Operator::Zero(4, 4);
    p(0, 0) = 1.0;
    p(1, 1) = -1.0;
    p(2, 2) = -1.0;
    p(3, 3) = -1.0;
    return p;
}

/// Closed-form gate after one full period and the phase correction. The
/// coefficients damp with the decays of the intermediate and swapped levels;
/// at zero decay the matrix is the ideal CNOT.
struct AnalyticGate {
    double a, b, c;
    Operator matrix;
};

inline AnalyticGate analytic_ur(double kappa_1, double kappa_2, double omega) {
    if (omega <= 0.0) throw std::invalid_argument("analytic_ur: omega <= 0");
    if (kappa_1 < 0.0 || kappa_2 < 0.0)
        throw std::invalid_argument("analytic_ur: negative decay rate");
    const double a = std::exp(-(2.0 * kappa_1 + kappa_2) * M_PI / (4.0 * omega));
    const double d = std::exp(-kappa_2 * M_PI / (2.0 * omega));
    const double b = 0.5 * a - 0.5 * d;
    const double c = 0.5 * a + 0.5 * d;
    Operator u = Operator::Zero(4, 4);
    u(0, 0) = 1.0;
    u(1, 1) = a;
    u(2, 2) = b;
    u(2, 3) = c;
    u(3, 2) = c;
    u(3, 3) = b;
    return AnalyticGate{a, b, c, std::move(u)};
}

/// Gate fidelity of the closed-form gate against the ideal CNOT,
/// F = (1 + a)/4 + c/2.
inline double analytic_gate_fidelity(double kappa_1, double kappa_2,
                                     double omega) {
    const AnalyticGate g = analytic_ur(kappa_1, kappa_2, omega);
    return 0.25 * (1.0 + g.a) + 0.5 * g.c;
}

/// The gate matrix from the no-jump evolution over one full period plus the
/// phase correction, in the 4-level space with |00> decoupled.
inline Operator simulated_gate_matrix(const DriveParams& p) {
    const double o = p.omega();
    Operator h4 = Operator::Zero(4, 4);
    h4.block(1, 1, 3, 3) = build_h_nonhermitian(p);
    return phase_correction() * propagator(h4, 2.0 * M_PI / o);
}

struct GateReport {
    struct Row {
        std::string input;
        std::string target;
        double fidelity;
    };
    std::vector<Row> table;
    double gate_fid = 0.0;
    DriveParams params;
};

using Channel = std::function<DensityMatrix(const DensityMatrix&)>;

namespace detail {

inline Ket ket4(std::initializer_list<Complex> amps) {
    Ket k(4);
    Eigen::Index i = 0;
    for (Complex a : amps) k[i++] = a;
    k.normalize();
    return k;
}

} // namespace detail

/// Full master-equation CNOT: evolve for one period, apply the phase
/// correction, and report the fidelities for the six standard input states
/// plus the closed-form gate fidelity.
inline std::pair<Channel, GateReport> simulate_cnot(const DriveParams& p,
                                                    const ode::Options& opt = {}) {
    const double o = p.omega();
    const PulseSchedule sched = coherent_schedule(p, 2.0 * M_PI / o);
    const Operator pc = phase_correction();
    Channel channel = [sched, pc, opt](const DensityMatrix& rho0) {
        const DensityMatrix rho =
            evolve_master(rho0, sched, {sched.total_duration()}, opt).states[0];
        return DensityMatrix(pc * rho * pc.adjoint());
    };

    const double inv = 1.0 / std::sqrt(2.0);
    struct Case {
        std::string name_in, name_out;
        Ket in, out;
    };
    const std::vector<Case> cases = {
        {"|00>", "|00>", detail::ket4({1, 0, 0, 0}), detail::ket4({1, 0, 0, 0})},
        {"|01>", "|01>", detail::ket4({0, 1, 0, 0}), detail::ket4({0, 1, 0, 0})},
        {"|10>", "|11>", detail::ket4({0, 0, 1, 0}), detail::ket4({0, 0, 0, 1})},
        {"|11>", "|10>", detail::ket4({0, 0, 0, 1}), detail::ket4({0, 0, 1, 0})},
        {"(|00>+|10>)/sqrt2", "(|00>+|11>)/sqrt2",
         detail::ket4({inv, 0, inv, 0}), detail::ket4({inv, 0, 0, inv})},
        {"(|01>+|11>)/sqrt2", "(|01>+|10>)/sqrt2",
         detail::ket4({0, inv, 0, inv}), detail::ket4({0, inv, inv, 0})},
    };

    GateReport report;
    report.params = p;
    for (const auto& c : cases) {
        const DensityMatrix out = channel(ket_to_density(c.in));
        report.table.push_back(
            {c.name_in, c.name_out,
             state_fidelity(ket_to_density(c.out), out)});
    }
    report.gate_fid = analytic_gate_fidelity(p.kappa_1, p.kappa_2, o);
    return {std::move(channel), std::move(report)};
}

/// Closed-form gate fidelity across a range of kappa_1/Omega at fixed rate
/// ratios.
inline std::vector<std::pair<double, double>> fidelity_vs_dissipation(
    const std::vector<double>& kappa1_over_omega, double ratio_kappa2,
    double /*ratio_kappa3*/ = 0.0) {
    std::vector<std::pair<double, double>> out;
    out.reserve(kappa1_over_omega.size());
    for (double k1 : kappa1_over_omega) {
        if (k1 < 0.0 || k1 > 0.1)
            throw std::invalid_argument(
                "fidelity_vs_dissipation: kappa_1/Omega must be in [0, 0.1]");
        out.emplace_back(k1,
                         analytic_gate_fidelity(k1, ratio_kappa2 * k1, 1.0));
    }
    return out;
}

} // namespace secnot
