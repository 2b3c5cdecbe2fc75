#include <doctest.h>

#include "secnot/cnot.hpp"

using namespace secnot;

namespace {
const double k1 = 1e-3, k2 = 0.3439e-3, k3 = 0.1520e-3;
}

TEST_CASE("phase correction") {
    const Operator p = phase_correction();
    CHECK((p * p - Operator::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((p * basis_ket(4, 0) - basis_ket(4, 0)).cwiseAbs().maxCoeff() <
          1e-15);
    // the raw full-period evolution sends |10> to -|11>; the correction
    // restores the plus sign
    const Operator u = simulated_gate_matrix(resonant_drive());
    CHECK(std::abs((u * basis_ket(4, 2))[3] - Complex(1.0)) < 1e-10);
}

TEST_CASE("closed-form gate coefficients") {
    const AnalyticGate ideal = analytic_ur(0.0, 0.0, 1.0);
    CHECK(ideal.a == doctest::Approx(1.0));
    CHECK(ideal.b == doctest::Approx(0.0));
    CHECK(ideal.c == doctest::Approx(1.0));
    CHECK((ideal.matrix - ideal_cnot()).cwiseAbs().maxCoeff() < 1e-15);

    const AnalyticGate g = analytic_ur(k1, k2, 1.0);
    CHECK(g.a == doctest::Approx(0.998161).epsilon(1e-5));
    CHECK(g.b == doctest::Approx(-0.000270).epsilon(1e-2));
    CHECK(g.c == doctest::Approx(0.998810).epsilon(1e-5));
    CHECK(gate_fidelity(g.matrix, ideal_cnot()) ==
          doctest::Approx(0.9989).epsilon(5e-4));
    CHECK(analytic_gate_fidelity(k1, k2, 1.0) ==
          doctest::Approx(0.25 * (1.0 + g.a) + 0.5 * g.c));

    CHECK_THROWS_AS(analytic_ur(k1, k2, 0.0), std::invalid_argument);
}

TEST_CASE("c^2 - b^2 identity") {
    for (double x1 : {0.0, 1e-3, 0.05}) {
        const double x2 = 0.3439 * x1;
        const AnalyticGate g = analytic_ur(x1, x2, 1.0);
        const double expect = std::exp(-(2.0 * x1 + x2) * M_PI / 4.0) *
                              std::exp(-x2 * M_PI / 2.0);
        CHECK(std::abs(g.c * g.c - g.b * g.b - expect) < 1e-15);
    }
}

TEST_CASE("simulated gate matrix agrees with the closed form") {
    const DriveParams p = resonant_drive(k1, k2, 0.0);
    const Operator u = simulated_gate_matrix(p);
    const AnalyticGate g = analytic_ur(k1, k2, 1.0);
    // the closed form drops dressed-state mixing of first order in
    // kappa/omega, so the matrices agree to O(kappa)
    CHECK((u - g.matrix).cwiseAbs().maxCoeff() < 5e-4);
    CHECK(gate_fidelity(u, ideal_cnot()) ==
          doctest::Approx(0.9989).epsilon(5e-4));
}

TEST_CASE("simulated CNOT reproduces the reference fidelities") {
    const auto [channel, report] = simulate_cnot(resonant_drive(k1, k2, k3));
    const double expected[] = {1.0, 0.9987, 0.9987, 0.9987, 0.9990, 0.9980};
    REQUIRE(report.table.size() == 6);
    for (int i = 0; i < 6; ++i)
        CHECK(report.table[i].fidelity ==
              doctest::Approx(expected[i]).epsilon(5e-4));
    CHECK(report.gate_fid == doctest::Approx(0.9989).epsilon(5e-4));

    // closed-form gate fidelity and simulated per-input fidelities agree
    // at the same parameter point
    for (int i = 1; i < 6; ++i)
        CHECK(std::abs(report.table[i].fidelity - report.gate_fid) < 2e-3);
}

TEST_CASE("control-0 subspace is untouched") {
    // exact with no dissipation, residual leakage of order kappa otherwise
    Ket in(4);
    in << 0.6, 0.8, 0.0, 0.0;
    const auto lossless = simulate_cnot(resonant_drive());
    const DensityMatrix out0 = lossless.first(ket_to_density(in));
    CHECK(out0(2, 2).real() < 1e-9);
    CHECK(out0(3, 3).real() < 1e-9);

    const auto lossy = simulate_cnot(resonant_drive(k1, k2, k3));
    const DensityMatrix out = lossy.first(ket_to_density(in));
    CHECK(out(2, 2).real() < 1e-3);
    CHECK(out(3, 3).real() < 1e-3);
}

TEST_CASE("superposition outputs carry the Bell pattern") {
    const auto [channel, report] = simulate_cnot(resonant_drive(k1, k2, k3));
    const double inv = 1.0 / std::sqrt(2.0);
    Ket in1(4);
    in1 << inv, 0.0, inv, 0.0;
    const DensityMatrix out1 = channel(ket_to_density(in1));
    for (auto [i, j] : {std::pair{0, 0}, {0, 3}, {3, 0}, {3, 3}}) {
        CHECK(std::abs(out1(i, j)) == doctest::Approx(0.5).epsilon(0.01));
        CHECK(out1(i, j).real() > 0.0);
    }
    Ket in2(4);
    in2 << 0.0, inv, 0.0, inv;
    const DensityMatrix out2 = channel(ket_to_density(in2));
    for (auto [i, j] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        CHECK(std::abs(out2(i, j)) == doctest::Approx(0.5).epsilon(0.01));
        CHECK(out2(i, j).real() > 0.0);
    }
}

TEST_CASE("gate fidelity vs dissipation") {
    const auto sweep = fidelity_vs_dissipation(
        {0.0, 1e-4, 1e-3, 5e-3, 1e-2, 5e-2, 0.1}, 0.3439, 0.1520);
    CHECK(sweep[0].second == doctest::Approx(1.0));
    CHECK(sweep[2].second == doctest::Approx(0.9989).epsilon(5e-4));
    for (std::size_t i = 1; i < sweep.size(); ++i)
        CHECK(sweep[i].second < sweep[i - 1].second);
    for (const auto& [x, f] : sweep)
        if (x <= 5e-3) CHECK(f > 0.99);
    CHECK_THROWS_AS(fidelity_vs_dissipation({0.2}, 0.3439, 0.1520),
                    std::invalid_argument);
}
