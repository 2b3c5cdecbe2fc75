#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

// Small dense complex linear algebra for quantum states and gates:
// fidelity measures and the matrix exponential. All functions are pure.

namespace secnot {

using Complex = std::complex<double>;
using Ket = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;

inline bool all_finite(const Eigen::MatrixXcd& m) {
    return m.allFinite();
}

/// Basis vector |index> in a Hilbert space of the given dimension.
inline Ket basis_ket(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim)
        throw std::invalid_argument("basis_ket: index out of range");
    Ket k = Ket::Zero(dim);
    k[index] = 1.0;
    return k;
}

/// Outer product |k><k|. Trace equals the squared norm of k, so
/// sub-normalized kets from non-Hermitian evolution give sub-unit traces.
inline DensityMatrix ket_to_density(const Ket& k) {
    if (!k.allFinite())
        throw std::invalid_argument("ket_to_density: non-finite amplitudes");
    return k * k.adjoint();
}

inline double hermiticity_defect(const Eigen::MatrixXcd& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

namespace detail {

// Square root of a Hermitian positive semidefinite matrix via
// eigendecomposition. Eigenvalues in [neg_tol_floor, 0] are clamped to zero
// (integrator noise); anything more negative is rejected.
inline Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a,
                                 double neg_tol = 1e-10) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        0.5 * (a + a.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < -neg_tol)
            throw std::invalid_argument(
                "psd_sqrt: matrix not positive semidefinite");
        if (ev[i] < 0.0) ev[i] = 0.0;
    }
    return es.eigenvectors() *
           ev.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

} // namespace detail

/// Uhlmann fidelity F = (Tr sqrt(sqrt(t) a sqrt(t)))^2 between density
/// matrices. Reduces to |<phi|psi>|^2 for pure states.
inline double state_fidelity(const DensityMatrix& target,
                             const DensityMatrix& actual,
                             double neg_tol = 1e-10) {
    if (target.rows() != actual.rows() || target.rows() != target.cols() ||
        actual.rows() != actual.cols())
        throw std::invalid_argument("state_fidelity: dimension mismatch");
    if (hermiticity_defect(target) > 1e-9 || hermiticity_defect(actual) > 1e-9)
        throw std::invalid_argument("state_fidelity: input not Hermitian");
    const Eigen::MatrixXcd s = detail::psd_sqrt(target, neg_tol);
    const Eigen::MatrixXcd m = detail::psd_sqrt(s * actual * s, neg_tol);
    const double tr = m.trace().real();
    return tr * tr;
}

/// Gate fidelity F = (1/N) |Tr(real^dag ideal)|. The modulus realizes the
/// optimal global phase, so no numeric phase scan is needed.
inline double gate_fidelity(const Operator& real_gate,
                            const Operator& ideal_gate) {
    if (real_gate.rows() != ideal_gate.rows() ||
        real_gate.cols() != ideal_gate.cols() ||
        real_gate.rows() != real_gate.cols())
        throw std::invalid_argument("gate_fidelity: dimension mismatch");
    const double n = static_cast<double>(real_gate.rows());
    return std::abs((real_gate.adjoint() * ideal_gate).trace()) / n;
}

/// exp(scale * A) by scaling-and-squaring Pade approximation.
inline Operator matrix_exponential(const Operator& a, Complex scale = 1.0) {
    if (!a.allFinite())
        throw std::invalid_argument("matrix_exponential: non-finite entries");
    return (scale * a).exp();
}

/// Unitary-or-contractive propagator exp(-i H t).
inline Operator propagator(const Operator& h, double t) {
    return matrix_exponential(h, Complex(0.0, -t));
}

} // namespace secnot
