#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

// Adaptive Gauss-Kronrod (G7, K15) quadrature for smooth integrands.

namespace secnot::quad {

namespace detail {

// K15 nodes (positive half) and weights; the embedded G7 rule uses the
// odd-indexed nodes.
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
void gk15(F&& f, double a, double b, double& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kronrod_x[i];
        const double fv = (i == 7) ? f(c) : f(c - dx) + f(c + dx);
        resk += kronrod_w[i] * fv;
        if (i % 2 == 1) resg += gauss_w[i / 2] * fv;
    }
    result = resk * h;
    err = std::abs(resk - resg) * h;
}

template <class F>
double adapt(F&& f, double a, double b, double tol, int depth) {
    double result, err;
    gk15(f, a, b, result, err);
    // the error estimate bottoms out near machine precision of the panel
    // value; refining past that floor cannot help
    if (err <= tol || err <= 1e-14 * std::abs(result) || depth > 50) {
        if (depth > 50)
            throw std::runtime_error("quadrature: failed to converge");
        return result;
    }
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth + 1) +
           adapt(f, c, b, 0.5 * tol, depth + 1);
}

} // namespace detail

/// Integrate f over [a, b] to the given absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12) {
    if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
    if (a == b) return 0.0;
    return detail::adapt(f, a, b, abs_tol, 0);
}

} // namespace secnot::quad
