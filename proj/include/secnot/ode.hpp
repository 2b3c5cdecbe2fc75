#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

// Adaptive Dormand-Prince 5(4) integrator for dense complex states
// (Eigen vectors or matrices).

namespace secnot::ode {

struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;   // 0 = choose automatically
    long max_steps = 4000000;
};

namespace detail {

// Butcher tableau of DOPRI5.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                        c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th minus 4th order weights (error estimate)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                        e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

template <class State>
double error_norm(const State& err, const State& y0, const State& y1,
                  double atol, double rtol) {
    double acc = 0.0;
    const auto ea = err.cwiseAbs().eval();
    const auto s0 = y0.cwiseAbs().eval();
    const auto s1 = y1.cwiseAbs().eval();
    for (Eigen::Index i = 0; i < ea.size(); ++i) {
        const double sc = atol + rtol * std::max(s0(i), s1(i));
        const double r = ea(i) / sc;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(ea.size()));
}

} // namespace detail

/// Integrate y' = f(t, y) from t0 to t1 and return y(t1).
template <class Rhs, class State>
State integrate(Rhs&& f, State y, double t0, double t1,
                const Options& opt = {}) {
    using namespace detail;
    if (t1 < t0) throw std::invalid_argument("ode::integrate: t1 < t0");
    if (t1 == t0) return y;

    double t = t0;
    double h = opt.initial_step > 0.0 ? opt.initial_step
                                      : (t1 - t0) * 1e-4;
    State k1 = f(t, y);
    for (long step = 0; step < opt.max_steps; ++step) {
        if (t + h > t1) h = t1 - t;
        const State k2 = f(t + c2 * h, (y + h * (a21 * k1)).eval());
        const State k3 = f(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
        const State k4 =
            f(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
        const State k5 = f(
            t + c5 * h,
            (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
        const State k6 =
            f(t + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                               a65 * k5))
                         .eval());
        const State y1 =
            (y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6)).eval();
        const State k7 = f(t + h, y1);
        const State err = (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                e6 * k6 + e7 * k7))
                              .eval();
        const double nrm = error_norm(err, y, y1, opt.atol, opt.rtol);
        if (nrm <= 1.0) {
            t += h;
            y = y1;
            k1 = k7; // FSAL
            if (t >= t1) return y;
        }
        const double fac =
            std::clamp(0.9 * std::pow(std::max(nrm, 1e-16), -0.2), 0.2, 5.0);
        h *= fac;
        if (h < 1e-14 * (t1 - t0))
            throw std::runtime_error("ode::integrate: step size underflow");
    }
    throw std::runtime_error("ode::integrate: max step count exceeded");
}

} // namespace secnot::ode
