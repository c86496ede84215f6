#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "flexcart/errors.hpp"
#include "flexcart/params.hpp"

namespace flexcart {

namespace detail {

inline constexpr int kMaxSimpsonDepth = 40;

template <class F>
double simpson_step(F& f, double a, double m, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth, bool& ok) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol)
        return left + right + err;
    if (depth >= kMaxSimpsonDepth) {
        ok = false;
        return left + right + err;
    }
    return simpson_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1, ok) +
           simpson_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1, ok);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance tol.
/// Throws QuadratureError (carrying the accumulated best estimate) if any
/// subinterval still misses its local tolerance at the maximum subdivision
/// depth.
template <class F>
double integrate(F&& f, double a, double b, double tol = kQuadTol) {
    if (!(a <= b))
        throw std::invalid_argument("integrate: requires a <= b");
    if (a == b)
        return 0.0;
    auto& fn = f;
    const double m = 0.5 * (a + b);
    const double fa = fn(a);
    const double fm = fn(m);
    const double fb = fn(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    bool ok = true;
    const double result =
        detail::simpson_step(fn, a, m, b, fa, fm, fb, whole, tol, 0, ok);
    if (!ok)
        throw QuadratureError("integrate: subdivision limit exceeded", result);
    return result;
}

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by
/// Newton iteration on the Legendre polynomial.
template <std::size_t N>
struct GaussRule {
    std::array<double, N> node;
    std::array<double, N> weight;
};

template <std::size_t N>
const GaussRule<N>& gauss_rule() {
    static const GaussRule<N> rule = [] {
        GaussRule<N> r{};
        const std::size_t half = (N + 1) / 2;
        for (std::size_t i = 0; i < half; ++i) {
            // Chebyshev-based initial guess.
            double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                                (static_cast<double>(N) + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                // Evaluate P_N and P_N' by the three-term recurrence.
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= N; ++k) {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double step = p1 / dp;
                x -= step;
                if (std::abs(step) < 1e-16)
                    break;
            }
            r.node[i] = -x;
            r.node[N - 1 - i] = x;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            r.weight[i] = w;
            r.weight[N - 1 - i] = w;
        }
        return r;
    }();
    return rule;
}

/// Fixed-order Gauss-Legendre quadrature. Exact to machine precision for the
/// entire-function integrands of this model; used on evaluation-count
/// critical paths.
template <std::size_t N, class F>
double gauss(F&& f, double a, double b) {
    const auto& r = gauss_rule<N>();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        sum += r.weight[i] * f(c + h * r.node[i]);
    return h * sum;
}

} // namespace detail

} // namespace flexcart
