#pragma once

#include <cmath>
#include <stdexcept>

#include "flexcart/errors.hpp"
#include "flexcart/full_model.hpp"
#include "flexcart/model.hpp"

namespace flexcart {

namespace detail {

inline constexpr std::size_t kArcOrder = 32; ///< GL order for [0, xe] integrals
inline constexpr std::size_t kVnOrder = 64;  ///< GL order for the V_N outer integral

/// Constraint value on the fast fixed-order path.
inline double gamma_gl(const Model& m, double theta, double xe) {
    return gauss<kArcOrder>(
               [&](double x) { return arc_integrand(m, theta, x); }, 0.0, xe) -
           m.params().L;
}

inline FullCoeffs coeffs_gl(const Model& m, double theta, double xe) {
    return coeffs_impl(m, theta, xe, [&](auto&& f) {
        return gauss<kArcOrder>(f, 0.0, xe);
    });
}

} // namespace detail

/// Material endpoint xhat_e(theta): the unique root of Gamma(theta, .) in
/// (0, L]. Bracketed bisection from [L/2, L] down to a 1e-3 bracket, then
/// Newton with the analytic derivative dGamma/dxe = A2 >= 1. The residual
/// |Gamma| is driven to 1e-13.
inline double solve_xe(const Model& m, double theta) {
    require_theta_domain(theta);
    const double L = m.params().L;

    const double gL = detail::gamma_gl(m, theta, L);
    if (std::abs(gL) <= 1e-13)
        return L; // straight configuration
    // Gamma(theta, L) >= 0 always (arc length of a deflected beam exceeds L),
    // so L is the upper end of the bracket.
    double hi = L;
    double lo = 0.5 * L;
    if (detail::gamma_gl(m, theta, lo) >= 0.0) {
        hi = lo;
        lo = 1e-3 * L;
        if (detail::gamma_gl(m, theta, lo) >= 0.0)
            throw std::domain_error("solve_xe: constraint root not bracketed in (0, L]");
    }
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (detail::gamma_gl(m, theta, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 60; ++it) {
        const double g = detail::gamma_gl(m, theta, x);
        if (std::abs(g) <= 1e-13)
            return x;
        const double tp = theta * m.shape(x).dphi;
        const double a2 = std::sqrt(1.0 + tp * tp);
        double next = x - g / a2;
        if (next <= 0.0)
            next = 0.5 * x;
        if (next > L)
            next = L;
        x = next;
    }
    if (std::abs(detail::gamma_gl(m, theta, x)) > 1e-12)
        throw NumericError("solve_xe: Newton refinement did not converge");
    return x;
}

/// d xhat_e / d theta from the velocity-level constraint A1 thetadot +
/// A2 xedot = 0.
inline double dxe_dtheta(const Model& m, double theta) {
    const double xe = solve_xe(m, theta);
    const FullCoeffs c = detail::coeffs_gl(m, theta, xe);
    return -c.A1 / c.A2;
}

/// Coefficients of the reduced (theta, z) model, evaluated on the constraint
/// manifold xe = xhat_e(theta).
struct ReducedCoeffs {
    double Dtheta; ///< reduced inertia, > 0 on the admissible domain
    double Ctheta; ///< reduced Coriolis coefficient
    double Btheta; ///< reduced conservative force dV_theta/dtheta
    double Dz;     ///< coupling inertia
    double Cz;     ///< coupling Coriolis coefficient
    double Gtheta; ///< input coefficient, = -Dz, < 0 on the domain
    double zeta;   ///< auxiliary combination A5 + A4 A1^2/A2^2 - A3 A1/A2
    double xe;     ///< constraint root used for the evaluation
};

inline ReducedCoeffs reduced_coeffs(const Model& m, double theta) {
    const double xe = solve_xe(m, theta);
    const FullCoeffs c = detail::coeffs_gl(m, theta, xe);
    const double r = c.A1 / c.A2;

    ReducedCoeffs out{};
    out.xe = xe;
    out.zeta = c.A5 + c.A4 * r * r - c.A3 * r;
    out.Dtheta = c.D1 + c.D3 * r * r;
    out.Ctheta = c.D3 * c.A1 / (c.A2 * c.A2) * out.zeta - 0.5 * c.C1 * r;
    out.Btheta = c.B1 - c.B2 * r;
    out.Dz = c.D2;
    out.Cz = -c.C2 * r;
    out.Gtheta = -out.Dz;
    return out;
}

/// Potential energy restricted to the constraint manifold,
/// V_theta(theta) = V(theta, xhat_e(theta)).
inline double v_theta(const Model& m, double theta) {
    const double xe = solve_xe(m, theta);
    return detail::potential_impl(m, theta, xe, [&](auto&& f) {
        return detail::gauss<detail::kArcOrder>(f, 0.0, xe);
    });
}

/// Potential of the virtual cart spring:
/// V_N(theta) = -D3 int_0^theta phi(xhat_e(s)) ds - (rho A0 int_0^L phi) theta.
/// Its derivative is G_theta, so V_N integrates the underactuated passive
/// output. 64-node Gauss-Legendre over [0, theta]; each node costs one
/// constraint root solve.
inline double v_n(const Model& m, double theta) {
    require_theta_domain(theta);
    if (theta == 0.0)
        return 0.0;
    const PhysicalParams& p = m.params();
    const double lo = std::min(0.0, theta);
    const double hi = std::max(0.0, theta);
    double integral = detail::gauss<detail::kVnOrder>(
        [&](double s) { return m.shape(solve_xe(m, s)).phi; }, lo, hi);
    if (theta < 0.0)
        integral = -integral;
    return -p.D3() * integral - p.rho * p.A0 * m.int_phi() * theta;
}

} // namespace flexcart
