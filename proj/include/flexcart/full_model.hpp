#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "flexcart/model.hpp"
#include "flexcart/quadrature.hpp"

namespace flexcart {

/// Scalar coefficient functions of the full 3-coordinate constrained model:
/// constraint gradient terms A1..A5, potential gradient B1/B2, Coriolis
/// scalars C1/C2 and inertia scalars D1..D4, all evaluated at one (theta, xe).
struct FullCoeffs {
    double A1, A2, A3, A4, A5;
    double B1, B2;
    double C1, C2;
    double D1, D2, D3, D4;
};

namespace detail {

inline void require_full_domain(const Model& m, double theta, double xe) {
    require_theta_domain(theta);
    if (!(xe > 0.0) || xe > m.params().L)
        throw std::domain_error("xe outside (0, L]");
}

/// Arc-length integrand sqrt(1 + [theta phi'(x)]^2).
inline double arc_integrand(const Model& m, double theta, double x) {
    const double tp = theta * m.shape(x).dphi;
    return std::sqrt(1.0 + tp * tp);
}

/// Coefficient assembly shared by the adaptive and Gauss-Legendre paths;
/// Quad must integrate a callable over [0, xe].
template <class Quad>
FullCoeffs coeffs_impl(const Model& m, double theta, double xe, Quad&& quad) {
    const PhysicalParams& p = m.params();
    const ModeShapeEval end = m.shape(xe);
    const double tpe = theta * end.dphi;
    const double root_e = std::sqrt(1.0 + tpe * tpe);

    FullCoeffs c{};
    c.A1 = quad([&](double x) {
        const double dp = m.shape(x).dphi;
        const double tp = theta * dp;
        return theta * dp * dp / std::sqrt(1.0 + tp * tp);
    });
    c.A2 = root_e;
    c.A3 = 2.0 * theta * end.dphi * end.dphi / root_e;
    c.A4 = theta * theta * end.dphi * end.ddphi / root_e;
    c.A5 = quad([&](double x) {
        const double dp = m.shape(x).dphi;
        const double q = 1.0 + theta * dp * theta * dp;
        return dp * dp / (q * std::sqrt(q));
    });
    c.B1 = p.EI() * quad([&](double x) {
        const ModeShapeEval s = m.shape(x);
        const double tp = theta * s.dphi;
        const double q = 1.0 + tp * tp;
        const double q2 = q * q;
        return theta * s.ddphi * s.ddphi * (1.0 - 2.0 * tp * tp) / (q2 * q2);
    });
    {
        const double q = 1.0 + tpe * tpe;
        const double te = theta * end.ddphi;
        c.B2 = 0.5 * p.EI() * te * te / (q * q * q) + p.D3() * p.g;
    }
    c.C1 = 2.0 * p.D3() * end.phi * end.dphi;
    c.C2 = p.D3() * end.dphi;
    c.D1 = p.rho * p.A0 * m.int_phi2() + p.D3() * end.phi * end.phi;
    c.D2 = p.D3() * end.phi + p.rho * p.A0 * m.int_phi();
    c.D3 = p.D3();
    c.D4 = p.D4();
    return c;
}

template <class Quad>
double potential_impl(const Model& m, double theta, double xe, Quad&& quad) {
    const PhysicalParams& p = m.params();
    const double bend = 0.5 * p.EI() * quad([&](double x) {
        const ModeShapeEval s = m.shape(x);
        const double tp = theta * s.dphi;
        const double q = 1.0 + tp * tp;
        const double t2 = theta * s.ddphi;
        return t2 * t2 / (q * q * q);
    });
    return bend - p.D3() * p.g * (p.L - xe);
}

} // namespace detail

/// Constant-length constraint Gamma(theta, xe): arc length of the deflected
/// beam over [0, xe] minus L. Zero exactly on the constraint manifold.
inline double gamma_constraint(const Model& m, double theta, double xe,
                               double tol = kGammaTol) {
    detail::require_full_domain(m, theta, xe);
    return integrate([&](double x) { return detail::arc_integrand(m, theta, x); },
                     0.0, xe, tol) -
           m.params().L;
}

/// All thirteen coefficient scalars at (theta, xe), integrals by adaptive
/// quadrature at the module tolerance.
inline FullCoeffs full_coeffs(const Model& m, double theta, double xe,
                              double tol = kQuadTol) {
    detail::require_full_domain(m, theta, xe);
    return detail::coeffs_impl(m, theta, xe, [&](auto&& f) {
        return integrate(f, 0.0, xe, tol);
    });
}

/// Potential energy V(theta, xe): bending energy of the deflected beam plus
/// the tip-mass gravity term (zero at the upright configuration).
inline double potential_V(const Model& m, double theta, double xe,
                          double tol = kQuadTol) {
    detail::require_full_domain(m, theta, xe);
    return detail::potential_impl(m, theta, xe, [&](auto&& f) {
        return integrate(f, 0.0, xe, tol);
    });
}

/// Full-model matrices at configuration q = (theta, xe, z) with velocity
/// qdot: inertia D, Coriolis C, conservative force B = grad V and constraint
/// gradient A = grad Gamma.
struct FullMatrices {
    Eigen::Matrix3d D;
    Eigen::Matrix3d C;
    Eigen::Vector3d B;
    Eigen::Vector3d A;
};

inline FullMatrices full_matrices(const Model& m, const Eigen::Vector3d& q,
                                  const Eigen::Vector3d& qdot,
                                  double tol = kQuadTol) {
    const FullCoeffs c = full_coeffs(m, q[0], q[1], tol);
    const double thetadot = qdot[0];
    const double xedot = qdot[1];
    const double zdot = qdot[2];
    const double delta = 0.5 * c.C1 * thetadot + 0.5 * c.C2 * zdot;

    FullMatrices out;
    out.D << c.D1, 0.0, c.D2,
             0.0, c.D3, 0.0,
             c.D2, 0.0, c.D4;
    out.C << 0.5 * c.C1 * xedot, delta, 0.5 * c.C2 * xedot,
             -delta, 0.0, -0.5 * c.C2 * thetadot,
             0.5 * c.C2 * xedot, 0.5 * c.C2 * thetadot, 0.0;
    out.B << c.B1, c.B2, 0.0;
    out.A << c.A1, c.A2, 0.0;
    return out;
}

} // namespace flexcart
