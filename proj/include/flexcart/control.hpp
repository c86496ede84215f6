#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flexcart/errors.hpp"
#include "flexcart/reduced_model.hpp"
#include "flexcart/state.hpp"

namespace flexcart {

/// Controller gains. ke, ka and the PID gains are positive; ku is negative
/// and must clear the energy-shaping threshold -Cbound(ka + ke/KD) - eps.
/// delta is the realizability floor for |K(theta)|.
struct Gains {
    double ke = 1.0;
    double ka = 1.0;
    double ku = -1.0;
    double KP = 1.0;
    double KI = 1.0;
    double KD = 1.0;
    double eps = 1e-2;
    double delta = 1e-3;
    double Cbound = 0.0;
};

/// PID integral state. Initialized so that xi(t) = ka z(t) + ku V_N(theta(t))
/// holds identically along the closed loop, which removes the additive
/// constant from the shaped energy.
struct ControllerState {
    double xi = 0.0;
};

inline ControllerState init_controller(const Model& m, const Gains& g,
                                       double theta0, double z0) {
    return {g.ka * z0 + g.ku * v_n(m, theta0)};
}

struct PassiveOutputs {
    double ya;     ///< actuated output zdot
    double yu;     ///< underactuated output G_theta thetadot
    double ytilde; ///< weighted sum ka ya + ku yu
};

inline PassiveOutputs passive_outputs(const ReducedCoeffs& rc, double thetadot,
                                      double zdot, const Gains& g) {
    PassiveOutputs out;
    out.ya = zdot;
    out.yu = rc.Gtheta * thetadot;
    out.ytilde = g.ka * out.ya + g.ku * out.yu;
    return out;
}

inline PassiveOutputs passive_outputs(const Model& m, double theta,
                                      double thetadot, double zdot,
                                      const Gains& g) {
    return passive_outputs(reduced_coeffs(m, theta), thetadot, zdot, g);
}

/// Drift term of d(ytilde)/dt along the reduced dynamics. dG_theta/dtheta is
/// evaluated through the identity dG_theta/dtheta = -C_z rather than by
/// finite differences.
inline double s_function(const PhysicalParams& p, const ReducedCoeffs& rc,
                         double thetadot) {
    const double dG = -rc.Cz;
    return dG * thetadot * thetadot -
           rc.Gtheta / rc.Dtheta *
               (rc.Ctheta * thetadot * thetadot + p.R1 * thetadot + rc.Btheta);
}

inline double s_function(const Model& m, double theta, double thetadot) {
    return s_function(m.params(), reduced_coeffs(m, theta), thetadot);
}

/// Effective input gain of the implementable PID.
inline double k_function(const ReducedCoeffs& rc, const Gains& g) {
    return g.ke + g.KD * (g.ka + g.ku * rc.Gtheta * rc.Gtheta / rc.Dtheta);
}

inline double k_function(const Model& m, double theta, const Gains& g) {
    return k_function(reduced_coeffs(m, theta), g);
}

/// Outer-loop acceleration command
///   u = -[KP ytilde + KI xi + KD ku S(theta, thetadot)] / K(theta).
/// Throws RealizabilityError when |K| < delta.
inline double pid_u(const PhysicalParams& p, const ReducedCoeffs& rc,
                    const ReducedState& s, const Gains& g) {
    const double K = k_function(rc, g);
    if (std::abs(K) < g.delta)
        throw RealizabilityError("pid_u: |K(theta)| below the realizability floor");
    const PassiveOutputs y = passive_outputs(rc, s.thetadot, s.zdot, g);
    const double S = s_function(p, rc, s.thetadot);
    return -(g.KP * y.ytilde + g.KI * s.xi + g.KD * g.ku * S) / K;
}

inline double pid_u(const Model& m, const ReducedState& s, const Gains& g) {
    return pid_u(m.params(), reduced_coeffs(m, s.theta), s, g);
}

/// Inner-loop force that renders the cart a double integrator (zddot = u):
///   tau = R3 zdot + (C_z - (D_z/D_theta) C_theta) thetadot^2
///         - (D_z/D_theta)(R1 thetadot + B_theta) + (D4 - D_z^2/D_theta) u.
inline double pfl_tau(const PhysicalParams& p, const ReducedCoeffs& rc,
                      const ReducedState& s, double u) {
    if (!(rc.Dtheta > 0.0))
        throw DegeneracyError("pfl_tau: D_theta is not positive");
    const double ratio = rc.Dz / rc.Dtheta;
    return p.R3 * s.zdot + (rc.Cz - ratio * rc.Ctheta) * s.thetadot * s.thetadot -
           ratio * p.R1 * s.thetadot - ratio * rc.Btheta +
           (p.D4() - rc.Dz * ratio) * u;
}

inline double pfl_tau(const Model& m, const ReducedState& s, double u) {
    return pfl_tau(m.params(), reduced_coeffs(m, s.theta), s, u);
}

/// Upper bound for D_theta/G_theta^2 over a sample set, with a 1% safety
/// factor. Feeds the ku threshold.
inline double c_bound(const Model& m, std::span<const double> theta_samples) {
    if (theta_samples.empty())
        throw std::invalid_argument("c_bound: empty sample set");
    double worst = 0.0;
    for (double th : theta_samples) {
        const ReducedCoeffs rc = reduced_coeffs(m, th);
        worst = std::max(worst, rc.Dtheta / (rc.Gtheta * rc.Gtheta));
    }
    return 1.01 * worst;
}

/// Shaped kinetic metric of the closed loop.
inline Eigen::Matrix2d dd_matrix(const ReducedCoeffs& rc, const Gains& g) {
    Eigen::Matrix2d D;
    const double G = rc.Gtheta;
    D(0, 0) = g.ke * g.ku * rc.Dtheta + g.ku * g.ku * g.KD * G * G;
    D(0, 1) = g.ka * g.ku * g.KD * G;
    D(1, 0) = D(0, 1);
    D(1, 1) = g.ke * g.ka + g.ka * g.ka * g.KD;
    return D;
}

inline Eigen::Matrix2d dd_matrix(const Model& m, double theta, const Gains& g) {
    return dd_matrix(reduced_coeffs(m, theta), g);
}

/// Shaped potential: the flipped beam potential plus the virtual cart spring.
inline double v_d(const Model& m, double theta, double z, const Gains& g) {
    const double spring = g.ka * z + g.ku * v_n(m, theta);
    return g.ke * g.ku * v_theta(m, theta) + 0.5 * g.KI * spring * spring;
}

/// Shaped total energy H_d = 1/2 (thetadot, zdot) D_d (thetadot, zdot)^T + V_d.
inline double h_d(const Model& m, const ReducedState& s, const Gains& g) {
    const ReducedCoeffs rc = reduced_coeffs(m, s.theta);
    const Eigen::Matrix2d D = dd_matrix(rc, g);
    const Eigen::Vector2d v(s.thetadot, s.zdot);
    return 0.5 * v.dot(D * v) + v_d(m, s.theta, s.z, g);
}

/// One feasibility condition of the gain gate.
struct GainCondition {
    std::string name;
    bool pass;
    double margin; ///< how far inside (positive) or outside (negative) the condition sits
};

struct GainReport {
    std::vector<GainCondition> conditions;

    bool all_pass() const {
        for (const auto& c : conditions)
            if (!c.pass)
                return false;
        return true;
    }
};

/// Check every stability condition on the gains: sign constraints, the ku
/// threshold, realizability of K, positivity of D_d over the domain and
/// positive definiteness of the V_d Hessian at the origin. Failures are
/// report entries, not errors.
inline GainReport check_gains(const Model& m, const Gains& g,
                              std::size_t grid_n = 2001) {
    GainReport rep;

    const double min_positive =
        std::min({g.ke, g.ka, g.KP, g.KI, g.KD});
    rep.conditions.push_back({"positive-gains", min_positive > 0.0, min_positive});
    rep.conditions.push_back({"negative-ku", g.ku < 0.0, -g.ku});

    const double threshold = -g.Cbound * (g.ka + g.ke / g.KD) - g.eps;
    rep.conditions.push_back({"ku-threshold", g.ku <= threshold, threshold - g.ku});

    double min_absK = std::numeric_limits<double>::infinity();
    double min_det = std::numeric_limits<double>::infinity();
    bool dd22 = true;
    for (std::size_t i = 0; i < grid_n; ++i) {
        const double th = -kThetaMax + 2.0 * kThetaMax * static_cast<double>(i) /
                                          static_cast<double>(grid_n - 1);
        const ReducedCoeffs rc = reduced_coeffs(m, th);
        min_absK = std::min(min_absK, std::abs(k_function(rc, g)));
        const Eigen::Matrix2d D = dd_matrix(rc, g);
        min_det = std::min(min_det, D.determinant());
        dd22 = dd22 && D(1, 1) > 0.0;
    }
    rep.conditions.push_back({"realizability", min_absK >= g.delta, min_absK - g.delta});
    rep.conditions.push_back({"dd-positive-definite", dd22 && min_det > 0.0, min_det});

    const double h = 1e-4;
    auto vd = [&](double th, double z) { return v_d(m, th, z, g); };
    const double h11 = (vd(h, 0.0) - 2.0 * vd(0.0, 0.0) + vd(-h, 0.0)) / (h * h);
    const double h22 = (vd(0.0, h) - 2.0 * vd(0.0, 0.0) + vd(0.0, -h)) / (h * h);
    const double h12 =
        (vd(h, h) - vd(h, -h) - vd(-h, h) + vd(-h, -h)) / (4.0 * h * h);
    const double det = h11 * h22 - h12 * h12;
    rep.conditions.push_back(
        {"vd-hessian-positive-definite", h11 > 0.0 && det > 0.0, std::min(h11, det)});

    return rep;
}

} // namespace flexcart
