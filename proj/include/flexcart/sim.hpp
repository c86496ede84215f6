#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "flexcart/control.hpp"
#include "flexcart/presets.hpp"
#include "flexcart/reduced_model.hpp"
#include "flexcart/state.hpp"

namespace flexcart {

/// Which formulation drives the integrator: the Spong normal form fed by the
/// acceleration command u, or the coupled reduced model fed by the force tau.
enum class Form : std::uint8_t { Rel, Srel };

/// Time derivative of the reduced closed-loop state.
struct StateDerivative {
    double theta;
    double z;
    double thetadot;
    double zdot;
    double xi;
};

/// Normal-form dynamics: D_theta thetaddot + C_theta thetadot^2 + R1 thetadot
/// + B_theta = G_theta u, zddot = u, xidot = ytilde.
inline StateDerivative rhs_rel(const PhysicalParams& p, const ReducedCoeffs& rc,
                               const ReducedState& s, double u, const Gains& g) {
    const PassiveOutputs y = passive_outputs(rc, s.thetadot, s.zdot, g);
    StateDerivative d;
    d.theta = s.thetadot;
    d.z = s.zdot;
    d.thetadot = (rc.Gtheta * u - rc.Ctheta * s.thetadot * s.thetadot -
                  p.R1 * s.thetadot - rc.Btheta) /
                 rc.Dtheta;
    d.zdot = u;
    d.xi = y.ytilde;
    return d;
}

inline StateDerivative rhs_rel(const Model& m, const ReducedState& s, double u,
                               const Gains& g) {
    return rhs_rel(m.params(), reduced_coeffs(m, s.theta), s, u, g);
}

/// Coupled reduced dynamics driven by the force tau: solves the 2x2 inertia
/// block [[D_theta, D_z], [D_z, D4]] for the accelerations.
inline StateDerivative rhs_srel(const PhysicalParams& p, const ReducedCoeffs& rc,
                                const ReducedState& s, double tau, const Gains& g) {
    const double det = rc.Dtheta * p.D4() - rc.Dz * rc.Dz;
    if (!(det > 0.0) || !(rc.Dtheta > 0.0))
        throw DegeneracyError("rhs_srel: singular reduced inertia block");
    const double r1 = -rc.Ctheta * s.thetadot * s.thetadot - p.R1 * s.thetadot -
                      rc.Btheta;
    const double r2 = tau - rc.Cz * s.thetadot * s.thetadot - p.R3 * s.zdot;
    const PassiveOutputs y = passive_outputs(rc, s.thetadot, s.zdot, g);
    StateDerivative d;
    d.theta = s.thetadot;
    d.z = s.zdot;
    d.thetadot = (p.D4() * r1 - rc.Dz * r2) / det;
    d.zdot = (rc.Dtheta * r2 - rc.Dz * r1) / det;
    d.xi = y.ytilde;
    return d;
}

inline StateDerivative rhs_srel(const Model& m, const ReducedState& s, double tau,
                                const Gains& g) {
    return rhs_srel(m.params(), reduced_coeffs(m, s.theta), s, tau, g);
}

/// One recorded point of a closed-loop run.
struct Sample {
    double t;
    ReducedState state;
    double u;
    double tau;
    double xe;
    double ya;
    double yu;
    double ytilde;
    double Hd;
    double Hu;
    double Vd;
};

struct Trajectory {
    double h = 0.0;
    Form form = Form::Rel;
    std::vector<Sample> samples;
    bool aborted = false;
    std::string abort_reason;

    const Sample& back() const { return samples.back(); }
};

namespace detail {

using State5 = std::array<double, 5>;

inline ReducedState to_state(const State5& a) {
    return {a[0], a[1], a[2], a[3], a[4]};
}

inline State5 axpy(const State5& y, double c, const StateDerivative& d) {
    return {y[0] + c * d.theta, y[1] + c * d.z, y[2] + c * d.thetadot,
            y[3] + c * d.zdot, y[4] + c * d.xi};
}

/// Closed-loop derivative with the coefficients already at hand.
inline StateDerivative stage_deriv(const Model& m, const Gains& g,
                                   const ReducedCoeffs& rc, const ReducedState& s,
                                   Form form) {
    const double u = pid_u(m.params(), rc, s, g);
    if (form == Form::Rel)
        return rhs_rel(m.params(), rc, s, u, g);
    const double tau = pfl_tau(m.params(), rc, s, u);
    return rhs_srel(m.params(), rc, s, tau, g);
}

/// Closed-loop derivative at one stage state; u and tau via the controller.
inline StateDerivative closed_loop_deriv(const Model& m, const Gains& g,
                                         const State5& y, Form form) {
    const ReducedState s = to_state(y);
    return stage_deriv(m, g, reduced_coeffs(m, s.theta), s, form);
}

/// V_theta at a known constraint root (skips the root solve).
inline double v_theta_at(const Model& m, double theta, double xe) {
    return potential_impl(m, theta, xe, [&](auto&& f) {
        return gauss<kArcOrder>(f, 0.0, xe);
    });
}

} // namespace detail

/// Integrate the closed loop with fixed-step RK4 from the given initial
/// condition. The PID integral starts at ka z(0) + ku V_N(theta(0)). Leaving
/// the admissible theta domain aborts the run and returns the partial
/// trajectory; a realizability failure of the controller propagates.
inline Trajectory integrate_closed_loop(const Model& m, const InitialCondition& ics,
                                        const Gains& g, double T, double h,
                                        Form form = Form::Rel) {
    if (!(T > 0.0) || !(h > 0.0))
        throw std::invalid_argument("integrate_closed_loop: need T > 0 and h > 0");
    const auto n = static_cast<std::size_t>(std::llround(T / h));
    if (n == 0)
        throw std::invalid_argument("integrate_closed_loop: horizon shorter than one step");

    Trajectory traj;
    traj.h = h;
    traj.form = form;
    traj.samples.reserve(n + 1);

    const ControllerState c0 = init_controller(m, g, ics.theta, ics.z);
    detail::State5 y{ics.theta, ics.z, ics.thetadot, ics.zdot, c0.xi};

    const PhysicalParams& p = m.params();
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = h * static_cast<double>(k);
        const ReducedState s = detail::to_state(y);
        if (!in_theta_domain(s.theta) || !std::isfinite(s.theta)) {
            traj.aborted = true;
            traj.abort_reason =
                "theta left the admissible domain at t = " + std::to_string(t);
            break;
        }

        const ReducedCoeffs rc = reduced_coeffs(m, s.theta);
        Sample smp;
        smp.t = t;
        smp.state = s;
        smp.xe = rc.xe;
        smp.u = pid_u(p, rc, s, g);
        smp.tau = pfl_tau(p, rc, s, smp.u);
        const PassiveOutputs y_out = passive_outputs(rc, s.thetadot, s.zdot, g);
        smp.ya = y_out.ya;
        smp.yu = y_out.yu;
        smp.ytilde = y_out.ytilde;
        const double vth = detail::v_theta_at(m, s.theta, rc.xe);
        smp.Hu = 0.5 * rc.Dtheta * s.thetadot * s.thetadot + vth;
        // xi == ka z + ku V_N(theta) by the integral-state initialization, so
        // the virtual-spring term of V_d is xi itself.
        smp.Vd = g.ke * g.ku * vth + 0.5 * g.KI * s.xi * s.xi;
        const Eigen::Matrix2d Dd = dd_matrix(rc, g);
        const Eigen::Vector2d v(s.thetadot, s.zdot);
        smp.Hd = 0.5 * v.dot(Dd * v) + smp.Vd;
        traj.samples.push_back(smp);

        if (k == n)
            break;
        try {
            const StateDerivative k1 = detail::stage_deriv(m, g, rc, s, form);
            const StateDerivative k2 =
                detail::closed_loop_deriv(m, g, detail::axpy(y, 0.5 * h, k1), form);
            const StateDerivative k3 =
                detail::closed_loop_deriv(m, g, detail::axpy(y, 0.5 * h, k2), form);
            const StateDerivative k4 =
                detail::closed_loop_deriv(m, g, detail::axpy(y, h, k3), form);
            y = {y[0] + h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
                 y[1] + h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
                 y[2] + h / 6.0 * (k1.thetadot + 2.0 * k2.thetadot + 2.0 * k3.thetadot + k4.thetadot),
                 y[3] + h / 6.0 * (k1.zdot + 2.0 * k2.zdot + 2.0 * k3.zdot + k4.zdot),
                 y[4] + h / 6.0 * (k1.xi + 2.0 * k2.xi + 2.0 * k3.xi + k4.xi)};
        } catch (const std::domain_error&) {
            traj.aborted = true;
            traj.abort_reason =
                "theta left the admissible domain during a stage at t = " +
                std::to_string(t);
            break;
        }
    }
    return traj;
}

namespace detail {
// forward used above
} // namespace detail

/// Maximum state deviation between the two closed-loop formulations run from
/// the same initial condition. The formulations are algebraically identical,
/// so the deviation measures accumulated arithmetic noise.
inline double cross_check_pfl(const Model& m, const InitialCondition& ics,
                              const Gains& g, double T, double h) {
    const Trajectory a = integrate_closed_loop(m, ics, g, T, h, Form::Rel);
    const Trajectory b = integrate_closed_loop(m, ics, g, T, h, Form::Srel);
    const std::size_t n = std::min(a.samples.size(), b.samples.size());
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const ReducedState& x = a.samples[i].state;
        const ReducedState& y = b.samples[i].state;
        dev = std::max({dev, std::abs(x.theta - y.theta), std::abs(x.z - y.z),
                        std::abs(x.thetadot - y.thetadot),
                        std::abs(x.zdot - y.zdot), std::abs(x.xi - y.xi)});
    }
    return dev;
}

} // namespace flexcart
