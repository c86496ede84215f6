#pragma once

#include <stdexcept>
#include <string>

namespace flexcart {

/// Admissible modal-amplitude domain: |theta| <= kThetaMax. Chosen so the
/// constraint root stays well inside (0, L] and 1 + [theta*phi']^2 remains
/// well conditioned; covers every stock initial condition with margin.
inline constexpr double kThetaMax = 0.3;

/// Default absolute tolerance for the adaptive quadrature.
inline constexpr double kQuadTol = 1e-10;

/// Tolerance for the arc-length constraint path (root residuals must reach
/// 1e-12, so the constraint integral is held well below that).
inline constexpr double kGammaTol = 1e-14;

/// Physical constants of the cart / flexible-beam rig. Defaults are the
/// stock desk-scale parameter set.
struct PhysicalParams {
    double A0 = 8e-6;        ///< beam cross-section area [m^2]
    double E = 9e10;         ///< Young's modulus [N/m^2]
    double g = 9.81;         ///< gravity [m/s^2]
    double I = 1.066e-13;    ///< second moment of area [kg m^2]
    double L = 0.305;        ///< beam length [m]
    double M = 2.75e-2;      ///< tip mass [kg]
    double Mc = 0.1;         ///< cart mass [kg]
    double eta = 1.1741;     ///< mode frequency constant [-]
    double gamma_c = 0.9049; ///< mode shape constant [-]
    double rho = 8400.0;     ///< beam density [kg/m^3]
    double R1 = 9.86e-4;     ///< viscous friction at the beam base [kg/s]
    double R3 = 7.69;        ///< viscous friction cart/rail [kg/s]

    /// Tip mass as it enters the inertia/potential expressions.
    double D3() const noexcept { return M; }
    /// Total translating mass: tip + cart + beam.
    double D4() const noexcept { return M + Mc + rho * A0 * L; }
    /// Bending stiffness E*I.
    double EI() const noexcept { return E * I; }
};

inline void validate(const PhysicalParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::domain_error(std::string(name) + " must be strictly positive");
    };
    positive(p.A0, "A0");
    positive(p.E, "E");
    positive(p.g, "g");
    positive(p.I, "I");
    positive(p.L, "L");
    positive(p.M, "M");
    positive(p.Mc, "Mc");
    positive(p.eta, "eta");
    positive(p.gamma_c, "gamma");
    positive(p.rho, "rho");
    if (p.R1 < 0.0 || p.R3 < 0.0)
        throw std::domain_error("friction coefficients must be non-negative");
}

inline bool in_theta_domain(double theta) noexcept {
    return theta >= -kThetaMax && theta <= kThetaMax;
}

inline void require_theta_domain(double theta) {
    if (!in_theta_domain(theta))
        throw std::domain_error("theta outside the admissible domain [-0.3, 0.3]");
}

} // namespace flexcart
