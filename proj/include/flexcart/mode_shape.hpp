#pragma once

#include <cmath>
#include <stdexcept>

#include "flexcart/params.hpp"

namespace flexcart {

/// Clamped-free mode shape phi and its first two spatial derivatives at one
/// material point. phi(0) = dphi(0) = 0 analytically.
struct ModeShapeEval {
    double phi;
    double dphi;
    double ddphi;
};

/// Evaluate phi(x) = cosh(kx) - cos(kx) + gamma [sin(kx) - sinh(kx)],
/// k = eta/L, together with phi' and phi''. x must lie in [0, L].
inline ModeShapeEval mode_shape(const PhysicalParams& p, double x) {
    if (x < 0.0 || x > p.L)
        throw std::domain_error("mode_shape: x outside [0, L]");
    const double k = p.eta / p.L;
    const double t = k * x;
    const double e = std::exp(t);
    const double ie = 1.0 / e;
    const double ch = 0.5 * (e + ie);
    const double sh = 0.5 * (e - ie);
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double g = p.gamma_c;
    ModeShapeEval out;
    out.phi = ch - c + g * (s - sh);
    out.dphi = k * (sh + s + g * (c - ch));
    out.ddphi = k * k * (ch + c - g * (s + sh));
    return out;
}

} // namespace flexcart
