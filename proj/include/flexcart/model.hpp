#pragma once

#include "flexcart/mode_shape.hpp"
#include "flexcart/params.hpp"
#include "flexcart/quadrature.hpp"

namespace flexcart {

/// Immutable model context: validated physical parameters plus the two
/// whole-beam mode integrals that appear in D1 and D2 (both run over the
/// full length, so they are configuration independent).
class Model {
public:
    explicit Model(const PhysicalParams& params = PhysicalParams{}) : p_(params) {
        validate(p_);
        int_phi_ = integrate(
            [this](double x) { return mode_shape(p_, x).phi; }, 0.0, p_.L, 1e-12);
        int_phi2_ = integrate(
            [this](double x) {
                const double v = mode_shape(p_, x).phi;
                return v * v;
            },
            0.0, p_.L, 1e-12);
    }

    const PhysicalParams& params() const noexcept { return p_; }
    double int_phi() const noexcept { return int_phi_; }   ///< int_0^L phi dx
    double int_phi2() const noexcept { return int_phi2_; } ///< int_0^L phi^2 dx

    ModeShapeEval shape(double x) const { return mode_shape(p_, x); }

private:
    PhysicalParams p_;
    double int_phi_ = 0.0;
    double int_phi2_ = 0.0;
};

} // namespace flexcart
