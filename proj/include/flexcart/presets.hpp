#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "flexcart/control.hpp"
#include "flexcart/model.hpp"

namespace flexcart {

/// Initial condition of a run (the PID integral state is derived at
/// simulation start, not part of the preset).
struct InitialCondition {
    double theta = 0.0;
    double z = 0.0;
    double thetadot = 0.0;
    double zdot = 0.0;
};

/// Stock initial conditions.
inline InitialCondition ics_preset(const std::string& name) {
    if (name == "ICs1")
        return {-0.08, -0.1, 0.0, 0.0};
    if (name == "ICs2")
        return {0.134, 0.0, 0.0, 0.0};
    if (name == "ICs3")
        return {0.0, -0.15, 0.0, 0.0};
    if (name == "origin")
        return {0.0, 0.0, 0.0, 0.0};
    throw std::invalid_argument("unknown initial-condition preset: " + name);
}

/// Stock gain sets. Cbound defaults to the near-origin bound
/// 1.01 * D_theta(0)/G_theta(0)^2, which all stock sets were tuned against.
inline Gains gains_preset(const Model& m, const std::string& name) {
    Gains g;
    if (name == "Set1") {
        g.ke = 1.0; g.ka = 0.5; g.ku = -50.77; g.KD = 1.47; g.KP = 1.94; g.KI = 0.35;
    } else if (name == "Set2") {
        g.ke = 1.0; g.ka = 1.0; g.ku = -61.37; g.KD = 1.28; g.KP = 1.92; g.KI = 0.52;
    } else if (name == "Set3") {
        g.ke = 1.0; g.ka = 1.0; g.ku = -43.04; g.KD = 2.18; g.KP = 3.66; g.KI = 1.35;
    } else if (name == "Exp") {
        g.ke = 1.0; g.ka = 1.0; g.ku = -47.5; g.KD = 1.9; g.KP = 3.0; g.KI = 0.9;
    } else {
        throw std::invalid_argument("unknown gain preset: " + name);
    }
    const std::array<double, 1> origin{0.0};
    g.Cbound = c_bound(m, origin);
    return g;
}

inline constexpr std::array<const char*, 4> kGainPresetNames{"Set1", "Set2", "Set3", "Exp"};
inline constexpr std::array<const char*, 3> kIcsPresetNames{"ICs1", "ICs2", "ICs3"};

} // namespace flexcart
