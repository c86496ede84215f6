#pragma once

namespace flexcart {

/// State of the reduced closed loop: beam modal amplitude, cart position,
/// their rates and the PID integral state.
struct ReducedState {
    double theta = 0.0;
    double z = 0.0;
    double thetadot = 0.0;
    double zdot = 0.0;
    double xi = 0.0;
};

} // namespace flexcart
