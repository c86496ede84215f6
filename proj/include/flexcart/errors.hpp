#pragma once

#include <stdexcept>
#include <string>

namespace flexcart {

/// Quadrature failed to meet the requested tolerance within the subdivision
/// budget. Carries the best estimate accumulated so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

/// |K(theta)| dropped below the realizability floor delta; the PID outer
/// loop is not implementable at this state.
class RealizabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inertia degenerated (D_theta <= 0 or singular 2x2 block). Signals bad
/// physical parameters, never expected on the admissible domain.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative numeric procedure (root refinement, eigensolve) failed to
/// converge to its accuracy target.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace flexcart
