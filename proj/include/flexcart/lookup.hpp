#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "flexcart/reduced_model.hpp"

namespace flexcart {

/// One tabulated record of the reduced model at a grid node.
struct LookupNode {
    double xe;
    ReducedCoeffs coeffs;
    double v_theta;
    double v_n;
    double dGtheta; ///< dG_theta/dtheta = -C_z
};

/// Uniform-grid table of the reduced model over the admissible domain with
/// local cubic interpolation. Optional fast path; every consumer can also
/// evaluate the direct functions.
struct LookupTable {
    double theta0 = 0.0;
    double dtheta = 0.0;
    std::vector<LookupNode> nodes;

    double theta_at(std::size_t i) const { return theta0 + dtheta * static_cast<double>(i); }
};

/// Build an n-node table over [-kThetaMax, kThetaMax]. V_N is accumulated
/// interval by interval from the node nearest zero, which matches the direct
/// quadrature to machine precision at a fraction of its cost.
inline LookupTable build_lookup(const Model& m, std::size_t n_nodes) {
    if (n_nodes < 2)
        throw std::invalid_argument("build_lookup: need at least 2 nodes");
    LookupTable t;
    t.theta0 = -kThetaMax;
    t.dtheta = 2.0 * kThetaMax / static_cast<double>(n_nodes - 1);
    t.nodes.resize(n_nodes);

    for (std::size_t i = 0; i < n_nodes; ++i) {
        const double th = t.theta_at(i);
        LookupNode& node = t.nodes[i];
        node.coeffs = reduced_coeffs(m, th);
        node.xe = node.coeffs.xe;
        node.v_theta = v_theta(m, th);
        node.dGtheta = -node.coeffs.Cz;
    }

    // Accumulate V_N outward from the node nearest theta = 0.
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n_nodes; ++i)
        if (std::abs(t.theta_at(i)) < std::abs(t.theta_at(i0)))
            i0 = i;
    const PhysicalParams& p = m.params();
    const double slope = p.rho * p.A0 * m.int_phi();
    auto segment = [&](double a, double b) {
        return -p.D3() * detail::gauss<8>(
                   [&](double s) { return m.shape(solve_xe(m, s)).phi; }, a, b) -
               slope * (b - a);
    };
    t.nodes[i0].v_n = v_n(m, t.theta_at(i0));
    for (std::size_t i = i0 + 1; i < n_nodes; ++i)
        t.nodes[i].v_n = t.nodes[i - 1].v_n + segment(t.theta_at(i - 1), t.theta_at(i));
    for (std::size_t i = i0; i > 0; --i)
        t.nodes[i - 1].v_n = t.nodes[i].v_n - segment(t.theta_at(i - 1), t.theta_at(i));
    return t;
}

namespace detail {

/// Four-point Lagrange interpolation; reproduces nodal values exactly.
inline double cubic(const double* y, double s) {
    // s in [0, 1] between y[1] and y[2]
    const double c0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double c1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double c2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double c3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return c0 * y[0] + c1 * y[1] + c2 * y[2] + c3 * y[3];
}

} // namespace detail

/// Interpolated record at theta. theta must lie inside the table span.
inline LookupNode eval_lookup(const LookupTable& t, double theta) {
    const std::size_t n = t.nodes.size();
    if (n < 2)
        throw std::invalid_argument("eval_lookup: empty table");
    const double span = t.dtheta * static_cast<double>(n - 1);
    const double rel = (theta - t.theta0) / t.dtheta;
    if (theta < t.theta0 || theta > t.theta0 + span)
        throw std::domain_error("eval_lookup: theta outside the table grid");

    std::size_t i = static_cast<std::size_t>(rel);
    if (i >= n - 1)
        i = n - 2;
    // Choose the 4-node stencil around interval [i, i+1], clamped at edges.
    std::size_t j = (i == 0) ? 0 : i - 1;
    if (j + 3 >= n)
        j = n - 4;
    const double s = rel - static_cast<double>(j) - 1.0;

    auto interp = [&](auto&& field) {
        double y[4];
        for (int k = 0; k < 4; ++k)
            y[k] = field(t.nodes[j + static_cast<std::size_t>(k)]);
        return detail::cubic(y, s);
    };

    LookupNode out;
    out.xe = interp([](const LookupNode& nd) { return nd.xe; });
    out.v_theta = interp([](const LookupNode& nd) { return nd.v_theta; });
    out.v_n = interp([](const LookupNode& nd) { return nd.v_n; });
    out.dGtheta = interp([](const LookupNode& nd) { return nd.dGtheta; });
    out.coeffs.Dtheta = interp([](const LookupNode& nd) { return nd.coeffs.Dtheta; });
    out.coeffs.Ctheta = interp([](const LookupNode& nd) { return nd.coeffs.Ctheta; });
    out.coeffs.Btheta = interp([](const LookupNode& nd) { return nd.coeffs.Btheta; });
    out.coeffs.Dz = interp([](const LookupNode& nd) { return nd.coeffs.Dz; });
    out.coeffs.Cz = interp([](const LookupNode& nd) { return nd.coeffs.Cz; });
    out.coeffs.Gtheta = interp([](const LookupNode& nd) { return nd.coeffs.Gtheta; });
    out.coeffs.zeta = interp([](const LookupNode& nd) { return nd.coeffs.zeta; });
    out.coeffs.xe = out.xe;
    return out;
}

} // namespace flexcart
