#pragma once

// Oil-water interface in a porous medium at the critical withdrawal rate:
// only the local form near the tip is materialized,
//
//   x = (2A/3)(sigma + 1)^{3/2},   y linear in (sigma + 1) with unit slope,
//
// mirrored in x for the symmetric interface. This is the 2/3 cusp.

#include <cmath>
#include <vector>

#include "cusplab/core.hpp"
#include "cusplab/curve.hpp"

namespace cusplab {
namespace porous {

inline double x_of_sigma(double A, double sigma) {
    if (!(A > 0)) throw invalid_input("porous: A must be positive");
    if (sigma < -1) throw invalid_input("porous: sigma must be >= -1");
    return 2 * A / 3 * std::pow(sigma + 1, 1.5);
}

/// Both branches of the critical interface near the tip, parametrized by the
/// signed coordinate u with |u| = sigma + 1: the input grid covers one
/// branch, the mirrored branch is prepended.
inline ParametricCurve local_cusp_shape(double A, const std::vector<double>& sigmas) {
    if (!(A > 0)) throw invalid_input("porous: A must be positive");
    if (sigmas.size() < 2) throw invalid_input("porous: need at least two sigma samples");
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (sigmas[i] < -1) throw invalid_input("porous: sigma must be >= -1");
        if (i > 0 && sigmas[i] <= sigmas[i - 1])
            throw invalid_input("porous: sigma grid must be strictly increasing");
    }
    ParametricCurve c;
    const std::size_t n = sigmas.size();
    const bool has_tip = sigmas.front() == -1.0;
    const std::size_t total = has_tip ? 2 * n - 1 : 2 * n;
    c.params.reserve(total);
    c.points.reserve(total);
    for (std::size_t i = n; i-- > (has_tip ? 1 : 0);) {
        const double u = sigmas[i] + 1;
        c.params.push_back(-u);
        c.points.push_back({-x_of_sigma(A, sigmas[i]), u});
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double u = sigmas[i] + 1;
        c.params.push_back(u);
        c.points.push_back({x_of_sigma(A, sigmas[i]), u});
    }
    return c;
}

}  // namespace porous
}  // namespace cusplab
