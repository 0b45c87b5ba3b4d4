#pragma once

// Steady potential flow with free surfaces.
//
// Hopkinson drop: a vortex dipole plus vortex of relative strength m at the
// same interior point drives a two-dimensional drop whose boundary is the
// rational curve
//
//   x = -2(1+m) zeta (3 zeta^4 - (1+g^2) zeta^2 + 3 g^2) / (3 (zeta^2+1)^3)
//   y =  2(1+m) (6 zeta^4 + 3(1-g^2) zeta^2 + 1 + g^2) / (3 (zeta^2+1)^3)
//
// with g = sqrt((1-m)/(1+m)). Cusps sit at zeta = +-g; near m = 1 the top of
// the drop is a swallowtail, and the self-intersection of its loop
// disappears below a critical m.
//
// Craya-Sautreaux ridge flow: the exact opening-angle-2pi/3 solution
// dz/dl = -i (2/3)^{1/3} (1-l) / (l^{1/3} (1+l)^{4/3}), l = exp(-i theta),
// integrated along the unit circle; its crest is a 2/3 cusp.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "cusplab/core.hpp"
#include "cusplab/curve.hpp"
#include "cusplab/normal_form.hpp"
#include "cusplab/numerics.hpp"

namespace cusplab {
namespace potential_flow {

struct HopkinsonDrop {
    double m = 0;
    double gamma_m = 1;  // sqrt((1-m)/(1+m))
};

inline HopkinsonDrop make_drop(double m) {
    if (!(m >= 0 && m <= 1))
        throw invalid_input("hopkinson: only 0 <= m <= 1 is supported");
    return {m, std::sqrt((1 - m) / (1 + m))};
}

inline Vec2 drop_point(const HopkinsonDrop& d, double zeta) {
    const double g2 = d.gamma_m * d.gamma_m;
    const double z2 = zeta * zeta;
    const double den = 3 * std::pow(z2 + 1, 3);
    const double pre = 2 * (1 + d.m);
    return {-pre * zeta * (3 * z2 * z2 - (1 + g2) * z2 + 3 * g2) / den,
            pre * (6 * z2 * z2 + 3 * (1 - g2) * z2 + 1 + g2) / den};
}

/// y at the top of the drop (zeta = 0): 2(1+m)(1+g^2)/3, where the numerator
/// (1+m)(1+g^2) = 2 identically, so the apex sits at 4/3 for every m.
inline double drop_apex_y(double m) {
    const double g2 = (1 - m) / (1 + m);
    return 2 * (1 + m) * (1 + g2) / 3;
}

/// Drop boundary sampled directly in zeta (open arc; used for intersection
/// scans where uniform zeta resolution matters).
inline ParametricCurve drop_shape_zeta(double m, const std::vector<double>& zetas) {
    const auto d = make_drop(m);
    ParametricCurve c;
    c.params = zetas;
    c.points.reserve(zetas.size());
    for (double z : zetas) c.points.push_back(drop_point(d, z));
    c.label = m;
    return c;
}

/// Full closed drop boundary via zeta = tan(vartheta/2), vartheta in
/// [-pi, pi]; both ends map to the origin, closing the curve through
/// zeta = +-infinity.
inline ParametricCurve drop_shape(double m, std::size_t samples) {
    const auto d = make_drop(m);
    if (samples < 16) throw invalid_input("drop_shape: too few samples");
    ParametricCurve c;
    c.params.reserve(samples);
    c.points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double vt = -M_PI + 2 * M_PI * static_cast<double>(i) /
                                      static_cast<double>(samples - 1);
        c.params.push_back(vt);
        if (i == 0 || i + 1 == samples) {
            c.points.push_back({0, 0});
        } else {
            c.points.push_back(drop_point(d, std::tan(0.5 * vt)));
        }
    }
    c.label = m;
    return c;
}

/// Swallowtail normal form of the near-transition expansion
/// x = 2 eps zeta + 4 zeta^3/3, y - y_apex = 4 eps zeta^2 + 4 zeta^4 with
/// eps = m - 1: theta = 4 zeta gives eps_s = eps/2 and a = 1/16.
inline NormalForm drop_local_form(double m) {
    if (!(std::abs(m - 1) <= 0.1))
        throw invalid_input("drop_local_form: expansion valid for |m - 1| <= 0.1");
    NormalForm nf;
    nf.kind = FormKind::swallowtail;
    nf.epsilon = 0.5 * (m - 1);
    nf.a = 1.0 / 16.0;
    nf.rotation = 0;
    nf.translation = {0, drop_apex_y(m)};
    return nf;
}

/// The local expansion sampled directly in zeta (absolute coordinates).
inline ParametricCurve drop_local_curve(double m, const std::vector<double>& zetas) {
    const double eps = m - 1;
    const double y0 = drop_apex_y(m);
    ParametricCurve c;
    c.params = zetas;
    c.points.reserve(zetas.size());
    for (double z : zetas)
        c.points.push_back({2 * eps * z + 4 * z * z * z / 3,
                            y0 + 4 * eps * z * z + 4 * z * z * z * z});
    c.label = m;
    return c;
}

/// Critical vortex strength below which the drop stops self-intersecting,
/// located by bisection of the find_self_intersections predicate on a dense
/// uniform-zeta sampling of the drop top.
inline double critical_m(double tol = 1e-5, std::size_t samples = 32001) {
    auto intersects = [&](double m) {
        std::vector<double> zetas(samples);
        for (std::size_t i = 0; i < samples; ++i)
            zetas[i] = -4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(samples - 1);
        return !find_self_intersections(drop_shape_zeta(m, zetas)).empty();
    };
    double lo = 0.90, hi = 0.99;
    if (intersects(lo) || !intersects(hi))
        throw numeric_failure("critical_m: bracket failure");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (intersects(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

struct CrayaShape {
    std::vector<double> thetas;
    ParametricCurve curve;
};

/// Cusped ridge flow: z(theta) by adaptive quadrature of dz/dl * dl/dtheta
/// along l = exp(-i theta) from the crest at theta = 0. The endpoint
/// singularity at l = -1 is truncated at |theta| <= pi - delta.
inline CrayaShape craya_shape(std::size_t samples, double delta = 1e-3, double quad_tol = 1e-10) {
    if (samples < 9) throw invalid_input("craya_shape: too few samples");
    if (samples % 2 == 0) ++samples;  // keep theta = 0 on the grid
    using cplx = std::complex<double>;
    const cplx I{0, 1};
    const double pre = std::pow(2.0 / 3.0, 1.0 / 3.0);
    auto integrand = [&](double th) -> cplx {
        const cplx l = std::exp(-I * th);
        const cplx dzdl = -I * pre * (1.0 - l) / (std::pow(l, 1.0 / 3.0) *
                                                  std::pow(1.0 + l, 4.0 / 3.0));
        const cplx dldth = -I * l;
        return dzdl * dldth;
    };

    CrayaShape out;
    out.thetas = linspace(-(M_PI - delta), M_PI - delta, samples);
    out.curve.params = out.thetas;
    out.curve.points.resize(samples);

    const std::size_t mid = samples / 2;  // theta = 0, the crest at the origin
    out.curve.points[mid] = {0, 0};
    cplx z = 0;
    for (std::size_t i = mid; i + 1 < samples; ++i) {
        z += integrate<cplx>(integrand, out.thetas[i], out.thetas[i + 1], quad_tol);
        out.curve.points[i + 1] = {z.real(), z.imag()};
    }
    z = 0;
    for (std::size_t i = mid; i > 0; --i) {
        z += integrate<cplx>(integrand, out.thetas[i], out.thetas[i - 1], quad_tol);
        out.curve.points[i - 1] = {z.real(), z.imag()};
    }
    return out;
}

/// Leading local behavior at the crest: x = -(3^{2/3}/36) theta^3,
/// y = -(3^{2/3}/12) theta^2.
inline Vec2 craya_local(double theta) {
    const double p = std::pow(3.0, 2.0 / 3.0);
    return {-p / 36 * theta * theta * theta, -p / 12 * theta * theta};
}

}  // namespace potential_flow
}  // namespace cusplab
