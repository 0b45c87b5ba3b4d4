#pragma once

// Constant-normal-velocity wavefront propagation from even polynomial initial
// data. The explicit ray solution
//
//   x = x0 - h0'(x0) t / sqrt(1 + h0'^2),   h = h0(x0) + t / sqrt(1 + h0'^2)
//
// is valid before and after focusing, so fronts stay parametric in x0.
// Focusing happens first at the curvature maximum; near it the front is a
// swallowtail with gamma = 1 and the caustic is a 2/3 cusp.

#include <cmath>
#include <cstddef>
#include <vector>

#include "cusplab/core.hpp"
#include "cusplab/curve.hpp"
#include "cusplab/normal_form.hpp"
#include "cusplab/numerics.hpp"

namespace cusplab {
namespace eikonal {

/// Initial front h0(x0) = a1 x0^2 + a2 x0^4 (+ optional higher even terms).
struct InitialFront {
    double a1 = 1;
    double a2 = 0;
    std::vector<double> higher;  // coefficients of x0^6, x0^8, ...

    void validate() const {
        if (!(a1 > 0)) throw invalid_input("eikonal: a1 must be positive");
    }

    double h0(double x) const {
        const double x2 = x * x;
        double v = a1 * x2 + a2 * x2 * x2;
        double p = x2 * x2 * x2;
        for (double c : higher) {
            v += c * p;
            p *= x2;
        }
        return v;
    }
    double h0p(double x) const {
        const double x2 = x * x;
        double v = 2 * a1 * x + 4 * a2 * x2 * x;
        double p = x2 * x2 * x;
        double k = 6;
        for (double c : higher) {
            v += k * c * p;
            p *= x2;
            k += 2;
        }
        return v;
    }
    double h0pp(double x) const {
        const double x2 = x * x;
        double v = 2 * a1 + 12 * a2 * x2;
        double p = x2 * x2;
        double k = 6;
        for (double c : higher) {
            v += k * (k - 1) * c * p;
            p *= x2;
            k += 2;
        }
        return v;
    }
};

/// One point of the propagated front along the ray launched at x0.
inline Vec2 front_point(const InitialFront& f, double x0, double t) {
    const double hp = f.h0p(x0);
    const double s = std::sqrt(1 + hp * hp);
    return {x0 - hp * t / s, f.h0(x0) + t / s};
}

/// Front at time t, parametric in x0 (multivalued graphs are fine).
inline ParametricCurve propagate_front(const InitialFront& f, double t,
                                       const std::vector<double>& x0s) {
    f.validate();
    if (t < 0) throw invalid_input("propagate_front: t must be >= 0");
    ParametricCurve c;
    c.params = x0s;
    c.points.reserve(x0s.size());
    for (double x0 : x0s) c.points.push_back(front_point(f, x0, t));
    c.label = t;
    return c;
}

/// Focusing time of the ray from x0: t_c = (1 + h0'^2)^(3/2)/h0'' = 1/kappa.
inline double caustic_time(const InitialFront& f, double x0) {
    f.validate();
    const double hpp = f.h0pp(x0);
    if (!(hpp > 0)) throw numeric_failure("caustic_time: no focusing, h0'' <= 0");
    const double hp = f.h0p(x0);
    const double u = 1 + hp * hp;
    return u * std::sqrt(u) / hpp;
}

struct FirstSingularity {
    double t0 = 0;       // earliest focusing time
    double x0_star = 0;  // ray achieving it
    double local_a = 0;  // swallowtail coefficient 3(a1^3 - a2)/(4 a1^4)
    Vec2 location;       // caustic apex
};

/// Earliest focusing time by golden-section search over |x0| <= 1/sqrt(a1),
/// plus the closed-form local swallowtail coefficient of the quartic data.
inline FirstSingularity first_singularity(const InitialFront& f) {
    f.validate();
    const double w = 1 / std::sqrt(f.a1);
    const double x0s = golden_min([&](double x0) { return caustic_time(f, x0); }, -w, w, 1e-12);
    FirstSingularity out;
    out.x0_star = x0s;
    out.t0 = caustic_time(f, out.x0_star);
    out.local_a = 3 * (f.a1 * f.a1 * f.a1 - f.a2) / (4 * std::pow(f.a1, 4));
    if (!(out.local_a > 0))
        throw numeric_failure("first_singularity: degenerate focusing, local coefficient <= 0");
    out.location = front_point(f, out.x0_star, out.t0);
    return out;
}

/// Caustic: envelope of rays, i.e. the locus of front points at their own
/// focusing time, sampled for t_c in [max(t_min, t0), t_max].
inline ParametricCurve caustic_curve(const InitialFront& f, double t_min, double t_max,
                                     std::size_t samples) {
    f.validate();
    if (samples < 3) throw invalid_input("caustic_curve: need at least 3 samples");
    const double t0 = caustic_time(f, 0.0);
    t_min = std::max(t_min, t0);
    if (t_max <= t_min) throw invalid_input("caustic_curve: t range must extend beyond t0");

    // invert t_c(x0) on x0 >= 0 to find the sampling range
    double hi = 1e-3;
    while (caustic_time(f, hi) < t_max && hi < 1e6) hi *= 2;
    const double x0_max =
        bisect([&](double x) { return caustic_time(f, x) - t_max; }, 0.0, hi, 1e-14);

    ParametricCurve c;
    c.params.reserve(samples);
    c.points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double x0 = -x0_max + 2 * x0_max * static_cast<double>(i) /
                                        static_cast<double>(samples - 1);
        c.params.push_back(x0);
        c.points.push_back(front_point(f, x0, caustic_time(f, x0)));
    }
    return c;
}

/// Max-norm residual of Im(z_sigma conj(z_t)) + ds/dsigma over a family of
/// fronts sharing one x0 grid, labels = absolute times t. Derivatives by
/// centered differences; needs at least three time slices.
inline double eikonal_residual(const CurveFamily& family) {
    if (family.curves.size() < 3)
        throw invalid_input("eikonal_residual: need at least three time slices");
    std::vector<const ParametricCurve*> slices;
    for (const auto& c : family.curves) {
        if (!c.label) throw invalid_input("eikonal_residual: unlabeled slice");
        slices.push_back(&c);
    }
    std::sort(slices.begin(), slices.end(),
              [](const ParametricCurve* a, const ParametricCurve* b) {
                  return *a->label < *b->label;
              });
    const std::size_t n = slices.front()->size();
    for (const auto* s : slices) {
        if (s->size() != n) throw invalid_input("eikonal_residual: mismatched grids");
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(s->params[i] - slices.front()->params[i]) > 1e-12)
                throw invalid_input("eikonal_residual: mismatched grids");
    }

    double worst = 0;
    for (std::size_t k = 1; k + 1 < slices.size(); ++k) {
        const auto& prev = *slices[k - 1];
        const auto& cur = *slices[k];
        const auto& next = *slices[k + 1];
        const double dt = *next.label - *prev.label;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double dsig = cur.params[i + 1] - cur.params[i - 1];
            const Vec2 zs = (cur.points[i + 1] - cur.points[i - 1]) * (1.0 / dsig);
            const Vec2 zt = (next.points[i] - prev.points[i]) * (1.0 / dt);
            // Im(z_sigma * conj(z_t)) = zs.y*zt.x - zs.x*zt.y
            const double im = zs.y * zt.x - zs.x * zt.y;
            worst = std::max(worst, std::abs(im + zs.norm()));
        }
    }
    return worst;
}

/// Front mapped to the gamma = 1 similarity frame about the singularity:
/// X = x/t'^{3/2}, Y = (h - t)/t'^2, parametrized by sigma_hat = 2 a1 x0 /
/// sqrt(t'). Fitting a swallowtail to this curve recovers the local
/// coefficient with O(t') bias.
inline ParametricCurve similarity_frame_front(const InitialFront& f, double t0, double tprime,
                                              double sigma_hat_max, std::size_t samples) {
    f.validate();
    if (!(tprime > 0)) throw invalid_input("similarity_frame_front: t' must be positive");
    const double t = t0 - tprime;
    ParametricCurve c;
    c.params.reserve(samples);
    c.points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double sh = -sigma_hat_max + 2 * sigma_hat_max * static_cast<double>(i) /
                                               static_cast<double>(samples - 1);
        const double x0 = sh * std::sqrt(tprime) / (2 * f.a1);
        const Vec2 p = front_point(f, x0, t);
        c.params.push_back(sh);
        c.points.push_back({p.x / std::pow(tprime, 1.5), (p.y - t) / (tprime * tprime)});
    }
    c.label = tprime;
    return c;
}

}  // namespace eikonal
}  // namespace cusplab
