#pragma once

// Stokes flow driven by a vortex dipole below a free surface (Jeong-Moffatt).
// The surface, in units of the dipole depth, is
//
//   x = a cos(th) + (a+1) cos(th)/(1 + sin(th)),   y = a (1 + sin(th)),
//
// where a in (-1/3, 0) solves
//
//   4 pi Ca = -a (3a+2)^2 K(m) / (1 + a + sqrt(-2a(a+1))),
//   m = 2 / ((-2a/(a+1))^{1/4} + ((a+1)/(-2a))^{1/4}),
//
// with K the complete elliptic integral of the first kind in the modulus
// convention K(m) = int_0^{pi/2} dth / sqrt(1 - m^2 sin^2 th). The tip at
// th = pi/2 sharpens exponentially with Ca: eps = a + 1/3 ~ (32/9) e^{-16 pi Ca}
// and the tip radius R ~ e^{-32 pi Ca}.

#include <cmath>
#include <cstddef>
#include <vector>

#include "cusplab/core.hpp"
#include "cusplab/curve.hpp"
#include "cusplab/normal_form.hpp"
#include "cusplab/numerics.hpp"

namespace cusplab {
namespace viscous {

namespace detail {

/// K given the complement 1 - m, immune to the m -> 1 cancellation.
inline double K_from_complement(double one_minus_m) {
    if (!(one_minus_m > 0))
        throw numeric_failure("elliptic_K: divergence at modulus 1");
    double a = 1.0, b = std::sqrt(one_minus_m * (2 - one_minus_m));
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (2 * a);
}

/// 1 - m for the modulus of the Ca relation, as a function of eps = a + 1/3.
/// With q = r^{1/4}, m = 2/(q + 1/q) gives 1 - m = (q-1)^2/(1+q^2) exactly;
/// q - 1 comes from expm1/log1p so the complement keeps full relative
/// accuracy as a -> -1/3.
inline double modulus_complement_from_eps(double eps) {
    const double lnr = std::log1p(-3 * eps / (2.0 / 3.0 + eps));  // ln(-2a/(a+1))
    const double qm1 = std::expm1(0.25 * lnr);
    const double q = 1 + qm1;
    return qm1 * qm1 / (1 + q * q);
}

/// Capillary number as a function of eps = a + 1/3. Only the elliptic
/// modulus needs eps to full precision; the rational prefactor is fine with
/// the rounded a.
inline double Ca_from_eps(double eps) {
    if (!(eps > 0 && eps < 1.0 / 3.0))
        throw invalid_input("Ca_from_eps: eps must lie in (0, 1/3)");
    const double a = -1.0 / 3.0 + eps;
    const double K = K_from_complement(modulus_complement_from_eps(eps));
    const double num = -a * (3 * a + 2) * (3 * a + 2) * K;
    const double den = 1 + a + std::sqrt(-2 * a * (a + 1));
    return num / den / (4 * M_PI);
}

}  // namespace detail

/// Complete elliptic integral of the first kind by the arithmetic-geometric
/// mean, modulus convention (m^2 multiplies sin^2). Relative error ~ 1e-15.
inline double elliptic_K(double m_mod) {
    if (!(m_mod >= 0 && m_mod < 1))
        throw numeric_failure("elliptic_K: modulus must lie in [0, 1)");
    return detail::K_from_complement(1 - m_mod);
}

/// Elliptic modulus as a function of the shape parameter a in (-1/3, 0).
inline double modulus_from_a(double a) {
    return 1 - detail::modulus_complement_from_eps(a + 1.0 / 3.0);
}

/// Capillary number produced by a shape parameter a in (-1/3, 0).
inline double Ca_from_a(double a) {
    if (!(a > -1.0 / 3.0 && a < 0))
        throw invalid_input("Ca_from_a: a must lie in (-1/3, 0)");
    return detail::Ca_from_eps(a + 1.0 / 3.0);
}

struct ViscousCuspSolution {
    double Ca = 0;
    double a = 0;        // in (-1/3, 0)
    double m_mod = 0;    // elliptic modulus
    double epsilon = 0;  // a + 1/3
};

/// Invert the capillary-number relation. The bisection runs on u = ln(a+1/3)
/// because a crowds against -1/3 exponentially fast in Ca; this keeps the
/// relative residual of the defining equation at round-off for any
/// physically reachable Ca.
inline ViscousCuspSolution a_from_Ca(double Ca) {
    if (!(Ca > 0)) throw invalid_input("a_from_Ca: Ca must be positive");
    auto ca_of_u = [](double u) { return detail::Ca_from_eps(std::exp(u)); };
    double lo = std::log(1e-60), hi = std::log(1.0 / 3.0 - 1e-12);
    if (Ca >= ca_of_u(lo))
        throw numeric_failure("a_from_Ca: Ca beyond double-precision range of the relation");
    for (int i = 0; i < 120 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ca_of_u(mid) > Ca ? lo : hi) = mid;
    }
    ViscousCuspSolution sol;
    sol.Ca = Ca;
    sol.epsilon = std::exp(0.5 * (lo + hi));
    sol.a = -1.0 / 3.0 + sol.epsilon;
    sol.m_mod = 1 - detail::modulus_complement_from_eps(sol.epsilon);
    return sol;
}

inline Vec2 surface_point(double a, double th) {
    const double s = std::sin(th);
    if (std::abs(1 + s) < 1e-12)
        throw invalid_input("surface_shape: grid touches the pole at th = -pi/2");
    return {a * std::cos(th) + (a + 1) * std::cos(th) / (1 + s), a * (1 + s)};
}

/// Exact free-surface shape for -1/3 <= a < 0 over a theta grid that must
/// avoid the pole at th = -pi/2.
inline ParametricCurve surface_shape(double a, const std::vector<double>& thetas) {
    if (!(a >= -1.0 / 3.0 && a < 0))
        throw invalid_input("surface_shape: a must lie in [-1/3, 0)");
    ParametricCurve c;
    c.params = thetas;
    c.points.reserve(thetas.size());
    for (double th : thetas) c.points.push_back(surface_point(a, th));
    c.label = a;
    return c;
}

/// Analytic curvature of the exact shape.
inline double surface_curvature(double a, double th) {
    const double s = std::sin(th), co = std::cos(th);
    const double xp = -a * s - (a + 1) / (1 + s);
    const double xpp = -a * co + (a + 1) * co / ((1 + s) * (1 + s));
    const double yp = a * co;
    const double ypp = -a * s;
    const double sp2 = xp * xp + yp * yp;
    return (xp * ypp - yp * xpp) / (sp2 * std::sqrt(sp2));
}

/// Osculating-circle radius at the tip th = pi/2: (3a+1)^2 / (4|a|).
inline double tip_curvature_radius(double a) {
    return 1.0 / std::abs(surface_curvature(a, M_PI / 2));
}

struct TipReport {
    double Ca = 0;
    double a = 0;
    double radius = 0;              // osculating radius of the exact shape
    double local_model_radius = 0;  // (4/3) eps^2 from the printed local form
};

struct TipFit {
    std::vector<TipReport> reports;
    double rate = 0;       // fitted d ln R / d Ca, expected -32 pi
    double prefactor = 0;  // exp(intercept) of the same fit
};

/// Tip radius per capillary number plus the fitted exponential rate.
inline TipFit tip_radius(const std::vector<double>& Ca_list) {
    if (Ca_list.size() < 2) throw invalid_input("tip_radius: need at least two Ca values");
    TipFit fit;
    std::vector<double> cas, lnR;
    for (double Ca : Ca_list) {
        const auto sol = a_from_Ca(Ca);
        TipReport rep;
        rep.Ca = Ca;
        rep.a = sol.a;
        // analytic curvature at th = pi/2: kappa = 4a/(3a+1)^2, written in
        // eps = 3a+1 = 3*eps_sol form so tiny tips do not cancel
        rep.radius = 9 * sol.epsilon * sol.epsilon / (4 * std::abs(sol.a));
        rep.local_model_radius = 4.0 / 3.0 * sol.epsilon * sol.epsilon;
        if (rep.radius < 1e-14)
            throw numeric_failure("tip_radius: radius below double-precision floor");
        fit.reports.push_back(rep);
        cas.push_back(Ca);
        lnR.push_back(std::log(rep.radius));
    }
    const LineFit lf = linfit(cas, lnR);
    fit.rate = lf.slope;
    fit.prefactor = std::exp(lf.intercept);
    return fit;
}

/// Local expansion at the tip, th = pi/2 + delta:
///   x = -(2 eps/3) delta - delta^3/12,  y + 2/3 - 2 eps = delta^2/6,
/// as a cusp normal form: theta = delta/sqrt(3), eps_nf = 2 eps/sqrt(3),
/// a_nf = 3 sqrt(3)/4, translation (0, 2 eps - 2/3).
inline NormalForm local_cusp_form(double epsilon) {
    NormalForm nf;
    nf.kind = FormKind::cusp;
    nf.epsilon = 2 * epsilon / std::sqrt(3.0);
    nf.a = 3 * std::sqrt(3.0) / 4;
    nf.rotation = 0;
    nf.translation = {0, 2 * epsilon - 2.0 / 3.0};
    return nf;
}

/// The same local curve sampled directly in delta.
inline ParametricCurve local_cusp_curve(double epsilon, const std::vector<double>& deltas) {
    ParametricCurve c;
    c.params = deltas;
    c.points.reserve(deltas.size());
    for (double d : deltas)
        c.points.push_back({-2 * epsilon / 3 * d - d * d * d / 12,
                            -2.0 / 3.0 + 2 * epsilon + d * d / 6});
    return c;
}

}  // namespace viscous
}  // namespace cusplab
