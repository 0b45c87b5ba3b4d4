#pragma once

// Suction-driven Hele-Shaw flow under the quadratic conformal map
// f(xi, t) = a1(t) xi + a2(t) xi^2 from the unit disc. The coefficient ODEs
//
//   a1 a1' + 2 a2 a2' = -1,      a1 a2' + 2 a2 a1' = 0
//
// integrate to the invariants B = a2 a1^2 and a1^2/2 + B^2/a1^4 = A - t, so
// a1(t) is a root of a sextic; the map loses univalence at a1 = (2B)^{1/3},
// producing a 2/3 cusp on the boundary with scaling exponent gamma = 1/2.

#include <cmath>
#include <cstddef>
#include <vector>

#include "cusplab/core.hpp"
#include "cusplab/curve.hpp"
#include "cusplab/normal_form.hpp"
#include "cusplab/numerics.hpp"

namespace cusplab {
namespace hele_shaw {

struct PolyMapState {
    double t = 0;
    double a1 = 1;
    double a2 = 0;
    double A = 0;  // a1(0)^2/2 + a2(0)^2
    double B = 0;  // a2(0) a1(0)^2

    bool univalent() const { return a1 > 2 * std::abs(a2); }
    double area() const { return M_PI * (a1 * a1 + 2 * a2 * a2); }
};

struct CuspPrediction {
    double t0 = 0;
    Vec2 location;
    double a1_crit = 0;  // (2B)^{1/3}
    double a2_crit = 0;  // a1_crit / 2 (signed with a2)
};

inline void check_initial(double a1_0, double a2_0) {
    if (!(a1_0 > 0)) throw invalid_input("hele-shaw: a1(0) must be positive");
    if (!(a1_0 > 2 * std::abs(a2_0)))
        throw invalid_input("hele-shaw: initial map not univalent (a1 <= 2|a2|)");
}

/// Closed-form singularity time t0 = A - (3/4)(2|B|)^{2/3} and cusp location.
inline CuspPrediction predict_cusp(double a1_0, double a2_0) {
    check_initial(a1_0, a2_0);
    const double A = 0.5 * a1_0 * a1_0 + a2_0 * a2_0;
    const double B = a2_0 * a1_0 * a1_0;
    if (B == 0)
        throw numeric_failure("predict_cusp: B = 0, the circle shrinks to a point without a cusp");
    CuspPrediction p;
    p.a1_crit = std::cbrt(2 * std::abs(B));
    p.a2_crit = (B > 0 ? 0.5 : -0.5) * p.a1_crit;
    p.t0 = A - 0.75 * std::pow(2 * std::abs(B), 2.0 / 3.0);
    // f'(xi) = 0 at xi = -sign(a2); the cusp sits at f(xi) on the real axis
    const double xi = B > 0 ? -1.0 : 1.0;
    p.location = {p.a1_crit * xi + p.a2_crit * xi * xi, 0.0};
    return p;
}

/// State at time t from the first integrals: a1 solves
/// a1^2/2 + B^2/a1^4 = A - t on the branch continuous from a1(0), isolated by
/// bisection on [(2|B|)^{1/3}, a1(0)]; then a2 = B/a1^2.
inline PolyMapState evolve_map(double a1_0, double a2_0, double t) {
    check_initial(a1_0, a2_0);
    if (t < 0) throw invalid_input("evolve_map: t must be >= 0");
    const double A = 0.5 * a1_0 * a1_0 + a2_0 * a2_0;
    const double B = a2_0 * a1_0 * a1_0;

    PolyMapState s;
    s.t = t;
    s.A = A;
    s.B = B;
    if (B == 0) {
        const double v = a1_0 * a1_0 - 2 * t;
        if (v <= 0) throw numeric_failure("evolve_map: past the collapse of the circle");
        s.a1 = std::sqrt(v);
        s.a2 = 0;
        return s;
    }
    const double t0 = A - 0.75 * std::pow(2 * std::abs(B), 2.0 / 3.0);
    if (t >= t0) throw numeric_failure("evolve_map: t is at or past the singularity time");

    const double lo = std::cbrt(2 * std::abs(B));
    auto g = [&](double a1) { return 0.5 * a1 * a1 + B * B / std::pow(a1, 4) - (A - t); };
    s.a1 = t == 0 ? a1_0 : bisect(g, lo, a1_0, 1e-16);
    s.a2 = B / (s.a1 * s.a1);
    return s;
}

namespace detail {
inline std::array<double, 2> map_rhs(const std::array<double, 2>& y) {
    const double den = y[0] * y[0] - 4 * y[1] * y[1];
    return {-y[0] / den, 2 * y[1] / den};
}
}  // namespace detail

/// RK4 trajectory of the coefficient ODEs from t = 0 to t_end, recorded every
/// step. Cross-checks the closed-form branch.
inline std::vector<PolyMapState> integrate_trajectory(double a1_0, double a2_0, double t_end,
                                                      double dt = 1e-4) {
    check_initial(a1_0, a2_0);
    if (!(dt > 0) || !(t_end >= 0)) throw invalid_input("integrate_trajectory: bad t range");
    const double A = 0.5 * a1_0 * a1_0 + a2_0 * a2_0;
    const double B = a2_0 * a1_0 * a1_0;
    const std::size_t n = static_cast<std::size_t>(std::ceil(t_end / dt));
    std::vector<PolyMapState> traj;
    traj.reserve(n + 1);
    std::array<double, 2> y = {a1_0, a2_0};
    double t = 0;
    traj.push_back({t, y[0], y[1], A, B});
    for (std::size_t i = 0; i < n; ++i) {
        const double h = std::min(dt, t_end - t);
        if (h <= 0) break;
        if (!(y[0] > 2 * std::abs(y[1])))
            throw numeric_failure("integrate_trajectory: univalence lost before t_end");
        y = rk4_step<2>([](double, const std::array<double, 2>& s) { return detail::map_rhs(s); },
                        t, y, h);
        t += h;
        traj.push_back({t, y[0], y[1], A, B});
    }
    return traj;
}

/// RK4 state at one time (convenience wrapper over integrate_trajectory).
inline PolyMapState evolve_map_ode(double a1_0, double a2_0, double t, double dt = 1e-4) {
    auto traj = integrate_trajectory(a1_0, a2_0, t, dt);
    return traj.back();
}

/// Blow-up time detected from the ODEs alone, integrating with a1 as the
/// independent variable (dt/da1 and da2/da1 stay finite through the
/// singularity) until the univalence margin a1 - 2|a2| vanishes.
inline double blowup_time_ode(double a1_0, double a2_0) {
    check_initial(a1_0, a2_0);
    if (a2_0 == 0) return 0.5 * a1_0 * a1_0;  // circle collapse
    // state y = (t, a2) as functions of a1, marching a1 downward
    std::array<double, 2> y = {0.0, a2_0};
    double a1 = a1_0;
    auto rhs = [](double a1v, const std::array<double, 2>& s) {
        return std::array<double, 2>{-(a1v * a1v - 4 * s[1] * s[1]) / a1v,
                                     -2 * s[1] / a1v};
    };
    for (int it = 0; it < 4000; ++it) {
        const double margin = a1 - 2 * std::abs(y[1]);
        if (margin < 1e-9) break;
        const double h = -std::min(0.25 * margin, 0.01 * a1_0);
        y = rk4_step<2>(rhs, a1, y, h);
        a1 += h;
    }
    return y[0];
}

/// Boundary of the fluid domain: the image of |xi| = 1,
/// (x, y) = (a1 cos th + a2 cos 2th, a1 sin th + a2 sin 2th), th in [0, 2pi]
/// so the cusp direction th = pi is interior to the parametrization.
inline ParametricCurve boundary_curve(const PolyMapState& s, std::size_t theta_samples) {
    if (theta_samples < 8) throw invalid_input("boundary_curve: too few samples");
    ParametricCurve c;
    c.params.reserve(theta_samples);
    c.points.reserve(theta_samples);
    for (std::size_t i = 0; i < theta_samples; ++i) {
        const double th =
            2 * M_PI * static_cast<double>(i) / static_cast<double>(theta_samples - 1);
        c.params.push_back(th);
        c.points.push_back({s.a1 * std::cos(th) + s.a2 * std::cos(2 * th),
                            s.a1 * std::sin(th) + s.a2 * std::sin(2 * th)});
    }
    c.label = s.t;
    return c;
}

struct LocalCuspFrame {
    double a_tilde = 0;          // sqrt(t'/3)
    NormalForm form;             // cusp similarity profile: eps = +1, a = 3*sqrt(3)
    ParametricCurve frame_curve; // boundary mapped to (Theta, (X_c, Y_c))
};

/// Boundary near the cusp mapped to the gamma = 1/2 similarity frame
///   X_c = -y / (c_x t'^{3/4}),  Y_c = -(x - x_cusp) / (6 t'^{1/2}) - 1/(3 sqrt 3),
///   Theta = theta_tilde sqrt(a1_crit / (6 sqrt t')),  c_x = sqrt(18 / a1_crit),
/// which collapses onto the cusp profile X = Theta + sqrt(3) Theta^3,
/// Y = Theta^2/2, i.e. a = 3*sqrt(3) for any initial data.
inline LocalCuspFrame local_cusp(double a1_0, double a2_0, double tprime,
                                 std::size_t samples = 512, double theta_cap = 1.0) {
    if (!(tprime > 0)) throw invalid_input("local_cusp: t' must be positive");
    const CuspPrediction pred = predict_cusp(a1_0, a2_0);
    const PolyMapState s = evolve_map(a1_0, a2_0, pred.t0 - tprime);

    const double a1c = pred.a1_crit;
    const double cx = std::sqrt(18.0 / a1c) * std::pow(tprime, 0.75);
    const double cy = 6.0 * std::sqrt(tprime);
    const double th_scale = std::sqrt(a1c / (6 * std::sqrt(tprime)));
    const double th_center = pred.location.x < 0 ? M_PI : 0.0;

    LocalCuspFrame out;
    out.a_tilde = std::sqrt(tprime / 3.0);
    out.form = NormalForm{FormKind::cusp, 1.0, 3 * std::sqrt(3.0), 0.0, {0, 0}};
    out.frame_curve.params.reserve(samples);
    out.frame_curve.points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double Theta = -theta_cap + 2 * theta_cap * static_cast<double>(i) /
                                              static_cast<double>(samples - 1);
        const double tht = Theta / th_scale;
        const double th = th_center + tht;
        const double x = s.a1 * std::cos(th) + s.a2 * std::cos(2 * th);
        const double y = s.a1 * std::sin(th) + s.a2 * std::sin(2 * th);
        out.frame_curve.params.push_back(Theta);
        out.frame_curve.points.push_back(
            {-y / cx, -(x - pred.location.x) / cy - 1 / (3 * std::sqrt(3.0))});
    }
    out.frame_curve.label = tprime;
    return out;
}

struct SuctionInvariants {
    double b_drift = 0;     // max |a2 a1^2 - B| along the trajectory
    double area_slope = 0;  // slope of pi (a1^2 + 2 a2^2) vs t, expected -2 pi
};

inline SuctionInvariants suction_invariants(const std::vector<PolyMapState>& traj) {
    if (traj.size() < 3) throw invalid_input("suction_invariants: need >= 3 states");
    const double B = traj.front().a2 * traj.front().a1 * traj.front().a1;
    SuctionInvariants inv;
    std::vector<double> ts, areas;
    ts.reserve(traj.size());
    areas.reserve(traj.size());
    for (const auto& s : traj) {
        inv.b_drift = std::max(inv.b_drift, std::abs(s.a2 * s.a1 * s.a1 - B));
        ts.push_back(s.t);
        areas.push_back(s.area());
    }
    inv.area_slope = linfit(ts, areas).slope;
    return inv;
}

}  // namespace hele_shaw
}  // namespace cusplab
