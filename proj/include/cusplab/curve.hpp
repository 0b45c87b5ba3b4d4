#pragma once

// Core planar-curve representation and geometry queries: arclength, speed,
// signed curvature, tangent-vanishing tip detection and self-intersection
// detection. Curves are immutable value objects; every operation returns new
// data and is safe to call concurrently.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "cusplab/core.hpp"

namespace cusplab {

/// A sampled planar curve: strictly increasing parameter values plus points,
/// with an optional scalar label (a time t, a time distance t', or a control
/// parameter such as m).
struct ParametricCurve {
    std::vector<double> params;
    std::vector<Vec2> points;
    std::optional<double> label;

    std::size_t size() const { return params.size(); }

    void validate() const {
        if (params.size() != points.size())
            throw invalid_input("curve: params and points sizes differ");
        if (params.size() < 2) throw invalid_input("curve: need at least two samples");
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (!std::isfinite(params[i]) || !std::isfinite(points[i].x) ||
                !std::isfinite(points[i].y))
                throw invalid_input("curve: non-finite entry");
            if (i > 0 && params[i] <= params[i - 1])
                throw invalid_input("curve: params not strictly increasing");
        }
    }

    /// Max-extent estimate used to scale tolerances and fit windows.
    double diameter() const {
        double xmin = points[0].x, xmax = xmin, ymin = points[0].y, ymax = ymin;
        for (const auto& p : points) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        return std::hypot(xmax - xmin, ymax - ymin);
    }

    bool closed(double tol = 1e-12) const {
        return (points.front() - points.back()).norm() <= tol * (1 + diameter());
    }
};

struct GeometryReport {
    double arclength = 0;              // sum of segment lengths
    std::vector<double> speed;         // |dz/dsigma| per sample
    std::vector<double> curvature;     // signed kappa per sample
};

namespace detail {

// First and second derivative stencils on a non-uniform 3-point stencil
// (s0, s1, s2), evaluated at s1.
struct Stencil3 {
    double c0, c1, c2;   // first derivative weights
    double d0, d1, d2;   // second derivative weights
};

inline Stencil3 stencil3(double h1, double h2) {
    Stencil3 s;
    s.c0 = -h2 / (h1 * (h1 + h2));
    s.c1 = (h2 - h1) / (h1 * h2);
    s.c2 = h1 / (h2 * (h1 + h2));
    s.d0 = 2 / (h1 * (h1 + h2));
    s.d1 = -2 / (h1 * h2);
    s.d2 = 2 / (h2 * (h1 + h2));
    return s;
}

// Second-order one-sided first derivative at s0 of (s0, s1, s2).
inline void onesided3(double h1, double h2, double& c0, double& c1, double& c2) {
    c0 = -(2 * h1 + h2) / (h1 * (h1 + h2));
    c1 = (h1 + h2) / (h1 * h2);
    c2 = -h1 / (h2 * (h1 + h2));
}

}  // namespace detail

/// Finite-difference arclength, speed and signed curvature. Curvature uses
/// centered differences at interior samples and copies the adjacent interior
/// stencil at the two ends. Needs at least three points for curvature.
inline GeometryReport geometry(const ParametricCurve& c) {
    c.validate();
    const std::size_t n = c.size();
    if (n < 3) throw invalid_input("geometry: curvature needs at least three points");

    GeometryReport rep;
    rep.speed.resize(n);
    rep.curvature.resize(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        rep.arclength += (c.points[i + 1] - c.points[i]).norm();

    std::vector<Vec2> d1(n), d2(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = c.params[i] - c.params[i - 1];
        const double h2 = c.params[i + 1] - c.params[i];
        const auto st = detail::stencil3(h1, h2);
        d1[i] = st.c0 * c.points[i - 1] + st.c1 * c.points[i] + st.c2 * c.points[i + 1];
        d2[i] = st.d0 * c.points[i - 1] + st.d1 * c.points[i] + st.d2 * c.points[i + 1];
    }
    {
        double c0, c1, c2;
        detail::onesided3(c.params[1] - c.params[0], c.params[2] - c.params[1], c0, c1, c2);
        d1[0] = c0 * c.points[0] + c1 * c.points[1] + c2 * c.points[2];
        d2[0] = d2[1];
        detail::onesided3(c.params[n - 2] - c.params[n - 1], c.params[n - 3] - c.params[n - 2],
                          c0, c1, c2);
        d1[n - 1] = c0 * c.points[n - 1] + c1 * c.points[n - 2] + c2 * c.points[n - 3];
        d2[n - 1] = d2[n - 2];
    }
    for (std::size_t i = 0; i < n; ++i) {
        rep.speed[i] = d1[i].norm();
        const double denom = rep.speed[i] * rep.speed[i] * rep.speed[i];
        rep.curvature[i] = denom > 0 ? cross(d1[i], d2[i]) / denom : 0.0;
    }
    return rep;
}

struct Tip {
    double sigma = 0;
    Vec2 point;
};

/// Tangent-vanishing tip detection: local minima of the finite-difference
/// speed below a fraction of the median speed, refined by a quadratic fit of
/// speed^2 through the minimum and its neighbors. Near-cusps (small positive
/// unfolding) resolve as "no tip"; true cusps as tips.
inline std::vector<Tip> find_tips(const ParametricCurve& c, double threshold_frac = 1e-3) {
    const GeometryReport geo = geometry(c);
    std::vector<double> sorted = geo.speed;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double threshold = threshold_frac * median;

    std::vector<Tip> tips;
    const std::size_t n = c.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (geo.speed[i] >= threshold) continue;
        if (geo.speed[i] > geo.speed[i - 1] || geo.speed[i] > geo.speed[i + 1]) continue;

        // Quadratic vertex of speed^2 on the neighboring stencil.
        const double s0 = c.params[i - 1], s1 = c.params[i], s2 = c.params[i + 1];
        const double v0 = geo.speed[i - 1] * geo.speed[i - 1];
        const double v1 = geo.speed[i] * geo.speed[i];
        const double v2 = geo.speed[i + 1] * geo.speed[i + 1];
        const double d10 = (v1 - v0) / (s1 - s0), d21 = (v2 - v1) / (s2 - s1);
        const double curv = (d21 - d10) / (s2 - s0);
        double s_star = s1;
        if (curv > 0) {
            s_star = 0.5 * (s0 + s1) - 0.5 * d10 / curv;
            s_star = std::clamp(s_star, s0, s2);
        }
        // Quadratic (Lagrange) interpolation of the point at s_star.
        const double l0 = (s_star - s1) * (s_star - s2) / ((s0 - s1) * (s0 - s2));
        const double l1 = (s_star - s0) * (s_star - s2) / ((s1 - s0) * (s1 - s2));
        const double l2 = (s_star - s0) * (s_star - s1) / ((s2 - s0) * (s2 - s1));
        const Vec2 p = l0 * c.points[i - 1] + l1 * c.points[i] + l2 * c.points[i + 1];

        if (!tips.empty() && std::abs(tips.back().sigma - s_star) < (s2 - s0)) {
            // merge with the previous candidate, keep the slower one
            continue;
        }
        tips.push_back({s_star, p});
    }
    return tips;
}

struct Crossing {
    double sigma_i = 0;   // sigma_i < sigma_j
    double sigma_j = 0;
    Vec2 point;
};

struct IntersectionReport {
    std::vector<Crossing> crossings;
    bool empty() const { return crossings.empty(); }
};

/// All transversal crossings between non-adjacent segments of the sampled
/// curve. Candidate pairs come from a bounding-box prefilter (segments sorted
/// by x-min); each crossing is refined by bisection on the segment parameter
/// to 1e-10 in curve parameter. Simple curves yield an empty report.
inline IntersectionReport find_self_intersections(const ParametricCurve& c) {
    c.validate();
    const std::size_t nseg = c.size() - 1;
    IntersectionReport rep;
    if (nseg < 3) return rep;
    const bool is_closed = c.closed();

    struct Box {
        double xmin, xmax, ymin, ymax;
        std::size_t seg;
    };
    std::vector<Box> boxes(nseg);
    for (std::size_t i = 0; i < nseg; ++i) {
        const Vec2 a = c.points[i], b = c.points[i + 1];
        boxes[i] = {std::min(a.x, b.x), std::max(a.x, b.x),
                    std::min(a.y, b.y), std::max(a.y, b.y), i};
    }
    std::sort(boxes.begin(), boxes.end(),
              [](const Box& a, const Box& b) { return a.xmin < b.xmin; });

    auto adjacent = [&](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        if (j - i <= 1) return true;
        return is_closed && i == 0 && j == nseg - 1;
    };

    for (std::size_t bi = 0; bi < nseg; ++bi) {
        for (std::size_t bj = bi + 1; bj < nseg; ++bj) {
            if (boxes[bj].xmin > boxes[bi].xmax) break;
            if (boxes[bj].ymin > boxes[bi].ymax || boxes[bj].ymax < boxes[bi].ymin) continue;
            std::size_t i = boxes[bi].seg, j = boxes[bj].seg;
            if (adjacent(i, j)) continue;
            if (i > j) std::swap(i, j);

            const Vec2 p1 = c.points[i], p2 = c.points[i + 1];
            const Vec2 q1 = c.points[j], q2 = c.points[j + 1];
            const double d1 = cross(q2 - q1, p1 - q1);
            const double d2 = cross(q2 - q1, p2 - q1);
            const double d3 = cross(p2 - p1, q1 - p1);
            const double d4 = cross(p2 - p1, q2 - p1);
            if (!((d1 > 0) != (d2 > 0) && (d3 > 0) != (d4 > 0))) continue;
            if (d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0) continue;  // not transversal

            // Bisection along segment i against the supporting line of j.
            double lo = 0, hi = 1, flo = d1;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const Vec2 pm = p1 + mid * (p2 - p1);
                const double fm = cross(q2 - q1, pm - q1);
                if (fm == 0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const double ti = 0.5 * (lo + hi);
            lo = 0, hi = 1;
            double glo = d3;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const Vec2 qm = q1 + mid * (q2 - q1);
                const double fm = cross(p2 - p1, qm - p1);
                if (fm == 0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm > 0) == (glo > 0)) {
                    lo = mid;
                    glo = fm;
                } else {
                    hi = mid;
                }
            }
            const double tj = 0.5 * (lo + hi);

            Crossing x;
            x.sigma_i = c.params[i] + ti * (c.params[i + 1] - c.params[i]);
            x.sigma_j = c.params[j] + tj * (c.params[j + 1] - c.params[j]);
            x.point = p1 + ti * (p2 - p1);
            rep.crossings.push_back(x);
        }
    }
    std::sort(rep.crossings.begin(), rep.crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.sigma_i < b.sigma_i; });
    return rep;
}

}  // namespace cusplab
