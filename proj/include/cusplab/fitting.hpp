#pragma once

// Inverse problems on top of the normal forms: fit (translation, rotation,
// eps, a) to sampled data by orthogonal-distance regression, classify the
// singularity kind by residual comparison, and extract the temporal scaling
// exponent gamma from a labeled curve family.
//
// The fit alternates three exact sub-steps: per-point projection onto the
// model curve (analytic Newton), linear least squares for (eps, a) (the model
// is linear in both), and closed-form rigid registration (2-D Kabsch).
// Normal forms are local statements, so data enters through a window around
// the tip whose extent defaults to 10% of the curve diameter.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "cusplab/core.hpp"
#include "cusplab/curve.hpp"
#include "cusplab/normal_form.hpp"
#include "cusplab/numerics.hpp"

namespace cusplab {

struct FitOptions {
    double window_height_frac = 0.10;    // window radius as fraction of curve diameter
    std::optional<double> window_radius; // absolute override for the window radius
    std::size_t min_samples = 20;
    double kind_ratio = 10.0;            // residual ratio required to classify
    double residual_threshold = 1e-2;    // relative residual above which a fit is rejected
    int max_rounds = 200;
};

struct NormalFormFit {
    NormalForm form;
    double residual = std::numeric_limits<double>::infinity();        // rms / window scale
    double residual_other = std::numeric_limits<double>::infinity();  // competing hypothesis
    std::size_t window_begin = 0, window_end = 0;                     // fitted sample range
};

namespace detail {

struct FitWindow {
    std::size_t begin, end;  // half-open index range
    double scale;            // max distance from the tip inside the window
};

inline FitWindow select_window(const ParametricCurve& c, const Tip& tip, const FitOptions& o) {
    const double radius = o.window_radius.value_or(o.window_height_frac * c.diameter());
    std::size_t center = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double d = std::abs(c.params[i] - tip.sigma);
        if (d < best) {
            best = d;
            center = i;
        }
    }
    std::size_t b = center, e = center + 1;
    while (b > 0 && (c.points[b - 1] - tip.point).norm() <= radius) --b;
    while (e < c.size() && (c.points[e] - tip.point).norm() <= radius) ++e;
    if (e - b < o.min_samples)
        throw invalid_input("fit_normal_form: fewer than min_samples points in fit window");
    double scale = 0;
    for (std::size_t i = b; i < e; ++i)
        scale = std::max(scale, (c.points[i] - tip.point).norm());
    return {b, e, scale};
}

// Project one local-frame point onto the model: argmin_theta |nf.local(th)-p|.
// Newton on the stationarity condition with backtracking; the model is a
// polynomial so derivatives are exact.
inline double project_point(const NormalForm& nf, Vec2 p, double theta0, double step_cap) {
    auto dist2 = [&](double th) { return (nf.local(th) - p).norm2(); };
    double theta = theta0;
    double d0 = dist2(theta);
    for (int it = 0; it < 60; ++it) {
        const Vec2 q = nf.local(theta) - p;
        const Vec2 q1 = nf.local_d1(theta);
        const Vec2 q2 = nf.local_d2(theta);
        const double g = dot(q, q1);
        const double gp = q1.norm2() + dot(q, q2);
        double step = gp > 0 ? -g / gp : -g;
        step = std::clamp(step, -step_cap, step_cap);
        double cand = theta + step;
        double dc = dist2(cand);
        int back = 0;
        while (dc > d0 && back++ < 30) {
            step *= 0.5;
            cand = theta + step;
            dc = dist2(cand);
        }
        if (dc > d0) break;
        theta = cand;
        if (std::abs(step) <= 1e-16 * (1 + std::abs(theta))) break;
        d0 = dc;
    }
    return theta;
}

struct CoreFit {
    NormalForm form;
    double rms = std::numeric_limits<double>::infinity();
};

// Fixed-kind orthogonal-distance fit over the window [w.begin, w.end).
inline CoreFit fit_kind(const ParametricCurve& c, const Tip& tip, FormKind kind,
                        const FitWindow& w, const FitOptions& o) {
    const std::size_t n = w.end - w.begin;
    std::vector<Vec2> data(n);
    for (std::size_t i = 0; i < n; ++i) data[i] = c.points[w.begin + i];

    NormalForm nf;
    nf.kind = kind;
    nf.a = 1;
    nf.epsilon = 0;
    nf.translation = tip.point;
    Vec2 mean{0, 0};
    for (const auto& p : data) mean = mean + (p - tip.point);
    if (mean.norm() < 1e-300) mean = {0, 1};
    nf.rotation = wrap_angle(std::atan2(mean.y, mean.x) - M_PI / 2);

    auto to_local = [&](Vec2 p) { return rotate(p - nf.translation, -nf.rotation); };
    std::vector<double> theta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 q = to_local(data[i]);
        theta[i] = (q.x >= 0 ? 1.0 : -1.0) * std::sqrt(2 * std::max(q.y, 0.0));
    }
    const double step_cap = std::sqrt(2 * w.scale) + 1;

    double best_rms = std::numeric_limits<double>::infinity();
    int stale = 0;
    for (int round = 0; round < o.max_rounds; ++round) {
        // 1. linear least squares for (eps, a) in the current frame
        double m00 = 0, m01 = 0, m11 = 0, r0 = 0, r1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 q = to_local(data[i]);
            const double th = theta[i], th2 = th * th, th3 = th2 * th, th4 = th2 * th2;
            m00 += th2;
            m01 += th * th3 / 3;
            m11 += th3 * th3 / 9;
            r0 += th * q.x;
            r1 += th3 / 3 * q.x;
            if (kind == FormKind::swallowtail) {
                m00 += th4 / 4;
                m01 += th2 * th4 / 8;
                m11 += th4 * th4 / 16;
                r0 += th2 / 2 * q.y;
                r1 += th4 / 4 * q.y;
            }
        }
        const double det = m00 * m11 - m01 * m01;
        if (std::abs(det) > 1e-300) {
            const double eps = (m11 * r0 - m01 * r1) / det;
            const double a = (m00 * r1 - m01 * r0) / det;
            if (a > 0) {
                nf.epsilon = eps;
                nf.a = a;
            } else {
                nf.a = 1e-9;
                nf.epsilon = m00 > 0 ? r0 / m00 : 0.0;
            }
        }

        // 2. re-project every sample onto the updated model
        for (std::size_t i = 0; i < n; ++i)
            theta[i] = project_point(nf, to_local(data[i]), theta[i], step_cap);

        // 3. rigid registration of model points onto the data (2-D Kabsch)
        Vec2 pc{0, 0}, qc{0, 0};
        std::vector<Vec2> model(n);
        for (std::size_t i = 0; i < n; ++i) {
            model[i] = nf.local(theta[i]);
            pc = pc + data[i];
            qc = qc + model[i];
        }
        pc = pc * (1.0 / static_cast<double>(n));
        qc = qc * (1.0 / static_cast<double>(n));
        double sc = 0, sd = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 pt = data[i] - pc, qt = model[i] - qc;
            sc += cross(qt, pt);
            sd += dot(qt, pt);
        }
        nf.rotation = wrap_angle(std::atan2(sc, sd));
        nf.translation = pc - rotate(qc, nf.rotation);

        double ss = 0;
        for (std::size_t i = 0; i < n; ++i)
            ss += (data[i] - nf.at(theta[i])).norm2();
        const double rms = std::sqrt(ss / static_cast<double>(n));
        if (rms < best_rms * (1 - 1e-13)) {
            best_rms = rms;
            stale = 0;
        } else if (++stale > 3 && round > 8) {
            best_rms = std::min(best_rms, rms);
            break;
        }
        best_rms = std::min(best_rms, rms);
    }
    return {nf, best_rms};
}

}  // namespace detail

/// Fit one fixed normal-form kind around a tip. The tip may come from
/// find_tips or be user-provided (e.g. a maximum-curvature point on a smooth
/// near-critical curve).
inline NormalFormFit fit_normal_form_as(const ParametricCurve& c, const Tip& tip, FormKind kind,
                                        const FitOptions& opts = {}) {
    c.validate();
    const auto w = detail::select_window(c, tip, opts);
    const auto core = detail::fit_kind(c, tip, kind, w, opts);
    NormalFormFit fit;
    fit.form = core.form;
    fit.residual = core.rms / (w.scale > 0 ? w.scale : 1.0);
    fit.window_begin = w.begin;
    fit.window_end = w.end;
    return fit;
}

/// Fit both hypotheses and classify by residual ratio. Throws
/// unclassified_error when neither wins by the configured margin or both
/// residuals exceed the rejection threshold.
inline NormalFormFit fit_normal_form(const ParametricCurve& c, const Tip& tip,
                                     const FitOptions& opts = {}) {
    NormalFormFit cusp = fit_normal_form_as(c, tip, FormKind::cusp, opts);
    NormalFormFit swal = fit_normal_form_as(c, tip, FormKind::swallowtail, opts);
    NormalFormFit& best = cusp.residual <= swal.residual ? cusp : swal;
    NormalFormFit& other = cusp.residual <= swal.residual ? swal : cusp;
    if (best.residual > opts.residual_threshold)
        throw unclassified_error("fit_normal_form: both hypotheses above residual threshold");
    if (!(other.residual >= opts.kind_ratio * best.residual))
        throw unclassified_error("fit_normal_form: residual ratio below classification margin");
    best.residual_other = other.residual;
    return best;
}

/// Fit anchor: a detected tip when one exists, otherwise the point of
/// maximum |curvature| (the incipient singularity on a smooth curve).
inline Tip fit_anchor(const ParametricCurve& c) {
    auto tips = find_tips(c);
    if (!tips.empty()) return tips.front();
    const auto geo = geometry(c);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (std::abs(geo.curvature[i]) > std::abs(geo.curvature[imax])) imax = i;
    return {c.params[imax], c.points[imax]};
}

/// Log-log slope of |y| vs |x| in the fitted local frame, over the decade
/// |x| in [lo_frac, hi_frac] of the window's x extent. 2/3 identifies a cusp
/// tip, 4/3 a swallowtail tip.
inline double measure_tip_exponent(const ParametricCurve& c, const NormalFormFit& fit,
                                   double lo_frac = 1e-4, double hi_frac = 1e-1) {
    double W = 0;
    std::vector<Vec2> local(fit.window_end - fit.window_begin);
    for (std::size_t i = fit.window_begin; i < fit.window_end; ++i) {
        local[i - fit.window_begin] =
            rotate(c.points[i] - fit.form.translation, -fit.form.rotation);
        W = std::max(W, std::abs(local[i - fit.window_begin].x));
    }
    std::vector<double> lx, ly;
    for (const auto& q : local) {
        const double ax = std::abs(q.x), ay = std::abs(q.y);
        if (ax >= lo_frac * W && ax <= hi_frac * W && ay > 0) {
            lx.push_back(std::log(ax));
            ly.push_back(std::log(ay));
        }
    }
    if (lx.size() < 8) throw numeric_failure("measure_tip_exponent: too few points in decade");
    return linfit(lx, ly).slope;
}

struct ScalingOptions {
    FitOptions fit;
    std::size_t min_curves = 4;
};

/// Extract gamma from a family labeled with distances t' to the singularity:
/// fit a normal form on every curve and regress log|eps| on log|t'|. The tip
/// exponent is measured on the most critical member.
inline SimilarityFit fit_scaling(const CurveFamily& family, const ScalingOptions& opts = {}) {
    struct Entry {
        double tprime;
        double eps;
        FormKind kind;
    };
    std::vector<Entry> entries;
    const ParametricCurve* critical = nullptr;
    std::optional<NormalFormFit> critical_fit;
    double critical_tp = std::numeric_limits<double>::infinity();

    for (const auto& c : family.curves) {
        const double tp = c.label ? std::abs(*c.label) : 0.0;
        const Tip anchor = fit_anchor(c);
        const NormalFormFit fit = fit_normal_form(c, anchor, opts.fit);
        if (c.label && tp > 0)
            entries.push_back({tp, std::abs(fit.form.epsilon), fit.form.kind});
        if (tp < critical_tp) {
            critical_tp = tp;
            critical = &c;
            critical_fit = fit;
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.tprime < b.tprime; });
    std::vector<double> lt, le;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && entries[i].tprime == entries[i - 1].tprime) continue;
        if (entries[i].kind != entries.front().kind)
            throw numeric_failure("fit_scaling: family members classify differently");
        if (!lt.empty() && std::log(entries[i].eps) <= le.back())
            throw numeric_failure("fit_scaling: non-monotone scales");
        lt.push_back(std::log(entries[i].tprime));
        le.push_back(std::log(entries[i].eps));
    }
    if (lt.size() < opts.min_curves)
        throw invalid_input("fit_scaling: need at least four distinct |t'| labels");

    const LineFit lf = linfit(lt, le);
    SimilarityFit out;
    out.gamma = lf.slope;
    out.residual = lf.rms;
    out.tip_exponent = measure_tip_exponent(*critical, *critical_fit);
    if (!(out.gamma > 0)) throw numeric_failure("fit_scaling: non-positive gamma");
    return out;
}

/// Classify a family (or a single curve) into a SingularityReport. With at
/// least four distinct nonzero labels the scaling fit runs too; otherwise
/// only kind and tip exponent are reported and gamma stays empty.
inline SingularityReport classify_family(const CurveFamily& family,
                                         const ScalingOptions& opts = {}) {
    if (family.curves.empty()) throw invalid_input("classify: empty family");

    std::vector<double> distinct;
    for (const auto& c : family.curves)
        if (c.label && *c.label != 0) distinct.push_back(std::abs(*c.label));
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    const ParametricCurve* critical = &family.curves.front();
    auto tp_of = [](const ParametricCurve& c) { return c.label ? std::abs(*c.label) : 0.0; };
    for (const auto& c : family.curves)
        if (tp_of(c) < tp_of(*critical)) critical = &c;

    const Tip anchor = fit_anchor(*critical);
    const NormalFormFit fit = fit_normal_form(*critical, anchor, opts.fit);

    SingularityReport rep;
    rep.kind = fit.form.kind;
    rep.form = fit.form;
    rep.location = fit.form.translation;
    rep.fit_residual = fit.residual;
    if (distinct.size() >= opts.min_curves) {
        const SimilarityFit sf = fit_scaling(family, opts);
        rep.gamma = sf.gamma;
        rep.tip_exponent = sf.tip_exponent;
        rep.scaling_residual = sf.residual;
    } else {
        rep.tip_exponent = measure_tip_exponent(*critical, fit);
    }
    return rep;
}

}  // namespace cusplab
