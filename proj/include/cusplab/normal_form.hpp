#pragma once

// The two universal singularity normal forms and their self-similar versions.
//
// cusp:        x = eps*theta + a*theta^3/3,  y = theta^2/2
// swallowtail: x = eps*theta + a*theta^3/3,  y = eps*theta^2/2 + a*theta^4/4
//
// Both curves are mirror-symmetric about their y axis (x is odd in theta, y
// even), so a rigid motion plus the parameter family covers every orientation.

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "cusplab/core.hpp"
#include "cusplab/curve.hpp"

namespace cusplab {

enum class FormKind { cusp, swallowtail };

inline const char* to_string(FormKind k) {
    return k == FormKind::cusp ? "cusp" : "swallowtail";
}

struct NormalForm {
    FormKind kind = FormKind::cusp;
    double epsilon = 0;       // unfolding parameter (eps or eps_s)
    double a = 1;             // cubic/quartic coefficient, > 0
    double rotation = 0;      // rigid motion applied to the model curve
    Vec2 translation{0, 0};

    void validate() const {
        if (!(a > 0)) throw invalid_input("normal form: a must be positive");
        if (!std::isfinite(epsilon) || !std::isfinite(rotation))
            throw invalid_input("normal form: non-finite parameter");
    }

    /// Model point in the local frame, before the rigid motion.
    Vec2 local(double theta) const {
        const double x = epsilon * theta + a * theta * theta * theta / 3.0;
        const double y = kind == FormKind::cusp
                             ? 0.5 * theta * theta
                             : 0.5 * epsilon * theta * theta + 0.25 * a * theta * theta * theta * theta;
        return {x, y};
    }

    Vec2 local_d1(double theta) const {
        const double xp = epsilon + a * theta * theta;
        const double yp = kind == FormKind::cusp ? theta : theta * (epsilon + a * theta * theta);
        return {xp, yp};
    }

    Vec2 local_d2(double theta) const {
        const double xpp = 2 * a * theta;
        const double ypp = kind == FormKind::cusp ? 1.0 : epsilon + 3 * a * theta * theta;
        return {xpp, ypp};
    }

    Vec2 at(double theta) const { return rotate(local(theta), rotation) + translation; }
};

/// Sample a normal form over a theta grid, rigid motion included.
inline ParametricCurve eval_normal_form(const NormalForm& nf, const std::vector<double>& thetas) {
    nf.validate();
    if (thetas.empty()) throw invalid_input("eval_normal_form: empty grid");
    ParametricCurve c;
    c.params = thetas;
    c.points.reserve(thetas.size());
    for (double th : thetas) c.points.push_back(nf.at(th));
    return c;
}

/// + is the similarity profile before the singularity, - after.
enum class SimilaritySign { before, after };

inline double sign_of(SimilaritySign s) { return s == SimilaritySign::before ? 1.0 : -1.0; }

/// Self-similar profile: X = +-sigma + a*sigma^3/3 with Y = sigma^2/2 (cusp)
/// or Y = +-sigma^2/2 + a*sigma^4/4 (swallowtail).
inline ParametricCurve similarity_profile(FormKind kind, SimilaritySign sign, double a,
                                          const std::vector<double>& sigmas) {
    if (!(a > 0)) throw invalid_input("similarity_profile: a must be positive");
    NormalForm nf{kind, sign_of(sign), a};
    return eval_normal_form(nf, sigmas);
}

/// Cubic identity satisfied by the cusp similarity profile:
/// X^2 - 2Y(1 +- 2aY/3)^2, zero to round-off on profile points.
inline double cusp_cubic_residual(double X, double Y, double a, SimilaritySign sign) {
    const double u = 1 + sign_of(sign) * 2 * a * Y / 3.0;
    return X * X - 2 * Y * u * u;
}

/// Local description of one of the two cusps a swallowtail unfolds into for
/// eps < 0. In the orthonormal frame rotated by `rotation` about `point`, the
/// curve runs (quad_coeff * s^2) along the cusp axis and (cubic_coeff * s^3)
/// across it, s the shifted parameter.
struct LocalCusp {
    double theta;         // parameter value of the cusp point
    Vec2 point;           // cusp location (rigid motion applied)
    double rotation;      // direction of the cusp axis
    double quad_coeff;    // sqrt(|eps| (a + |eps|))
    double cubic_coeff;   // (2 a |eps| / 3) / quad_coeff, sign per branch
};

/// The two cusp points of a swallowtail with eps < 0 sit at
/// theta = +-sqrt(-eps/a), i.e. (-+ 2(-eps)^{3/2}/(3 sqrt a), -eps^2/(4a)) in
/// the local frame; for the similarity normalization eps = -1 this is
/// (-+ 2/(3 sqrt a), -1/(4a)).
inline std::array<LocalCusp, 2> swallowtail_cusps(const NormalForm& nf) {
    nf.validate();
    if (nf.kind != FormKind::swallowtail)
        throw invalid_input("swallowtail_cusps: kind must be swallowtail");
    if (!(nf.epsilon < 0))
        throw numeric_failure("swallowtail_cusps: no cusps for eps >= 0");

    const double e = -nf.epsilon;  // |eps|
    const double a = nf.a;
    const double norm = std::sqrt(e * (a + e));

    std::array<LocalCusp, 2> out;
    for (int b = 0; b < 2; ++b) {
        const double theta = (b == 0 ? 1.0 : -1.0) * std::sqrt(e / a);
        LocalCusp lc;
        lc.theta = theta;
        lc.point = nf.at(theta);
        // tangent at the tip points along (x'', y'') = 2(a*theta, e)
        lc.rotation = wrap_angle(std::atan2(e, a * theta) + nf.rotation);
        lc.quad_coeff = norm;
        lc.cubic_coeff = 2 * a * e / (3 * norm);
        out[b] = lc;
    }
    return out;
}

struct SimilarityFit {
    double gamma = 0;          // |eps| = |t'|^gamma
    double tip_exponent = 0;   // 2/3 for a cusp, 4/3 for a swallowtail
    double residual = 0;       // rms of the log-log gamma regression
};

/// Final classification of one singularity. gamma is absent when the input
/// carried no usable time labels.
struct SingularityReport {
    FormKind kind = FormKind::cusp;
    NormalForm form;                       // fitted normal form
    std::optional<double> gamma;
    std::optional<double> tip_exponent;
    double scaling_residual = 0;
    Vec2 location;                         // singular point in problem coordinates
    std::optional<double> critical_value;  // t0 or critical parameter, when known
    double fit_residual = 0;
};

/// Time- or parameter-indexed set of curves; labels are distances t' to the
/// singularity when used for scaling collapse.
struct CurveFamily {
    std::vector<ParametricCurve> curves;
};

}  // namespace cusplab
