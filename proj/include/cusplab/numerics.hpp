#pragma once

// Small shared numerical kernels: bracketed root finding, golden-section
// minimization, adaptive Gauss-Kronrod quadrature, classical RK4 and linear
// least squares. Everything is deterministic and allocation-light.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "cusplab/core.hpp"

namespace cusplab {

/// Bisection on [lo, hi]; f(lo) and f(hi) must have opposite signs.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol = 1e-14, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw numeric_failure("bisect: endpoints do not bracket a root");
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section minimization of a unimodal function on [lo, hi].
template <typename F>
double golden_min(F&& f, double lo, double hi, double tol = 1e-10, int max_iter = 200) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && b - a > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

namespace detail {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule, on [-1, 1].
inline constexpr std::array<double, 8> kronrod_x = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
inline constexpr std::array<double, 8> kronrod_w = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299786,
    0.0229353220105292,
};
inline constexpr std::array<double, 4> gauss_w = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
};

template <typename T, typename F>
void gk15(F&& f, double a, double b, T& kronrod, double& err_scale) {
    const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
    T fc = f(mid);
    T gauss = gauss_w[0] * fc;
    kronrod = kronrod_w[0] * fc;
    for (int i = 1; i < 8; ++i) {
        T fsum = f(mid - h * kronrod_x[i]) + f(mid + h * kronrod_x[i]);
        kronrod = kronrod + kronrod_w[i] * fsum;
        if (i % 2 == 0) gauss = gauss + gauss_w[i / 2] * fsum;
    }
    kronrod = h * kronrod;
    gauss = h * gauss;
    err_scale = std::abs(kronrod - gauss);
}

template <typename T, typename F>
T integrate_rec(F&& f, double a, double b, double tol, int depth) {
    T whole;
    double err;
    gk15<T>(f, a, b, whole, err);
    if (err <= tol || depth >= 48) return whole;
    const double mid = 0.5 * (a + b);
    return integrate_rec<T>(f, a, mid, 0.5 * tol, depth + 1) +
           integrate_rec<T>(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b] to absolute tolerance.
/// Works for double and std::complex<double> integrands.
template <typename T = double, typename F>
T integrate(F&& f, double a, double b, double tol = 1e-12) {
    if (a == b) return T{};
    return detail::integrate_rec<T>(f, a, b, tol, 0);
}

/// One classical RK4 step of y' = f(t, y) for a fixed-size state.
template <std::size_t N, typename F>
std::array<double, N> rk4_step(F&& f, double t, const std::array<double, N>& y, double h) {
    auto add = [](const std::array<double, N>& u, const std::array<double, N>& v, double s) {
        std::array<double, N> r;
        for (std::size_t i = 0; i < N; ++i) r[i] = u[i] + s * v[i];
        return r;
    };
    const auto k1 = f(t, y);
    const auto k2 = f(t + 0.5 * h, add(y, k1, 0.5 * h));
    const auto k3 = f(t + 0.5 * h, add(y, k2, 0.5 * h));
    const auto k4 = f(t + h, add(y, k3, h));
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double rms = 0;
};

/// Ordinary least-squares line through (x, y) pairs.
inline LineFit linfit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw invalid_input("linfit: need at least two matched samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-300) throw numeric_failure("linfit: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.slope * x[i] - fit.intercept;
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

/// Solve the small dense system A x = b by Gaussian elimination with partial
/// pivoting. A is row-major n*n. Used for least-squares normal equations.
inline std::vector<double> solve_dense(std::vector<double> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
        if (std::abs(A[piv * n + col]) < 1e-300)
            throw numeric_failure("solve_dense: singular matrix");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(A[col * n + c], A[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = A[r * n + col] / A[col * n + col];
            if (m == 0) continue;
            for (std::size_t c = col; c < n; ++c) A[r * n + c] -= m * A[col * n + c];
            b[r] -= m * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= A[i * n + c] * x[c];
        x[i] = s / A[i * n + i];
    }
    return x;
}

/// Uniform grid of n points on [lo, hi], endpoints included.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2) throw invalid_input("linspace: need at least two points");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

}  // namespace cusplab
