#pragma once

#include <cmath>
#include <utility>

namespace skyclear {

// Adaptive Simpson integration. An interval is accepted once halving it
// changes the estimate by less than its share of rel_tol * |whole|;
// otherwise it is split and both halves are refined. Evaluation and
// summation order are fixed, so results are reproducible bit for bit.
namespace detail {

template <class F>
double simpson(const F& f, double a, double fa, double b, double fb, double& fm) {
    const double m = 0.5 * (a + b);
    fm = f(m);
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_step(const F& f, double a, double fa, double m, double fm, double b, double fb,
                     double whole, double eps, int depth) {
    double fl, fr;
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    fl = f(lm);
    fr = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= eps) {
        // Richardson extrapolation of the two Simpson levels.
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, fa, lm, fl, m, fm, left, 0.5 * eps, depth - 1) +
           adaptive_step(f, m, fm, rm, fr, b, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

/// Integrates f over [a, b] to a relative tolerance. `scale_hint`, when
/// nonzero, supplies the magnitude the tolerance is relative to (useful when
/// the caller accumulates several panels into one logical integral).
template <class F>
double integrate_adaptive(const F& f, double a, double b, double rel_tol,
                          double scale_hint = 0.0, int max_depth = 48) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    double fm;
    const double whole = detail::simpson(f, a, fa, b, fb, fm);
    double scale = scale_hint != 0.0 ? std::fabs(scale_hint) : std::fabs(whole);
    if (scale == 0.0) scale = 1e-300;
    const double eps = 15.0 * rel_tol * scale;
    return detail::adaptive_step(f, a, fa, 0.5 * (a + b), fm, b, fb, whole, eps, max_depth);
}

/// Integrates f over [a, b) split into geometrically growing panels starting
/// at width `first_panel`. Handles integrands whose features span several
/// decades (e.g. 1/l tails) better than one uniform refinement.
template <class F>
double integrate_adaptive_geometric(const F& f, double a, double b, double first_panel,
                                    double rel_tol) {
    if (!(b > a)) return 0.0;
    double total = 0.0;
    double lo = a;
    double width = first_panel;
    // First pass gets a magnitude estimate; panel tolerances are relative to
    // the running total, refreshed panel by panel in a fixed order.
    while (lo < b) {
        const double hi = std::min(b, lo + width);
        total += integrate_adaptive(f, lo, hi, rel_tol, total != 0.0 ? total : 0.0);
        lo = hi;
        width *= 2.0;
    }
    return total;
}

}  // namespace skyclear
