#pragma once

#include <vector>

#include "certpath/polynomial.hpp"
#include "certpath/rootfinder.hpp"

namespace certpath {

/// One evaluation of the epsilon-delta bound at a base point x1.
template <class R>
struct BoundReport {
    R rho = R(0);
    R Y = R(0);
    R M = R(0);
    R epsilon = R(0);
    R delta = R(0);
    /// Upper bounds for |a_k| on the rho-circle, k = 1..n in leading-first
    /// order (coeff_upper[0] belongs to a_1, the coefficient of y^(n-1)).
    std::vector<R> coeff_upper;
    /// Lower bound for |a_0| on the rho-circle.
    R coeff_lower = R(0);
    RootSet<R> fiber;
    /// Distance from x1 to the zeros of a_0 * Delta_y(f) (+inf if none).
    R critical_distance = R(0);
};

/// Everything about a curve that does not depend on the base point.
template <class R>
struct CurveAnalysis {
    BivPoly<R> f;
    BivPoly<R> fx;
    BivPoly<R> fy;
    std::vector<Complex<R>> leading_roots;
    std::vector<Complex<R>> discriminant_roots;
    /// Union of the two root lists above.
    std::vector<Complex<R>> critical;
    R root_tol = R(0);

    /// Throws NotSquareFree when Delta_y(f) vanishes identically.
    static CurveAnalysis analyze(const BivPoly<R>& f, const ResultantOptions& ropts = {},
                                 R root_tol = default_root_tolerance<R>());
};

/// Roots of f(x, .); throws LeadingCoefficientVanishes when a_0(x) is
/// numerically zero.
template <class R>
RootSet<R> fiber(const BivPoly<R>& f, const Complex<R>& x, const R& tol = default_root_tolerance<R>());

/// 2 max_k |a_k / a_0|^(1/k), leading-first coefficients.
template <class R>
R fujiwara_bound(const UniPoly<R>& p);

/// Upper: sum_k |a_k| (|x1| + rho)^(n-k). Lower: |a_0| prod (|r - x1| - rho)
/// over the roots r of a; throws RootInsideCircle if a root lies within rho.
template <class R>
R coeff_bounds_on_circle(const UniPoly<R>& a, const Complex<R>& x1, const R& rho, bool want_lower);

/// Lower bound with the roots of `a` supplied by the caller.
template <class R>
R coeff_lower_bound(const UniPoly<R>& a, std::span<const Complex<R>> roots, const Complex<R>& x1, const R& rho);

/// max_j |f_x / f_y| over the fiber; throws CriticalFiber when some |f_y|
/// is within 100 residuals of zero.
template <class R>
R derivative_bound_Y(const BivPoly<R>& f, const Complex<R>& x1, const RootSet<R>& fiber);

template <class R>
R derivative_bound_Y(const CurveAnalysis<R>& curve, const Complex<R>& x1, const RootSet<R>& fiber);

/// First-order error estimate of the computed fiber roots:
/// max_j (|f(x, r_j)| + rounding bound) / |f_y(x, r_j)|. Infinite when some
/// f_y vanishes.
template <class R>
R fiber_error_estimate(const CurveAnalysis<R>& curve, const Complex<R>& x, const RootSet<R>& fiber);

/// delta for given (rho, Y, M, epsilon).
template <class R>
R delta_from_ingredients(const R& rho, const R& Y, const R& M, const R& epsilon);

/// The branch formula as printed (three cases), for cross-checks.
template <class R>
R delta_closed_form(const R& rho, const R& Y, const R& M, const R& epsilon);

template <class R>
BoundReport<R> compute_delta(const CurveAnalysis<R>& curve, const Complex<R>& x1, const R& epsilon,
                             double rho_fraction = 0.5);

/// Same bound at a fiber the caller has already computed.
template <class R>
BoundReport<R> compute_delta(const CurveAnalysis<R>& curve, const Complex<R>& x1, const R& epsilon,
                             double rho_fraction, RootSet<R> fiber);

template <class R>
BoundReport<R> compute_delta(const BivPoly<R>& f, const Complex<R>& x1, const R& epsilon, double rho_fraction = 0.5);

/// Linear range estimate: (delta' / delta) * epsilon.
template <class R>
R refine_epsilon(const BoundReport<R>& report, const R& delta_prime);

/// delta' (Y + M delta' / (rho (rho - delta'))).
template <class R>
R refine_epsilon_alt(const BoundReport<R>& report, const R& delta_prime);

}  // namespace certpath
