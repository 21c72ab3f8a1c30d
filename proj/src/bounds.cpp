#include "certpath/bounds.hpp"

#include <algorithm>
#include <limits>

namespace certpath {

template <class R>
CurveAnalysis<R> CurveAnalysis<R>::analyze(const BivPoly<R>& f, const ResultantOptions& ropts, R root_tol) {
    if (f.deg_y() < 1) throw Error(ErrorKind::InvalidArgument, "curve must have deg_y >= 1");
    CurveAnalysis c;
    c.f = f;
    c.fx = partial_x(f);
    c.fy = partial_y(f);
    c.root_tol = root_tol;
    if (f.leading().degree() >= 1) c.leading_roots = all_roots(f.leading(), root_tol).roots;
    const UniPoly<R> disc = discriminant_y(f, ropts);
    if (disc.degree() >= 1) c.discriminant_roots = all_roots(disc, root_tol).roots;
    c.critical = c.leading_roots;
    c.critical.insert(c.critical.end(), c.discriminant_roots.begin(), c.discriminant_roots.end());
    return c;
}

template <class R>
RootSet<R> fiber(const BivPoly<R>& f, const Complex<R>& x, const R& tol) {
    const UniPoly<R> p = f.fiber_polynomial(x);
    if (p.degree() < f.deg_y() ||
        magnitude(p.leading()) <= R(64) * RealTraits<R>::epsilon() * p.max_abs_coeff())
        throw Error(ErrorKind::LeadingCoefficientVanishes, "a_0(x) vanishes at x = " + to_decimal(x.real()) +
                                                               (x.imag() < 0 ? " - " : " + ") +
                                                               to_decimal(R(x.imag() < 0 ? R(-x.imag()) : x.imag())) + "i");
    return all_roots(p, tol);
}

template <class R>
R fujiwara_bound(const UniPoly<R>& p) {
    using std::pow;
    if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "Fujiwara bound needs degree >= 1");
    if (p.leading() == Complex<R>(0)) throw Error(ErrorKind::LeadingCoefficientVanishes, "zero leading coefficient");
    const int n = p.degree();
    R best(0);
    for (int k = 1; k <= n; ++k) {
        const R ratio = magnitude(p.coeff(static_cast<std::size_t>(n - k)) / p.leading());
        if (ratio > R(0)) best = std::max(best, R(pow(ratio, R(1) / R(k))));
    }
    return R(2) * best;
}

template <class R>
R coeff_lower_bound(const UniPoly<R>& a, std::span<const Complex<R>> roots, const Complex<R>& x1, const R& rho) {
    if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "lower bound of the zero polynomial");
    R prod = magnitude(a.leading());
    for (const auto& r : roots) {
        const R gap = magnitude(r - x1) - rho;
        if (!(gap > R(0)))
            throw Error(ErrorKind::RootInsideCircle, "a root of a_0 lies within rho of x1");
        prod *= gap;
    }
    return prod;
}

template <class R>
R coeff_bounds_on_circle(const UniPoly<R>& a, const Complex<R>& x1, const R& rho, bool want_lower) {
    if (!(rho > R(0))) throw Error(ErrorKind::InvalidArgument, "rho must be positive");
    if (!want_lower) {
        const R r = magnitude(x1) + rho;
        R s(0);
        for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) s = s * r + magnitude(*it);
        return s;
    }
    std::vector<Complex<R>> roots;
    if (a.degree() >= 1) roots = all_roots(a, default_root_tolerance<R>()).roots;
    return coeff_lower_bound<R>(a, roots, x1, rho);
}

namespace {

template <class R>
R y_bound(const BivPoly<R>& fx, const BivPoly<R>& fy, const Complex<R>& x1, const RootSet<R>& fiber) {
    R best(0);
    const R floor = R(100) * fiber.residual_bound;
    for (const auto& y : fiber.roots) {
        const Complex<R> d = fy(x1, y);
        if (magnitude(d) <= floor || d == Complex<R>(0))
            throw Error(ErrorKind::CriticalFiber, "f_y vanishes at a fiber point (repeated root)");
        best = std::max(best, R(magnitude(fx(x1, y) / d)));
    }
    return best;
}

template <class R>
bool third_case(const R& rho, const R& Y, const R& M, const R& epsilon, R& out) {
    using std::abs;
    const R ry = rho * Y;
    const R scale = std::max({M, ry, R(1)});
    if (abs(M - ry) <= R(1e-9) * scale) {
        out = epsilon * rho / (ry + epsilon);
        return true;
    }
    return false;
}

}  // namespace

template <class R>
R derivative_bound_Y(const BivPoly<R>& f, const Complex<R>& x1, const RootSet<R>& fiber) {
    return y_bound(partial_x(f), partial_y(f), x1, fiber);
}

template <class R>
R derivative_bound_Y(const CurveAnalysis<R>& curve, const Complex<R>& x1, const RootSet<R>& fiber) {
    return y_bound(curve.fx, curve.fy, x1, fiber);
}

template <class R>
R fiber_error_estimate(const CurveAnalysis<R>& curve, const Complex<R>& x, const RootSet<R>& fiber) {
    const int n = curve.f.deg_y();
    std::vector<Complex<R>> a;
    for (const auto& c : curve.f.y_coeffs()) a.push_back(c(x));
    R worst(0);
    for (const auto& y : fiber.roots) {
        R scale(0);
        for (auto it = a.rbegin(); it != a.rend(); ++it) scale = scale * magnitude(y) + magnitude(*it);
        const R err = magnitude(curve.f(x, y)) + R(4 * n) * RealTraits<R>::epsilon() * scale;
        const R d = magnitude(curve.fy(x, y));
        if (d == R(0)) return std::numeric_limits<R>::infinity();
        worst = std::max(worst, R(err / d));
    }
    return worst;
}

template <class R>
R delta_from_ingredients(const R& rho, const R& Y, const R& M, const R& epsilon) {
    using std::sqrt;
    R out;
    if (third_case(rho, Y, M, epsilon, out)) return out;
    const R ry = rho * Y;
    const R disc = (ry - epsilon) * (ry - epsilon) + R(4) * epsilon * M;
    return R(2) * epsilon * rho / (sqrt(disc) + ry + epsilon);
}

template <class R>
R delta_closed_form(const R& rho, const R& Y, const R& M, const R& epsilon) {
    using std::sqrt;
    R out;
    if (third_case(rho, Y, M, epsilon, out)) return out;
    const R ry = rho * Y;
    const R disc = (ry - epsilon) * (ry - epsilon) + R(4) * epsilon * M;
    return rho * (sqrt(disc) - (ry + epsilon)) / (R(2) * (M - ry));
}

namespace {

template <class R>
void fill_ingredients(const CurveAnalysis<R>& curve, const Complex<R>& x1, const R& rho, BoundReport<R>& rep) {
    using std::pow;
    const int n = curve.f.deg_y();
    rep.rho = rho;
    rep.coeff_lower = coeff_lower_bound<R>(curve.f.leading(), curve.leading_roots, x1, rho);
    rep.coeff_upper.assign(static_cast<std::size_t>(n), R(0));
    R best(0);
    for (int k = 1; k <= n; ++k) {
        const R up = coeff_bounds_on_circle(curve.f.y_coeff(static_cast<std::size_t>(n - k)), x1, rho, false);
        rep.coeff_upper[static_cast<std::size_t>(k - 1)] = up;
        if (up > R(0)) best = std::max(best, R(pow(up / rep.coeff_lower, R(1) / R(k))));
    }
    rep.M = R(2) * best;
    rep.delta = delta_from_ingredients(rep.rho, rep.Y, rep.M, rep.epsilon);
}

}  // namespace

template <class R>
BoundReport<R> compute_delta(const CurveAnalysis<R>& curve, const Complex<R>& x1, const R& epsilon,
                             double rho_fraction, RootSet<R> fib) {
    if (!(epsilon > R(0))) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    if (!(rho_fraction > 0.0 && rho_fraction < 1.0))
        throw Error(ErrorKind::InvalidArgument, "rho_fraction must lie in (0, 1)");
    using std::abs;
    BoundReport<R> rep;
    rep.epsilon = epsilon;
    rep.critical_distance = min_distance_to<R>(std::span<const Complex<R>>(curve.critical), x1);
    const R guard = R(64) * RealTraits<R>::epsilon() * std::max(R(1), magnitude(x1));
    if (rep.critical_distance <= guard)
        throw Error(ErrorKind::AtCriticalPoint, "x1 lies on the zero set of a_0 * Delta_y(f)");
    rep.fiber = std::move(fib);
    rep.Y = derivative_bound_Y(curve, x1, rep.fiber);

    if (rep.critical_distance < std::numeric_limits<R>::infinity()) {
        fill_ingredients(curve, x1, R(rho_fraction) * rep.critical_distance, rep);
        return rep;
    }
    // No critical points at all: every rho is admissible, keep the best.
    BoundReport<R> best;
    bool have = false;
    const R base = R(1) + magnitude(x1);
    for (int j = -6; j <= 10; ++j) {
        BoundReport<R> trial = rep;
        using std::ldexp;
        fill_ingredients(curve, x1, R(ldexp(base, j)), trial);
        if (!have || trial.delta > best.delta) {
            best = std::move(trial);
            have = true;
        }
    }
    return best;
}

template <class R>
BoundReport<R> compute_delta(const CurveAnalysis<R>& curve, const Complex<R>& x1, const R& epsilon,
                             double rho_fraction) {
    if (!(curve.critical.empty()) &&
        min_distance_to<R>(std::span<const Complex<R>>(curve.critical), x1) <=
            R(64) * RealTraits<R>::epsilon() * std::max(R(1), magnitude(x1)))
        throw Error(ErrorKind::AtCriticalPoint, "x1 lies on the zero set of a_0 * Delta_y(f)");
    return compute_delta(curve, x1, epsilon, rho_fraction, fiber(curve.f, x1, curve.root_tol));
}

template <class R>
BoundReport<R> compute_delta(const BivPoly<R>& f, const Complex<R>& x1, const R& epsilon, double rho_fraction) {
    return compute_delta(CurveAnalysis<R>::analyze(f), x1, epsilon, rho_fraction);
}

template <class R>
R refine_epsilon(const BoundReport<R>& report, const R& delta_prime) {
    return delta_prime / report.delta * report.epsilon;
}

template <class R>
R refine_epsilon_alt(const BoundReport<R>& report, const R& delta_prime) {
    const R& rho = report.rho;
    return delta_prime * (report.Y + report.M * delta_prime / (rho * (rho - delta_prime)));
}

#define CERTPATH_INSTANTIATE_BOUNDS(R)                                                                        \
    template struct CurveAnalysis<R>;                                                                         \
    template RootSet<R> fiber(const BivPoly<R>&, const Complex<R>&, const R&);                                \
    template R fujiwara_bound(const UniPoly<R>&);                                                             \
    template R coeff_bounds_on_circle(const UniPoly<R>&, const Complex<R>&, const R&, bool);                  \
    template R coeff_lower_bound(const UniPoly<R>&, std::span<const Complex<R>>, const Complex<R>&, const R&); \
    template R derivative_bound_Y(const BivPoly<R>&, const Complex<R>&, const RootSet<R>&);                   \
    template R derivative_bound_Y(const CurveAnalysis<R>&, const Complex<R>&, const RootSet<R>&);             \
    template R fiber_error_estimate(const CurveAnalysis<R>&, const Complex<R>&, const RootSet<R>&);           \
    template R delta_from_ingredients(const R&, const R&, const R&, const R&);                                \
    template R delta_closed_form(const R&, const R&, const R&, const R&);                                     \
    template BoundReport<R> compute_delta(const CurveAnalysis<R>&, const Complex<R>&, const R&, double);       \
    template BoundReport<R> compute_delta(const CurveAnalysis<R>&, const Complex<R>&, const R&, double,        \
                                          RootSet<R>);                                                        \
    template BoundReport<R> compute_delta(const BivPoly<R>&, const Complex<R>&, const R&, double);            \
    template R refine_epsilon(const BoundReport<R>&, const R&);                                               \
    template R refine_epsilon_alt(const BoundReport<R>&, const R&);

CERTPATH_INSTANTIATE_BOUNDS(double)
CERTPATH_INSTANTIATE_BOUNDS(MpReal)

}  // namespace certpath
