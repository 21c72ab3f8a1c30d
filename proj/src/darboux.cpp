#include "certpath/darboux.hpp"

#include <algorithm>
#include <cmath>

namespace certpath {

template <class R>
R ProjectivePoint<R>::norm() const {
    using std::sqrt;
    return sqrt(std::norm(z) + std::norm(w));
}

template <class R>
ProjectivePoint<R> ProjectivePoint<R>::normalized() const {
    const R n = norm();
    if (n == R(0)) throw Error(ErrorKind::DegenerateQuadruple, "projective point (0 : 0)");
    return {z / n, w / n};
}

template <class R>
Complex<R> ProjectivePoint<R>::affine() const {
    if (w == Complex<R>(0)) throw Error(ErrorKind::InfiniteValue, "point at infinity has no affine value");
    return z / w;
}

template <class R>
bool ProjectivePoint<R>::is_infinite(const R& tol) const {
    return magnitude(w) <= tol * norm();
}

template <class R>
Complex<R> bracket(const ProjectivePoint<R>& p, const ProjectivePoint<R>& q) {
    return p.z * q.w - p.w * q.z;
}

template <class R>
R chordal_distance(const ProjectivePoint<R>& p, const ProjectivePoint<R>& q) {
    return magnitude(bracket(p.normalized(), q.normalized()));
}

template <class R>
bool projective_equal(const ProjectivePoint<R>& p, const ProjectivePoint<R>& q, const R& tol) {
    return magnitude(bracket(p, q)) <= tol * p.norm() * q.norm();
}

template <class R>
Complex<R> MoebiusMap<R>::multiplier_at_fixed_point(const ProjectivePoint<R>& p) const {
    const ProjectivePoint<R> u = p.normalized();
    const ProjectivePoint<R> mu = (*this)(u);
    // Rayleigh quotient u^H M u with |u| = 1.
    const Complex<R> lambda = std::conj(u.z) * mu.z + std::conj(u.w) * mu.w;
    if (lambda == Complex<R>(0)) throw Error(ErrorKind::DegenerateQuadruple, "point is not a fixed point");
    return det() / (lambda * lambda);
}

template <class R>
void DiscreteCurve<R>::check_regular(const R& tol) const {
    if (vertices.size() < 2) throw Error(ErrorKind::InvalidArgument, "a discrete curve needs at least two vertices");
    for (std::size_t j = 1; j < vertices.size(); ++j)
        if (chordal_distance(vertices[j - 1], vertices[j]) <= tol)
            throw Error(ErrorKind::DegenerateQuadruple,
                        "consecutive vertices " + std::to_string(j - 1) + " and " + std::to_string(j) + " coincide");
}

template <class R>
DiscreteCurve<R> DiscreteCurve<R>::reversed() const {
    return {std::vector<ProjectivePoint<R>>(vertices.rbegin(), vertices.rend())};
}

template <class R>
ProjectivePoint<R> cross_ratio_projective(const ProjectivePoint<R>& a, const ProjectivePoint<R>& b,
                                          const ProjectivePoint<R>& c, const ProjectivePoint<R>& d) {
    const ProjectivePoint<R> an = a.normalized(), bn = b.normalized(), cn = c.normalized(), dn = d.normalized();
    const Complex<R> num = bracket(an, cn) * bracket(bn, dn);
    const Complex<R> den = bracket(an, dn) * bracket(bn, cn);
    const R tiny = R(16) * RealTraits<R>::epsilon();
    if (magnitude(num) <= tiny && magnitude(den) <= tiny)
        throw Error(ErrorKind::DegenerateQuadruple, "cross-ratio of a degenerate quadruple");
    return {num, den};
}

template <class R>
Complex<R> cross_ratio(const ProjectivePoint<R>& a, const ProjectivePoint<R>& b, const ProjectivePoint<R>& c,
                       const ProjectivePoint<R>& d) {
    const ProjectivePoint<R> v = cross_ratio_projective(a, b, c, d);
    if (v.w == Complex<R>(0)) throw Error(ErrorKind::InfiniteValue, "cross-ratio is infinite");
    return v.z / v.w;
}

template <class R>
MoebiusMap<R> darboux_step(const ProjectivePoint<R>& a, const ProjectivePoint<R>& b, const Complex<R>& mu) {
    if (chordal_distance(a, b) <= R(16) * RealTraits<R>::epsilon())
        throw Error(ErrorKind::DegenerateQuadruple, "Darboux step along a degenerate edge");
    const Complex<R> one(1);
    return {mu * b.z * a.w - a.z * b.w, -(mu - one) * a.z * b.z, (mu - one) * a.w * b.w, b.z * a.w - mu * a.z * b.w};
}

template <class R>
MoebiusPencil<R> darboux_step_pencil(const ProjectivePoint<R>& a, const ProjectivePoint<R>& b) {
    if (chordal_distance(a, b) <= R(16) * RealTraits<R>::epsilon())
        throw Error(ErrorKind::DegenerateQuadruple, "Darboux step along a degenerate edge");
    auto lin = [](const Complex<R>& c0, const Complex<R>& c1) { return UniPoly<R>::exact({c0, c1}); };
    const Complex<R> ab = a.z * b.z;
    const Complex<R> aw_bw = a.w * b.w;
    return {lin(-a.z * b.w, b.z * a.w), lin(ab, -ab), lin(-aw_bw, aw_bw), lin(b.z * a.w, -a.z * b.w)};
}

template <class R>
MoebiusPencil<R> darboux_pencil(const DiscreteCurve<R>& gamma) {
    gamma.check_regular();
    MoebiusPencil<R> m{UniPoly<R>::constant(Complex<R>(1)), UniPoly<R>(), UniPoly<R>(), UniPoly<R>::constant(Complex<R>(1))};
    for (std::size_t j = 1; j < gamma.vertices.size(); ++j)
        m = darboux_step_pencil(gamma.vertices[j - 1].normalized(), gamma.vertices[j].normalized()) * m;
    return m;
}

template <class R>
BivPoly<R> closure_curve(const DiscreteCurve<R>& gamma) {
    const MoebiusPencil<R> m = darboux_pencil(gamma);
    return BivPoly<R>({-m.b, m.d - m.a, m.c});
}

template <class R>
std::pair<ProjectivePoint<R>, ProjectivePoint<R>> fixed_points(const MoebiusMap<R>& m) {
    using std::sqrt;
    if (m.det() == Complex<R>(0)) throw Error(ErrorKind::DegenerateInput, "degenerate Moebius map");
    const Complex<R> tr = m.a + m.d;
    const Complex<R> disc = sqrt(tr * tr - R(4) * m.det());
    // Pick the sign that avoids cancellation, then recover the other
    // eigenvalue from the determinant.
    const Complex<R> l1 = (std::real(std::conj(tr) * disc) >= R(0) ? tr + disc : tr - disc) / R(2);
    const Complex<R> l2 = l1 == Complex<R>(0) ? Complex<R>(0) : m.det() / l1;
    auto eigvec = [&](const Complex<R>& lambda) {
        const ProjectivePoint<R> u{m.b, lambda - m.a};
        const ProjectivePoint<R> v{lambda - m.d, m.c};
        const ProjectivePoint<R> best = u.norm() >= v.norm() ? u : v;
        if (best.norm() == R(0)) return ProjectivePoint<R>::infinity();  // scalar matrix
        return best.normalized();
    };
    return {eigvec(l1), eigvec(l2)};
}

template <class R>
DiscreteCurve<R> transform_vertices(const DiscreteCurve<R>& gamma, const ProjectivePoint<R>& g0,
                                    const Complex<R>& mu, bool stable) {
    gamma.check_regular();
    auto sweep = [&](const DiscreteCurve<R>& curve, const ProjectivePoint<R>& start) {
        DiscreteCurve<R> out;
        out.vertices.push_back(start.normalized());
        for (std::size_t j = 1; j < curve.vertices.size(); ++j) {
            const MoebiusMap<R> step = darboux_step(curve.vertices[j - 1], curve.vertices[j], mu);
            out.vertices.push_back(step(out.vertices.back()).normalized());
        }
        return out;
    };
    if (!stable) return sweep(gamma, g0);

    MoebiusMap<R> total;
    for (std::size_t j = 1; j < gamma.vertices.size(); ++j)
        total = darboux_step(gamma.vertices[j - 1].normalized(), gamma.vertices[j].normalized(), mu) * total;
    const auto [p, q] = fixed_points(total);
    const ProjectivePoint<R>& nearest = chordal_distance(p, g0) <= chordal_distance(q, g0) ? p : q;
    const R near_tol = R(1e-4);
    if (chordal_distance(nearest, g0) <= near_tol && magnitude(total.multiplier_at_fixed_point(nearest)) > R(1)) {
        DiscreteCurve<R> back = sweep(gamma.reversed(), g0);
        return back.reversed();
    }
    return sweep(gamma, g0);
}

template <class R>
DiscreteCurve<R> regular_polygon(int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "polygon needs at least two sides");
    DiscreteCurve<R> g;
    const R two_pi = R(2) * pi<R>();
    for (int j = 0; j <= n; ++j) g.vertices.push_back(ProjectivePoint<R>::finite(std::polar(R(1), two_pi * R(j) / R(n))));
    return g;
}

template <class R>
PentagonRun<R> run_pentagon_experiment(const PentagonOptions& opts) {
    using std::sqrt;
    if (opts.turns < 1) throw Error(ErrorKind::InvalidArgument, "turns must be positive");
    PentagonRun<R> run;
    run.closure = closure_curve(regular_polygon<R>(5));
    run.ramification = (R(3) + sqrt(R(5))) / R(8);
    const R c = run.ramification / R(2) + R(opts.centre_offset);
    run.centre = Complex<R>(c);
    run.radius = c;
    const R start = pi<R>();
    const ParamPath<R> path =
        ParamPath<R>::arc(run.centre, run.radius, start, start + R(2 * opts.turns) * pi<R>());
    const Complex<R> y0 = std::polar(R(1), R(2) * pi<R>() / R(5));
    run.log = trace_curve(run.closure, path, y0, opts.trace);
    for (int k = 1; k <= opts.turns; ++k) {
        const R Tk = R(k) / R(opts.turns);
        for (std::size_t i = 0; i < run.log.steps.size(); ++i)
            if (run.log.steps[i].T == Tk) {
                run.turn_ends.push_back(i);
                break;
            }
    }
    return run;
}

#define CERTPATH_INSTANTIATE_DARBOUX(R)                                                                           \
    template struct ProjectivePoint<R>;                                                                           \
    template Complex<R> bracket(const ProjectivePoint<R>&, const ProjectivePoint<R>&);                            \
    template R chordal_distance(const ProjectivePoint<R>&, const ProjectivePoint<R>&);                            \
    template bool projective_equal(const ProjectivePoint<R>&, const ProjectivePoint<R>&, const R&);               \
    template struct MoebiusMap<R>;                                                                                \
    template struct DiscreteCurve<R>;                                                                             \
    template ProjectivePoint<R> cross_ratio_projective(const ProjectivePoint<R>&, const ProjectivePoint<R>&,      \
                                                       const ProjectivePoint<R>&, const ProjectivePoint<R>&);     \
    template Complex<R> cross_ratio(const ProjectivePoint<R>&, const ProjectivePoint<R>&, const ProjectivePoint<R>&, \
                                    const ProjectivePoint<R>&);                                                   \
    template MoebiusMap<R> darboux_step(const ProjectivePoint<R>&, const ProjectivePoint<R>&, const Complex<R>&);  \
    template MoebiusPencil<R> darboux_step_pencil(const ProjectivePoint<R>&, const ProjectivePoint<R>&);          \
    template MoebiusPencil<R> darboux_pencil(const DiscreteCurve<R>&);                                            \
    template BivPoly<R> closure_curve(const DiscreteCurve<R>&);                                                   \
    template std::pair<ProjectivePoint<R>, ProjectivePoint<R>> fixed_points(const MoebiusMap<R>&);                \
    template DiscreteCurve<R> transform_vertices(const DiscreteCurve<R>&, const ProjectivePoint<R>&,              \
                                                 const Complex<R>&, bool);                                        \
    template DiscreteCurve<R> regular_polygon(int);                                                               \
    template PentagonRun<R> run_pentagon_experiment(const PentagonOptions&);

CERTPATH_INSTANTIATE_DARBOUX(double)
CERTPATH_INSTANTIATE_DARBOUX(MpReal)

}  // namespace certpath
