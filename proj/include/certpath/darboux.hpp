#pragma once

#include <utility>
#include <vector>

#include "certpath/continuation.hpp"
#include "certpath/polynomial.hpp"

namespace certpath {

/// Homogeneous coordinates (z : w) on the complex projective line; w = 0 is
/// infinity.
template <class R>
struct ProjectivePoint {
    Complex<R> z = Complex<R>(0);
    Complex<R> w = Complex<R>(1);

    static ProjectivePoint finite(const Complex<R>& x) { return {x, Complex<R>(1)}; }
    static ProjectivePoint infinity() { return {Complex<R>(1), Complex<R>(0)}; }

    R norm() const;
    /// Scaled to unit Euclidean norm.
    ProjectivePoint normalized() const;
    /// z / w; throws InfiniteValue at infinity.
    Complex<R> affine() const;
    bool is_infinite(const R& tol = R(0)) const;
};

/// [p, q] = p.z q.w - p.w q.z
template <class R>
Complex<R> bracket(const ProjectivePoint<R>& p, const ProjectivePoint<R>& q);

/// Chordal distance |z1 w2 - z2 w1| of the normalized representatives; in [0, 1].
template <class R>
R chordal_distance(const ProjectivePoint<R>& p, const ProjectivePoint<R>& q);

template <class R>
bool projective_equal(const ProjectivePoint<R>& p, const ProjectivePoint<R>& q, const R& tol);

/// x -> (a x + b) / (c x + d)
template <class R>
struct MoebiusMap {
    Complex<R> a = Complex<R>(1), b = Complex<R>(0), c = Complex<R>(0), d = Complex<R>(1);

    Complex<R> det() const { return a * d - b * c; }
    ProjectivePoint<R> operator()(const ProjectivePoint<R>& p) const { return {a * p.z + b * p.w, c * p.z + d * p.w}; }
    /// Composition: (m * n)(p) = m(n(p)).
    friend MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    MoebiusMap scaled(const Complex<R>& s) const { return {s * a, s * b, s * c, s * d}; }
    /// Derivative at a fixed point p, computed as det / lambda^2 with lambda the
    /// eigenvalue belonging to p; independent of the matrix scale.
    Complex<R> multiplier_at_fixed_point(const ProjectivePoint<R>& p) const;
};

/// Matrix of polynomials in mu.
template <class R>
struct MoebiusPencil {
    UniPoly<R> a, b, c, d;

    MoebiusMap<R> at(const Complex<R>& mu) const { return {a(mu), b(mu), c(mu), d(mu)}; }
    UniPoly<R> det() const { return a * d - b * c; }
    friend MoebiusPencil operator*(const MoebiusPencil& m, const MoebiusPencil& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
};

template <class R>
struct DiscreteCurve {
    std::vector<ProjectivePoint<R>> vertices;

    std::size_t edges() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    /// Throws DegenerateQuadruple unless consecutive vertices are distinct.
    void check_regular(const R& tol = R(1e-14)) const;
    DiscreteCurve reversed() const;
};

/// [a,c][b,d] / ([a,d][b,c]) as a projective value (numerator : denominator).
/// Throws DegenerateQuadruple when both vanish.
template <class R>
ProjectivePoint<R> cross_ratio_projective(const ProjectivePoint<R>& a, const ProjectivePoint<R>& b,
                                          const ProjectivePoint<R>& c, const ProjectivePoint<R>& d);

/// Affine value of cross_ratio_projective; throws InfiniteValue for infinity.
template <class R>
Complex<R> cross_ratio(const ProjectivePoint<R>& a, const ProjectivePoint<R>& b, const ProjectivePoint<R>& c,
                       const ProjectivePoint<R>& d);

/// The map d -> c with cross_ratio(a, b, c, d) = mu. Fixes a and b.
template <class R>
MoebiusMap<R> darboux_step(const ProjectivePoint<R>& a, const ProjectivePoint<R>& b, const Complex<R>& mu);

/// Same map with mu as the polynomial variable (entries of degree <= 1).
template <class R>
MoebiusPencil<R> darboux_step_pencil(const ProjectivePoint<R>& a, const ProjectivePoint<R>& b);

/// M_n * ... * M_1 over the edges of gamma.
template <class R>
MoebiusPencil<R> darboux_pencil(const DiscreteCurve<R>& gamma);

/// c x^2 + (d - a) x - b, as a polynomial in (x = mu, y = starting point).
template <class R>
BivPoly<R> closure_curve(const DiscreteCurve<R>& gamma);

/// Both fixed points (eigenvectors); a parabolic map gives a coincident pair.
template <class R>
std::pair<ProjectivePoint<R>, ProjectivePoint<R>> fixed_points(const MoebiusMap<R>& m);

/// Transform vertices g_0 .. g_n starting at g0. In stable mode, when g0 sits
/// on a repelling fixed point of the accumulated map, the vertices are
/// computed along the reversed curve (where that point attracts) and
/// reversed back.
template <class R>
DiscreteCurve<R> transform_vertices(const DiscreteCurve<R>& gamma, const ProjectivePoint<R>& g0,
                                    const Complex<R>& mu, bool stable);

/// Regular n-gon vertices e^(2 pi i j / n), j = 0..n (closed).
template <class R>
DiscreteCurve<R> regular_polygon(int n);

struct PentagonOptions {
    TraceOptions trace;
    /// Offset of the circle centre beyond half the ramification point.
    double centre_offset = 1e-3;
    int turns = 2;
};

template <class R>
struct PentagonRun {
    BivPoly<R> closure;
    R ramification = R(0);
    Complex<R> centre;
    R radius = R(0);
    TraceLog<R> log;
    /// Index into log.steps of the point ending each full turn.
    std::vector<std::size_t> turn_ends;
};

/// Traces the starting point of a closed Darboux transform of the regular
/// pentagon as mu runs counterclockwise around the circle through 0 centred
/// just beyond half the ramification point ((3 + sqrt 5) / 8).
template <class R>
PentagonRun<R> run_pentagon_experiment(const PentagonOptions& opts = {});

}  // namespace certpath
