#pragma once

#include <span>
#include <vector>

#include "certpath/polynomial.hpp"

namespace certpath {

template <class R>
struct RootSet {
    /// With multiplicity; length equals the polynomial degree.
    std::vector<Complex<R>> roots;
    /// max |p(r)| over the returned roots, as evaluated.
    R residual_bound = R(0);
    /// Requested accuracy.
    R tolerance = R(0);

    std::size_t size() const { return roots.size(); }
};

struct RootOptions {
    int max_iterations = 200;
    double angular_offset = 0.376;
    int polish_steps = 3;
};

/// Default root tolerance for the scalar type: 64 ulps at 1.
template <class R>
R default_root_tolerance() {
    return R(64) * RealTraits<R>::epsilon();
}

/// All complex roots of p by Aberth-Ehrlich iteration started on the Fujiwara
/// circle, then a guarded Newton polish.
///
/// A root counts as converged when its last correction is below
/// tol * max(1, |z|) or when |p(z)| is within rounding of zero. Multiple
/// roots come back as clusters whose spread is roughly the (1/m)-th power of
/// the achievable backward error.
template <class R>
RootSet<R> all_roots(const UniPoly<R>& p, const R& tol, const RootOptions& opts = {});

/// Smallest |r_i - r_j| over i != j; throws SingleRoot for fewer than two roots.
template <class R>
R min_pairwise_distance(const RootSet<R>& rs);

/// Smallest |x - r|; +infinity when there are no roots.
template <class R>
R min_distance_to(std::span<const Complex<R>> roots, const Complex<R>& x);

template <class R>
R min_distance_to(const RootSet<R>& rs, const Complex<R>& x) {
    return min_distance_to<R>(std::span<const Complex<R>>(rs.roots), x);
}

}  // namespace certpath
