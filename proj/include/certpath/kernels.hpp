#pragma once

// Batched, data-parallel kernels. Each kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`; both compute
// every element independently, so their outputs are bit-identical.

#include <span>
#include <vector>

#include "certpath/polynomial.hpp"

namespace certpath::kernels {

template <class R>
struct DeterminantSample {
    Complex<R> value;
    /// Hadamard bound (product of row 2-norms); scale for "numerically zero".
    R hadamard = R(0);
};

/// Determinant of a dense row-major n x n matrix by partial-pivot elimination.
template <class R>
Complex<R> determinant(std::vector<Complex<R>> a, std::size_t n);

/// Sylvester matrix of f(x, .) and g(x, .) using their formal y-degrees.
template <class R>
std::vector<Complex<R>> sylvester_matrix(const BivPoly<R>& f, const BivPoly<R>& g, const Complex<R>& x);

/// Displacement of a fiber between two base points: the smallest achievable
/// maximum distance over all pairings of roots (bottleneck matching).
template <class R>
R bottleneck_displacement(std::span<const Complex<R>> a, std::span<const Complex<R>> b);

namespace serial {

template <class R>
std::vector<DeterminantSample<R>> sylvester_determinants(const BivPoly<R>& f, const BivPoly<R>& g,
                                                         std::span<const Complex<R>> xs);

/// For each x2 in `xs`, the bottleneck displacement between `base_fiber` and
/// the roots of f(x2, .).
template <class R>
std::vector<R> fiber_displacements(const BivPoly<R>& f, std::span<const Complex<R>> base_fiber,
                                   std::span<const Complex<R>> xs, const R& root_tol);

}  // namespace serial

namespace parallel {

template <class R>
std::vector<DeterminantSample<R>> sylvester_determinants(const BivPoly<R>& f, const BivPoly<R>& g,
                                                         std::span<const Complex<R>> xs);

template <class R>
std::vector<R> fiber_displacements(const BivPoly<R>& f, std::span<const Complex<R>> base_fiber,
                                   std::span<const Complex<R>> xs, const R& root_tol);

}  // namespace parallel

/// Dispatches to the parallel kernel when requested and supported by R.
template <class R>
std::vector<DeterminantSample<R>> sylvester_determinants(const BivPoly<R>& f, const BivPoly<R>& g,
                                                         std::span<const Complex<R>> xs, bool allow_parallel) {
    if (allow_parallel && RealTraits<R>::parallel_kernels) return parallel::sylvester_determinants(f, g, xs);
    return serial::sylvester_determinants(f, g, xs);
}

template <class R>
std::vector<R> fiber_displacements(const BivPoly<R>& f, std::span<const Complex<R>> base_fiber,
                                   std::span<const Complex<R>> xs, const R& root_tol, bool allow_parallel) {
    if (allow_parallel && RealTraits<R>::parallel_kernels)
        return parallel::fiber_displacements(f, base_fiber, xs, root_tol);
    return serial::fiber_displacements(f, base_fiber, xs, root_tol);
}

}  // namespace certpath::kernels
