#include "certpath/kernels.hpp"

#include <algorithm>
#include <limits>

#include "certpath/rootfinder.hpp"

namespace certpath::kernels {

template <class R>
Complex<R> determinant(std::vector<Complex<R>> a, std::size_t n) {
    Complex<R> det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        R best = magnitude(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const R m = magnitude(a[r * n + col]);
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (best == R(0)) return Complex<R>(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[piv * n + j]);
            det = -det;
        }
        const Complex<R> d = a[col * n + col];
        det *= d;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex<R> f = a[r * n + col] / d;
            if (f == Complex<R>(0)) continue;
            for (std::size_t j = col + 1; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
        }
    }
    return det;
}

template <class R>
std::vector<Complex<R>> sylvester_matrix(const BivPoly<R>& f, const BivPoly<R>& g, const Complex<R>& x) {
    const std::size_t m = static_cast<std::size_t>(f.deg_y());
    const std::size_t n = static_cast<std::size_t>(g.deg_y());
    const std::size_t size = m + n;
    std::vector<Complex<R>> a(size * size, Complex<R>(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k) a[i * size + i + (m - k)] = f.y_coeff(k)(x);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k) a[(n + i) * size + i + (n - k)] = g.y_coeff(k)(x);
    return a;
}

namespace {

template <class R>
DeterminantSample<R> sylvester_sample(const BivPoly<R>& f, const BivPoly<R>& g, const Complex<R>& x) {
    using std::sqrt;
    const std::size_t size = static_cast<std::size_t>(f.deg_y() + g.deg_y());
    if (size == 0) return {Complex<R>(1), R(1)};
    auto a = sylvester_matrix(f, g, x);
    R hadamard(1);
    for (std::size_t r = 0; r < size; ++r) {
        R s(0);
        for (std::size_t j = 0; j < size; ++j) s += std::norm(a[r * size + j]);
        hadamard *= sqrt(s);
    }
    return {determinant(std::move(a), size), hadamard};
}

// Kuhn augmenting path on the bipartite graph of pairs within `limit`.
template <class R>
bool try_assign(std::size_t i, const std::vector<R>& dist, std::size_t n, const R& limit, std::vector<int>& match,
                std::vector<char>& seen) {
    for (std::size_t j = 0; j < n; ++j) {
        if (seen[j] || dist[i * n + j] > limit) continue;
        seen[j] = 1;
        if (match[j] < 0 || try_assign(static_cast<std::size_t>(match[j]), dist, n, limit, match, seen)) {
            match[j] = static_cast<int>(i);
            return true;
        }
    }
    return false;
}

template <class R>
bool perfect_matching(const std::vector<R>& dist, std::size_t n, const R& limit) {
    std::vector<int> match(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<char> seen(n, 0);
        if (!try_assign(i, dist, n, limit, match, seen)) return false;
    }
    return true;
}

template <class R>
R displacement_at(const BivPoly<R>& f, std::span<const Complex<R>> base, const Complex<R>& x, const R& tol) {
    try {
        const auto rs = all_roots(f.fiber_polynomial(x), tol);
        return bottleneck_displacement<R>(base, std::span<const Complex<R>>(rs.roots));
    } catch (const Error&) {
        return std::numeric_limits<R>::infinity();
    }
}

}  // namespace

template <class R>
R bottleneck_displacement(std::span<const Complex<R>> a, std::span<const Complex<R>> b) {
    if (a.size() != b.size()) return std::numeric_limits<R>::infinity();
    const std::size_t n = a.size();
    if (n == 0) return R(0);
    std::vector<R> dist(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = magnitude(a[i] - b[j]);
    std::vector<R> cand = dist;
    std::sort(cand.begin(), cand.end());
    std::size_t lo = 0;
    std::size_t hi = cand.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (perfect_matching(dist, n, cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return cand[lo];
}

namespace serial {

template <class R>
std::vector<DeterminantSample<R>> sylvester_determinants(const BivPoly<R>& f, const BivPoly<R>& g,
                                                         std::span<const Complex<R>> xs) {
    std::vector<DeterminantSample<R>> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = sylvester_sample(f, g, xs[i]);
    return out;
}

template <class R>
std::vector<R> fiber_displacements(const BivPoly<R>& f, std::span<const Complex<R>> base_fiber,
                                   std::span<const Complex<R>> xs, const R& root_tol) {
    std::vector<R> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = displacement_at(f, base_fiber, xs[i], root_tol);
    return out;
}

}  // namespace serial

namespace parallel {

template <class R>
std::vector<DeterminantSample<R>> sylvester_determinants(const BivPoly<R>& f, const BivPoly<R>& g,
                                                         std::span<const Complex<R>> xs) {
    std::vector<DeterminantSample<R>> out(xs.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static) if (n > 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = sylvester_sample(f, g, xs[static_cast<std::size_t>(i)]);
    return out;
}

template <class R>
std::vector<R> fiber_displacements(const BivPoly<R>& f, std::span<const Complex<R>> base_fiber,
                                   std::span<const Complex<R>> xs, const R& root_tol) {
    std::vector<R> out(xs.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = displacement_at(f, base_fiber, xs[static_cast<std::size_t>(i)], root_tol);
    return out;
}

}  // namespace parallel

#define CERTPATH_INSTANTIATE_KERNELS(R)                                                                           \
    template Complex<R> determinant(std::vector<Complex<R>>, std::size_t);                                        \
    template std::vector<Complex<R>> sylvester_matrix(const BivPoly<R>&, const BivPoly<R>&, const Complex<R>&);    \
    template R bottleneck_displacement(std::span<const Complex<R>>, std::span<const Complex<R>>);                 \
    template std::vector<DeterminantSample<R>> serial::sylvester_determinants(const BivPoly<R>&, const BivPoly<R>&, \
                                                                              std::span<const Complex<R>>);       \
    template std::vector<R> serial::fiber_displacements(const BivPoly<R>&, std::span<const Complex<R>>,           \
                                                        std::span<const Complex<R>>, const R&);                   \
    template std::vector<DeterminantSample<R>> parallel::sylvester_determinants(                                  \
        const BivPoly<R>&, const BivPoly<R>&, std::span<const Complex<R>>);                                       \
    template std::vector<R> parallel::fiber_displacements(const BivPoly<R>&, std::span<const Complex<R>>,         \
                                                          std::span<const Complex<R>>, const R&);

CERTPATH_INSTANTIATE_KERNELS(double)
CERTPATH_INSTANTIATE_KERNELS(MpReal)

}  // namespace certpath::kernels
