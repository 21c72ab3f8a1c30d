#include "certpath/rootfinder.hpp"

#include <algorithm>
#include <limits>

namespace certpath {

namespace {

template <class R>
R root_radius(const std::vector<Complex<R>>& c) {
    using std::pow;
    const std::size_t n = c.size() - 1;
    R best(0);
    for (std::size_t k = 1; k <= n; ++k) {
        const R ratio = magnitude(c[n - k] / c[n]);
        if (ratio > R(0)) best = std::max(best, R(pow(ratio, R(1) / R(static_cast<int>(k)))));
    }
    return R(2) * best;
}

// Returns (num, den) with num/den = p(z)/p'(z). For |z| > 1 the reversed
// polynomial is used so that large |z| cannot overflow.
template <class R>
std::pair<Complex<R>, Complex<R>> newton_ratio(const std::vector<Complex<R>>& c, const Complex<R>& z) {
    const std::size_t n = c.size() - 1;
    if (magnitude(z) <= R(1)) {
        Complex<R> p = c[n];
        Complex<R> dp(0);
        for (std::size_t k = n; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        return {p, dp};
    }
    const Complex<R> w = Complex<R>(1) / z;
    // q(w) = sum c[k] w^(n-k)
    Complex<R> q = c[0];
    Complex<R> dq(0);
    for (std::size_t k = 1; k <= n; ++k) {
        dq = dq * w + q;
        q = q * w + c[k];
    }
    return {z * q, R(static_cast<int>(n)) * q - w * dq};
}

template <class R>
R abs_poly(const std::vector<Complex<R>>& c, const R& r) {
    R s(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * r + magnitude(*it);
    return s;
}

template <class R>
Complex<R> horner(const std::vector<Complex<R>>& c, const Complex<R>& z) {
    Complex<R> s(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
    return s;
}

}  // namespace

template <class R>
RootSet<R> all_roots(const UniPoly<R>& p, const R& tol, const RootOptions& opts) {
    if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "root finding needs degree >= 1");
    if (p.leading() == Complex<R>(0) || magnitude(p.leading()) <= p.trim_threshold())
        throw Error(ErrorKind::LeadingCoefficientVanishes, "leading coefficient is below the trim threshold");

    RootSet<R> out;
    out.tolerance = tol;

    std::vector<Complex<R>> c = p.coeffs();
    std::size_t zeros = 0;
    while (zeros < c.size() - 1 && c[zeros] == Complex<R>(0)) ++zeros;
    out.roots.assign(zeros, Complex<R>(0));
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
    const Complex<R> lead = c.back();
    for (auto& v : c) v /= lead;
    const std::size_t n = c.size() - 1;

    if (n == 1) {
        out.roots.push_back(-c[0]);
    } else if (n > 1) {
        const R eps = RealTraits<R>::epsilon();
        const R radius = root_radius(c);
        const R two_pi = R(2) * pi<R>();
        std::vector<Complex<R>> z(n);
        for (std::size_t k = 0; k < n; ++k)
            z[k] = std::polar(radius, two_pi * R(static_cast<int>(k)) / R(static_cast<int>(n)) + R(opts.angular_offset));
        std::vector<char> done(n, 0);
        std::size_t remaining = n;

        for (int it = 0; it < opts.max_iterations && remaining > 0; ++it) {
            for (std::size_t k = 0; k < n; ++k) {
                if (done[k]) continue;
                const auto [num, den] = newton_ratio(c, z[k]);
                const R zk = magnitude(z[k]);
                const R backward = R(4 * static_cast<int>(n)) * eps * abs_poly(c, zk);
                if (magnitude(horner(c, z[k])) <= backward) {
                    done[k] = 1;
                    --remaining;
                    continue;
                }
                Complex<R> s(0);
                for (std::size_t j = 0; j < n; ++j)
                    if (j != k) s += Complex<R>(1) / (z[k] - z[j]);
                const Complex<R> denom = den - num * s;
                if (denom == Complex<R>(0) || !is_finite(denom)) {
                    z[k] *= Complex<R>(R(1) + R(1e-3), R(1e-3));
                    continue;
                }
                const Complex<R> w = num / denom;
                z[k] -= w;
                if (magnitude(w) <= tol * std::max(R(1), magnitude(z[k]))) {
                    done[k] = 1;
                    --remaining;
                }
            }
        }
        if (remaining > 0)
            throw Error(ErrorKind::NoConvergence,
                        "Aberth iteration hit the cap of " + std::to_string(opts.max_iterations) + " iterations");

        for (std::size_t k = 0; k < n; ++k) {
            R sep = std::numeric_limits<R>::infinity();
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) sep = std::min(sep, R(magnitude(z[k] - z[j])));
            for (int s = 0; s < opts.polish_steps; ++s) {
                const auto [num, den] = newton_ratio(c, z[k]);
                if (den == Complex<R>(0)) break;
                const Complex<R> step = num / den;
                if (!is_finite(step) || !(magnitude(step) < R(0.25) * sep)) break;
                const Complex<R> cand = z[k] - step;
                if (!(magnitude(horner(c, cand)) < magnitude(horner(c, z[k])))) break;
                z[k] = cand;
            }
        }
        out.roots.insert(out.roots.end(), z.begin(), z.end());
    }

    for (const auto& r : out.roots) {
        const R res = magnitude(p(r));
        if (!is_finite(r)) throw Error(ErrorKind::NoConvergence, "non-finite root");
        out.residual_bound = std::max(out.residual_bound, res);
    }
    return out;
}

template <class R>
R min_pairwise_distance(const RootSet<R>& rs) {
    if (rs.roots.size() < 2) throw Error(ErrorKind::SingleRoot, "fewer than two roots");
    R best = std::numeric_limits<R>::infinity();
    for (std::size_t i = 0; i < rs.roots.size(); ++i)
        for (std::size_t j = i + 1; j < rs.roots.size(); ++j)
            best = std::min(best, R(magnitude(rs.roots[i] - rs.roots[j])));
    return best;
}

template <class R>
R min_distance_to(std::span<const Complex<R>> roots, const Complex<R>& x) {
    R best = std::numeric_limits<R>::infinity();
    for (const auto& r : roots) best = std::min(best, R(magnitude(x - r)));
    return best;
}

#define CERTPATH_INSTANTIATE_ROOTS(R)                                              \
    template RootSet<R> all_roots(const UniPoly<R>&, const R&, const RootOptions&); \
    template R min_pairwise_distance(const RootSet<R>&);                           \
    template R min_distance_to(std::span<const Complex<R>>, const Complex<R>&);

CERTPATH_INSTANTIATE_ROOTS(double)
CERTPATH_INSTANTIATE_ROOTS(MpReal)

}  // namespace certpath
