#pragma once

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "certpath/polynomial.hpp"

namespace testutil {

using certpath::BivPoly;
using certpath::UniPoly;
using cd = std::complex<double>;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

/// Uniform in the unit disc.
inline cd disc(double radius = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng()));
    const double t = 2 * M_PI * u(rng());
    return std::polar(r, t);
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

/// Random poly with exact degree `deg` (leading coefficient bounded away from 0).
inline UniPoly<double> random_uni(int deg) {
    std::vector<cd> c(deg + 1);
    for (auto& v : c) v = disc();
    c[deg] = std::polar(uniform(0.5, 1.0), uniform(0, 2 * M_PI));
    return UniPoly<double>::exact(c);
}

inline UniPoly<double> from_roots(const std::vector<cd>& roots, cd lead = 1.0) {
    std::vector<cd> c{lead};
    for (const cd& r : roots) {
        std::vector<cd> n(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] -= r * c[i];
        }
        c = n;
    }
    return UniPoly<double>::exact(c);
}

inline BivPoly<double> random_biv(int deg_y, int deg_x) {
    std::vector<UniPoly<double>> ys;
    for (int k = 0; k <= deg_y; ++k) {
        std::vector<cd> c(deg_x + 1);
        for (auto& v : c) v = disc();
        ys.push_back(UniPoly<double>::exact(c));
    }
    return BivPoly<double>(ys);
}

/// Match multisets a and b greedily by nearest neighbour; returns the
/// largest distance (adequate for well-separated sets).
inline double multiset_distance(std::vector<cd> a, std::vector<cd> b) {
    if (a.size() != b.size()) return 1e300;
    double worst = 0;
    for (const cd& x : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [&](const cd& p, const cd& q) { return std::abs(p - x) < std::abs(q - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

/// Independent determinant (Gaussian elimination, long double, full pivoting).
inline std::complex<long double> det_ld(std::vector<std::complex<long double>> a, std::size_t n) {
    std::complex<long double> det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (std::abs(a[i * n + j]) > std::abs(a[pr * n + pc])) pr = i, pc = j;
        if (a[pr * n + pc] == std::complex<long double>(0)) return 0;
        if (pr != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pr * n + j]);
            det = -det;
        }
        if (pc != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a[i * n + k], a[i * n + pc]);
            det = -det;
        }
        det *= a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const auto m = a[i * n + k] / a[k * n + k];
            for (std::size_t j = k; j < n; ++j) a[i * n + j] -= m * a[k * n + j];
        }
    }
    return det;
}

/// Sylvester determinant of f(x, .) and g(x, .) built from scratch: f rows
/// first, descending powers of y.
inline std::complex<long double> sylvester_oracle(const BivPoly<double>& f, const BivPoly<double>& g, cd x) {
    const int m = f.deg_y(), n = g.deg_y();
    const std::size_t N = static_cast<std::size_t>(m + n);
    std::vector<std::complex<long double>> a(N * N, 0);
    auto ev = [&](const UniPoly<double>& p) {
        std::complex<long double> s = 0, xl(x.real(), x.imag());
        for (int k = p.degree(); k >= 0; --k) {
            const cd c = p.coeff(static_cast<std::size_t>(k));
            s = s * xl + std::complex<long double>(c.real(), c.imag());
        }
        return s;
    };
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) a[i * N + i + (m - k)] = ev(f.y_coeff(static_cast<std::size_t>(k)));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) a[(n + i) * N + i + (n - k)] = ev(g.y_coeff(static_cast<std::size_t>(k)));
    return det_ld(a, N);
}

}  // namespace testutil
