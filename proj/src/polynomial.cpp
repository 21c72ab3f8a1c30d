#include "certpath/polynomial.hpp"

#include <algorithm>

#include "certpath/kernels.hpp"

namespace certpath {

template <class R>
UniPoly<R>::UniPoly(std::vector<Scalar> coeffs, double trim_relative)
    : coeffs_(std::move(coeffs)), trim_relative_(trim_relative) {
    if (coeffs_.empty()) coeffs_.push_back(Scalar(0));
    for (const auto& c : coeffs_) {
        if (!is_finite(c)) throw Error(ErrorKind::InvalidArgument, "non-finite polynomial coefficient");
    }
    trim_threshold_ = R(trim_relative_) * max_abs_coeff();
    while (coeffs_.size() > 1 &&
           (coeffs_.back() == Scalar(0) || magnitude(coeffs_.back()) <= trim_threshold_)) {
        coeffs_.pop_back();
    }
}

template <class R>
R UniPoly<R>::max_abs_coeff() const {
    R m(0);
    for (const auto& c : coeffs_) m = std::max(m, magnitude(c));
    return m;
}

template <class R>
typename UniPoly<R>::Scalar UniPoly<R>::operator()(const Scalar& x) const {
    Scalar r(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
    return r;
}

template <class R>
UniPoly<R> UniPoly<R>::derivative() const {
    if (coeffs_.size() == 1) return UniPoly();
    std::vector<Scalar> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * R(static_cast<int>(k));
    return UniPoly(std::move(d), trim_relative_);
}

template <class R>
UniPoly<R> UniPoly<R>::operator-() const {
    return scale(*this, Scalar(-1));
}

template <class R>
UniPoly<R> UniPoly<R>::add(const UniPoly& a, const UniPoly& b, const Scalar& sign) {
    std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar(0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += sign * b.coeffs_[k];
    return UniPoly(std::move(c), std::max(a.trim_relative_, b.trim_relative_));
}

template <class R>
UniPoly<R> UniPoly<R>::multiply(const UniPoly& a, const UniPoly& b) {
    std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(c), std::max(a.trim_relative_, b.trim_relative_));
}

template <class R>
UniPoly<R> UniPoly<R>::scale(const UniPoly& p, const Scalar& s) {
    std::vector<Scalar> c = p.coeffs_;
    for (auto& x : c) x *= s;
    return UniPoly(std::move(c), p.trim_relative_);
}

template <class R>
DivisionResult<R> divide(const UniPoly<R>& num, const UniPoly<R>& den) {
    using Scalar = Complex<R>;
    if (den.is_zero()) throw Error(ErrorKind::DegenerateInput, "division by the zero polynomial");
    const int n = num.degree();
    const int m = den.degree();
    if (n < m) return {UniPoly<R>(), num};
    std::vector<Scalar> rem = num.coeffs();
    std::vector<Scalar> quo(static_cast<std::size_t>(n - m + 1), Scalar(0));
    const Scalar lead = den.leading();
    for (int k = n - m; k >= 0; --k) {
        const Scalar q = rem[static_cast<std::size_t>(k + m)] / lead;
        quo[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(k + j)] -= q * den.coeff(static_cast<std::size_t>(j));
        rem[static_cast<std::size_t>(k + m)] = Scalar(0);
    }
    rem.resize(static_cast<std::size_t>(std::max(m, 1)));
    return {UniPoly<R>(std::move(quo), num.trim_relative()), UniPoly<R>::exact(std::move(rem))};
}

template <class R>
BivPoly<R>::BivPoly(std::vector<UniPoly<R>> y_coeffs) : y_coeffs_(std::move(y_coeffs)) {
    while (y_coeffs_.size() > 1 && y_coeffs_.back().is_zero()) y_coeffs_.pop_back();
    if (y_coeffs_.empty()) y_coeffs_.emplace_back();
}

template <class R>
int BivPoly<R>::deg_x() const {
    int d = 0;
    for (const auto& a : y_coeffs_) d = std::max(d, a.degree());
    return d;
}

template <class R>
typename BivPoly<R>::Scalar BivPoly<R>::operator()(const Scalar& x, const Scalar& y) const {
    Scalar r(0);
    for (auto it = y_coeffs_.rbegin(); it != y_coeffs_.rend(); ++it) r = r * y + (*it)(x);
    return r;
}

template <class R>
UniPoly<R> BivPoly<R>::fiber_polynomial(const Scalar& x) const {
    std::vector<Scalar> c;
    c.reserve(y_coeffs_.size());
    for (const auto& a : y_coeffs_) c.push_back(a(x));
    return UniPoly<R>::exact(std::move(c));
}

template <class R>
BivPoly<R> BivPoly<R>::transpose() const {
    const int dx = deg_x();
    std::vector<UniPoly<R>> out;
    out.reserve(static_cast<std::size_t>(dx + 1));
    for (int j = 0; j <= dx; ++j) {
        std::vector<Scalar> c;
        c.reserve(y_coeffs_.size());
        for (const auto& a : y_coeffs_) c.push_back(a.coeff(static_cast<std::size_t>(j)));
        out.push_back(UniPoly<R>::exact(std::move(c)));
    }
    return BivPoly(std::move(out));
}

template <class R>
BivPoly<R> BivPoly<R>::add(const BivPoly& a, const BivPoly& b, const Scalar& sign) {
    std::vector<UniPoly<R>> c(std::max(a.y_coeffs_.size(), b.y_coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        const UniPoly<R> ak = k < a.y_coeffs_.size() ? a.y_coeffs_[k] : UniPoly<R>();
        const UniPoly<R> bk = k < b.y_coeffs_.size() ? b.y_coeffs_[k] : UniPoly<R>();
        c[k] = ak + sign * bk;
    }
    return BivPoly(std::move(c));
}

template <class R>
BivPoly<R> BivPoly<R>::multiply(const BivPoly& a, const BivPoly& b) {
    std::vector<UniPoly<R>> c(a.y_coeffs_.size() + b.y_coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.y_coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.y_coeffs_.size(); ++j) c[i + j] = c[i + j] + a.y_coeffs_[i] * b.y_coeffs_[j];
    return BivPoly(std::move(c));
}

template <class R>
BivPoly<R> partial_x(const BivPoly<R>& f) {
    std::vector<UniPoly<R>> c;
    c.reserve(f.y_coeffs().size());
    for (const auto& a : f.y_coeffs()) c.push_back(a.derivative());
    return BivPoly<R>(std::move(c));
}

template <class R>
BivPoly<R> partial_y(const BivPoly<R>& f) {
    if (f.deg_y() == 0) return BivPoly<R>();
    std::vector<UniPoly<R>> c;
    for (int k = 1; k <= f.deg_y(); ++k)
        c.push_back(Complex<R>(R(k)) * f.y_coeff(static_cast<std::size_t>(k)));
    return BivPoly<R>(std::move(c));
}

template <class R>
int resultant_degree_bound(const BivPoly<R>& f, const BivPoly<R>& g) {
    return f.deg_x() * g.deg_y() + g.deg_x() * f.deg_y();
}

namespace {

template <class R>
Complex<R> unit_point(const R& angle) {
    return std::polar(R(1), angle);
}

// Interpolates values at the N points exp(i(phase + 2 pi j / N)).
template <class R>
std::vector<Complex<R>> interpolate_on_circle(const std::vector<Complex<R>>& values, const R& phase) {
    const std::size_t n = values.size();
    const R two_pi = R(2) * pi<R>();
    std::vector<Complex<R>> c(n, Complex<R>(0));
    for (std::size_t k = 0; k < n; ++k) {
        Complex<R> acc(0);
        for (std::size_t j = 0; j < n; ++j) {
            const R angle = R(static_cast<int>(k)) * (phase + two_pi * R(static_cast<int>(j)) / R(static_cast<int>(n)));
            acc += values[j] * unit_point(-angle);
        }
        c[k] = acc / R(static_cast<int>(n));
    }
    return c;
}

}  // namespace

template <class R>
UniPoly<R> resultant_y(const BivPoly<R>& f, const BivPoly<R>& g, const ResultantOptions& opts) {
    if (f.deg_y() < 1 && g.deg_y() < 1)
        throw Error(ErrorKind::DegenerateInput, "resultant of two polynomials constant in y");
    const int bound = resultant_degree_bound(f, g);
    const std::size_t n = static_cast<std::size_t>(bound + 1);
    const R phase(opts.phase_offset);
    const R two_pi = R(2) * pi<R>();

    std::vector<Complex<R>> xs(n);
    for (std::size_t j = 0; j < n; ++j)
        xs[j] = unit_point(phase + two_pi * R(static_cast<int>(j)) / R(static_cast<int>(n)));
    const auto samples = kernels::sylvester_determinants<R>(f, g, xs, opts.parallel);

    R scale(0);
    R largest(0);
    std::vector<Complex<R>> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = samples[j].value;
        scale = std::max(scale, samples[j].hadamard);
        largest = std::max(largest, magnitude(values[j]));
    }
    if (largest <= R(opts.zero_tol) * scale) return UniPoly<R>();

    UniPoly<R> res(interpolate_on_circle(values, phase));

    // Off-grid check: midway between the first two samples.
    const Complex<R> probe = unit_point(phase + pi<R>() / R(static_cast<int>(n)));
    const auto direct = kernels::serial::sylvester_determinants<R>(f, g, std::span<const Complex<R>>(&probe, 1));
    const R err = magnitude(res(probe) - direct[0].value);
    if (err > R(opts.interpolation_tol) * std::max(scale, direct[0].hadamard))
        throw Error(ErrorKind::InterpolationFailure,
                    "resultant interpolation residual " + to_decimal(err) + " exceeds tolerance");
    return res;
}

template <class R>
UniPoly<R> discriminant_y(const BivPoly<R>& f, const ResultantOptions& opts) {
    if (f.deg_y() < 1) throw Error(ErrorKind::InvalidArgument, "discriminant needs deg_y >= 1");
    const UniPoly<R> res = resultant_y(f, partial_y(f), opts);
    if (res.is_zero())
        throw Error(ErrorKind::NotSquareFree, "discriminant vanishes identically (f is not square-free in y)");
    const auto [quo, rem] = divide(res, f.leading());
    if (rem.max_abs_coeff() > R(opts.division_tol) * res.max_abs_coeff())
        throw Error(ErrorKind::InterpolationFailure, "Res(f, f_y) is not divisible by the leading coefficient");
    return quo;
}

template <class R>
BivPoly<R> eliminate_shared(const BivPoly<R>& p1, const BivPoly<R>& p2, const ResultantOptions& opts) {
    // p2 as a polynomial in x1 whose coefficients are polynomials in x2.
    const BivPoly<R> p2t = p2.transpose();
    const std::size_t n = static_cast<std::size_t>(p1.deg_y() * p2t.deg_x() + 1);
    const R phase(opts.phase_offset);
    const R two_pi = R(2) * pi<R>();

    auto specialize = [&](const Complex<R>& s) {
        std::vector<UniPoly<R>> c;
        for (const auto& a : p2t.y_coeffs()) c.push_back(UniPoly<R>::constant(a(s)));
        return resultant_y(p1, BivPoly<R>(std::move(c)), opts);
    };

    std::vector<UniPoly<R>> slices;
    std::size_t width = 1;
    for (std::size_t j = 0; j < n; ++j) {
        slices.push_back(specialize(unit_point(phase + two_pi * R(static_cast<int>(j)) / R(static_cast<int>(n)))));
        width = std::max(width, slices.back().coeffs().size());
    }

    std::vector<std::vector<Complex<R>>> by_x2(n, std::vector<Complex<R>>(width, Complex<R>(0)));
    for (std::size_t i = 0; i < width; ++i) {
        std::vector<Complex<R>> values(n);
        for (std::size_t j = 0; j < n; ++j) values[j] = slices[j].coeff(i);
        const auto c = interpolate_on_circle(values, phase);
        for (std::size_t k = 0; k < n; ++k) by_x2[k][i] = c[k];
    }
    std::vector<UniPoly<R>> y_coeffs;
    for (auto& c : by_x2) y_coeffs.emplace_back(std::move(c));
    BivPoly<R> q(std::move(y_coeffs));

    const Complex<R> probe = unit_point(phase + pi<R>() / R(static_cast<int>(n)));
    const UniPoly<R> direct = specialize(probe);
    R err(0);
    for (std::size_t i = 0; i < width; ++i) {
        Complex<R> v(0);
        for (int k = q.deg_y(); k >= 0; --k) v = v * probe + q.y_coeff(static_cast<std::size_t>(k)).coeff(i);
        err = std::max(err, magnitude(v - direct.coeff(i)));
    }
    R scale(0);
    for (const auto& s : slices) scale = std::max(scale, s.max_abs_coeff());
    if (err > R(opts.interpolation_tol) * std::max(scale, R(1)))
        throw Error(ErrorKind::InterpolationFailure, "chain elimination interpolation check failed");
    return q;
}

template <class R>
std::ostream& operator<<(std::ostream& os, const UniPoly<R>& p) {
    os << "[";
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) os << (k ? ", " : "") << p.coeffs()[k];
    return os << "]";
}

#define CERTPATH_INSTANTIATE_POLY(R)                                                              \
    template class UniPoly<R>;                                                                    \
    template class BivPoly<R>;                                                                    \
    template DivisionResult<R> divide(const UniPoly<R>&, const UniPoly<R>&);                      \
    template BivPoly<R> partial_x(const BivPoly<R>&);                                             \
    template BivPoly<R> partial_y(const BivPoly<R>&);                                             \
    template int resultant_degree_bound(const BivPoly<R>&, const BivPoly<R>&);                    \
    template UniPoly<R> resultant_y(const BivPoly<R>&, const BivPoly<R>&, const ResultantOptions&); \
    template UniPoly<R> discriminant_y(const BivPoly<R>&, const ResultantOptions&);               \
    template BivPoly<R> eliminate_shared(const BivPoly<R>&, const BivPoly<R>&, const ResultantOptions&); \
    template std::ostream& operator<<(std::ostream&, const UniPoly<R>&);

CERTPATH_INSTANTIATE_POLY(double)
CERTPATH_INSTANTIATE_POLY(MpReal)

}  // namespace certpath
