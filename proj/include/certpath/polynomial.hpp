#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "certpath/error.hpp"
#include "certpath/scalar.hpp"

namespace certpath {

/// Dense univariate polynomial with complex coefficients.
///
/// Coefficient k multiplies z^k (ascending order). Trailing coefficients whose
/// magnitude is at most `trim_relative * max|c|` are removed on construction;
/// the absolute cutoff actually applied is kept in trim_threshold(). A zero
/// polynomial is the single coefficient 0.
template <class R>
class UniPoly {
public:
    using Scalar = Complex<R>;
    static constexpr double kDefaultTrim = 1e-12;

    UniPoly() : coeffs_{Scalar(0)} {}
    explicit UniPoly(std::vector<Scalar> coeffs, double trim_relative = kDefaultTrim);
    UniPoly(std::initializer_list<Scalar> coeffs) : UniPoly(std::vector<Scalar>(coeffs)) {}

    static UniPoly constant(const Scalar& c) { return UniPoly(std::vector<Scalar>{c}); }
    /// Only exact zeros are trimmed; keeps the formal degree of evaluated fibers.
    static UniPoly exact(std::vector<Scalar> coeffs) { return UniPoly(std::move(coeffs), 0.0); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Scalar(0); }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    /// Coefficient of z^k; zero beyond the degree.
    Scalar coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Scalar(0); }
    const Scalar& leading() const { return coeffs_.back(); }
    double trim_relative() const { return trim_relative_; }
    const R& trim_threshold() const { return trim_threshold_; }
    R max_abs_coeff() const;

    /// Horner evaluation.
    Scalar operator()(const Scalar& x) const;
    UniPoly derivative() const;

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) { return add(a, b, Scalar(1)); }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return add(a, b, Scalar(-1)); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) { return multiply(a, b); }
    friend UniPoly operator*(const Scalar& s, const UniPoly& p) { return scale(p, s); }

private:
    static UniPoly add(const UniPoly& a, const UniPoly& b, const Scalar& sign);
    static UniPoly multiply(const UniPoly& a, const UniPoly& b);
    static UniPoly scale(const UniPoly& p, const Scalar& s);

    std::vector<Scalar> coeffs_;
    double trim_relative_ = kDefaultTrim;
    R trim_threshold_ = R(0);
};

template <class R>
struct DivisionResult {
    UniPoly<R> quotient;
    UniPoly<R> remainder;
};

/// Long division; throws DegenerateInput for a zero divisor.
template <class R>
DivisionResult<R> divide(const UniPoly<R>& num, const UniPoly<R>& den);

/// f(x, y) = sum_k y_coeffs[k](x) * y^k.
///
/// y_coeffs[deg_y] is the leading coefficient a_0(x) in leading-first
/// notation and is never the zero polynomial (except for f == 0).
template <class R>
class BivPoly {
public:
    using Scalar = Complex<R>;

    BivPoly() : y_coeffs_{UniPoly<R>()} {}
    explicit BivPoly(std::vector<UniPoly<R>> y_coeffs);

    int deg_y() const { return static_cast<int>(y_coeffs_.size()) - 1; }
    int deg_x() const;
    bool is_zero() const { return y_coeffs_.size() == 1 && y_coeffs_[0].is_zero(); }
    const std::vector<UniPoly<R>>& y_coeffs() const { return y_coeffs_; }
    const UniPoly<R>& y_coeff(std::size_t k) const { return y_coeffs_.at(k); }
    const UniPoly<R>& leading() const { return y_coeffs_.back(); }

    Scalar operator()(const Scalar& x, const Scalar& y) const;

    /// f(x, .) with the formal y-degree kept (no relative trimming).
    UniPoly<R> fiber_polynomial(const Scalar& x) const;

    /// Same polynomial with the roles of x and y exchanged.
    BivPoly transpose() const;

    friend BivPoly operator+(const BivPoly& a, const BivPoly& b) { return add(a, b, Scalar(1)); }
    friend BivPoly operator-(const BivPoly& a, const BivPoly& b) { return add(a, b, Scalar(-1)); }
    friend BivPoly operator*(const BivPoly& a, const BivPoly& b) { return multiply(a, b); }

private:
    static BivPoly add(const BivPoly& a, const BivPoly& b, const Scalar& sign);
    static BivPoly multiply(const BivPoly& a, const BivPoly& b);

    std::vector<UniPoly<R>> y_coeffs_;
};

template <class R>
Complex<R> eval_uni(const UniPoly<R>& p, const Complex<R>& x) {
    return p(x);
}

template <class R>
Complex<R> eval_biv(const BivPoly<R>& f, const Complex<R>& x, const Complex<R>& y) {
    return f(x, y);
}

template <class R>
BivPoly<R> partial_x(const BivPoly<R>& f);

template <class R>
BivPoly<R> partial_y(const BivPoly<R>& f);

struct ResultantOptions {
    /// Relative residual allowed at the off-grid interpolation check point.
    double interpolation_tol = 1e-10;
    /// A resultant whose samples are all below this fraction of the Hadamard
    /// bound is reported as the zero polynomial.
    double zero_tol = 1e-10;
    /// Relative remainder allowed when dividing Res(f, f_y) by a_0.
    double division_tol = 1e-8;
    /// Phase of the first sample on the unit circle.
    double phase_offset = 0.2718281828;
    /// Use the OpenMP determinant kernel where the scalar type allows it.
    bool parallel = true;
};

/// Res_y(f, g) via evaluation of numeric Sylvester determinants on scaled
/// roots of unity followed by interpolation.
///
/// Sign convention: Sylvester rows of f (deg_y(g) shifted copies) first, then
/// rows of g, coefficients in descending powers of y. With that order
/// Res_y(y - x, y + x) = 2x.
template <class R>
UniPoly<R> resultant_y(const BivPoly<R>& f, const BivPoly<R>& g, const ResultantOptions& opts = {});

/// Degree bound deg_x(f) deg_y(g) + deg_x(g) deg_y(f) of Res_y(f, g).
template <class R>
int resultant_degree_bound(const BivPoly<R>& f, const BivPoly<R>& g);

/// Delta_y(f) = Res_y(f, f_y) / a_0(x); throws NotSquareFree when it vanishes.
template <class R>
UniPoly<R> discriminant_y(const BivPoly<R>& f, const ResultantOptions& opts = {});

/// Eliminates the shared variable of a chain pair p1(x0, x1), p2(x1, x2):
/// returns q(x0, x2) = Res_{x1}(p1, p2) with x = x0 and y = x2.
template <class R>
BivPoly<R> eliminate_shared(const BivPoly<R>& p1, const BivPoly<R>& p2, const ResultantOptions& opts = {});

template <class R>
std::ostream& operator<<(std::ostream& os, const UniPoly<R>& p);

}  // namespace certpath
