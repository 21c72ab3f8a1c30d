#pragma once

// Named inputs shared by the CLI, the tests and the acceptance suite.

#include <cmath>

#include "certpath/darboux.hpp"
#include "certpath/systems.hpp"

namespace certpath::fixtures {

template <class R>
UniPoly<R> poly(std::initializer_list<Complex<R>> c) {
    return UniPoly<R>::exact(std::vector<Complex<R>>(c));
}

/// Newton homotopy x^2 - (1 + m) + m t as a curve in (t, x).
template <class R>
BivPoly<R> newton_curve(const R& m) {
    return BivPoly<R>({poly<R>({Complex<R>(-(R(1) + m)), Complex<R>(m)}), UniPoly<R>(), poly<R>({Complex<R>(1)})});
}

template <class R>
ParamPath<R> newton_path() {
    return ParamPath<R>::segment(Complex<R>(1), Complex<R>(0));
}

/// m values of the first benchmark table.
inline const std::vector<double>& newton_table1_m() {
    static const std::vector<double> m{10,   20,   30,   40,   50,   60,   70,    80,    90,
                                       100, 1000, 2000, 3000, 4000, 5000, 10000, 20000, 30000};
    return m;
}

/// m = -1 + 10^-k.
template <class R>
R newton_table2_m(int k) {
    using std::pow;
    return R(-1) + pow(R(10), R(-k));
}

/// y^2 - x
template <class R>
BivPoly<R> sqrt_curve() {
    return BivPoly<R>({poly<R>({Complex<R>(0), Complex<R>(-1)}), UniPoly<R>(), poly<R>({Complex<R>(1)})});
}

/// y^2 + x^2 - 1
template <class R>
BivPoly<R> circle_curve() {
    return BivPoly<R>({poly<R>({Complex<R>(-1), Complex<R>(0), Complex<R>(1)}), UniPoly<R>(), poly<R>({Complex<R>(1)})});
}

/// p1 = -4 + 2 x0 + x1 + 2 x0 x1 + x1^2, p2 = x1^2 + x2^3, x0: 0 -> 1.
/// With `flip` the x0 x1 term changes sign, which puts an artificial
/// singularity of the eliminant at x0 = 1/2.
template <class R>
ChainSystem<R> example2_system(bool flip = false) {
    using std::cbrt;
    using std::sqrt;
    const R s17 = sqrt(R(17));
    const R mixed = flip ? R(-2) : R(2);
    ChainSystem<R> sys;
    sys.equations.push_back(BivPoly<R>({poly<R>({Complex<R>(-4), Complex<R>(2)}),
                                        poly<R>({Complex<R>(1), Complex<R>(mixed)}), poly<R>({Complex<R>(1)})}));
    sys.equations.push_back(BivPoly<R>({poly<R>({Complex<R>(0), Complex<R>(0), Complex<R>(1)}), UniPoly<R>(),
                                        UniPoly<R>(), poly<R>({Complex<R>(1)})}));
    const R x1 = (R(-1) - s17) / R(2);
    const R x2 = -cbrt((R(9) + s17) / R(2));
    sys.initial = {Complex<R>(0), Complex<R>(x1), Complex<R>(x2)};
    sys.target = Complex<R>(1);
    return sys;
}

/// x1 = x0 / 2, x2 = x1 / 2, x0: 0 -> 1. No critical points anywhere.
template <class R>
ChainSystem<R> linear_chain() {
    ChainSystem<R> sys;
    const Complex<R> half(R(-1) / R(2));
    sys.equations.push_back(BivPoly<R>({poly<R>({Complex<R>(0), half}), poly<R>({Complex<R>(1)})}));
    sys.equations.push_back(BivPoly<R>({poly<R>({Complex<R>(0), half}), poly<R>({Complex<R>(1)})}));
    sys.initial = {Complex<R>(0), Complex<R>(0), Complex<R>(0)};
    sys.target = Complex<R>(1);
    return sys;
}

/// The pentagon closure equation exactly as printed, in (mu, g0).
template <class R>
BivPoly<R> pentagon_printed() {
    using std::sqrt;
    const R s5 = sqrt(R(5));
    const UniPoly<R> one_minus_mu = poly<R>({Complex<R>(1), Complex<R>(-1)});
    const UniPoly<R> alpha = poly<R>({Complex<R>(-3 - s5), Complex<R>(6), Complex<R>(-3 + s5)});
    const UniPoly<R> beta = poly<R>({Complex<R>(1 + s5), Complex<R>(-2 - R(4) * s5)});
    return BivPoly<R>({alpha * one_minus_mu, beta * one_minus_mu, alpha * one_minus_mu});
}

/// The printed equation with the linear coefficient completed by the
/// 2 (3 - sqrt 5) mu^2 term that the Darboux maps produce.
template <class R>
BivPoly<R> pentagon_corrected() {
    using std::sqrt;
    const R s5 = sqrt(R(5));
    const UniPoly<R> one_minus_mu = poly<R>({Complex<R>(1), Complex<R>(-1)});
    const UniPoly<R> alpha = poly<R>({Complex<R>(-3 - s5), Complex<R>(6), Complex<R>(-3 + s5)});
    const UniPoly<R> beta = poly<R>({Complex<R>(1 + s5), Complex<R>(-2 - R(4) * s5), Complex<R>(R(2) * (R(3) - s5))});
    return BivPoly<R>({alpha * one_minus_mu, beta * one_minus_mu, alpha * one_minus_mu});
}

}  // namespace certpath::fixtures
