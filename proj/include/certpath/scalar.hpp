#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>

#include <boost/multiprecision/mpfr.hpp>

namespace certpath {

/// Extended-precision real. Precision is a runtime setting, see set_mp_precision_bits().
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

template <class R>
using Complex = std::complex<R>;

/// Sets the working precision of MpReal for the calling thread.
/// The effective precision is at least `bits` binary digits.
void set_mp_precision_bits(unsigned bits);
unsigned mp_precision_bits();

template <class R>
struct RealTraits;

template <>
struct RealTraits<double> {
    static double epsilon() { return std::numeric_limits<double>::epsilon(); }
    static constexpr bool parallel_kernels = true;
    static unsigned bits() { return 53; }
    static const char* name() { return "binary64"; }
};

template <>
struct RealTraits<MpReal> {
    static MpReal epsilon();
    // Boost keeps the default precision per thread, so worker threads would
    // silently compute at a different precision.
    static constexpr bool parallel_kernels = false;
    static unsigned bits() { return mp_precision_bits(); }
    static const char* name() { return "mpfr"; }
};

template <class R>
inline R pi() {
    using std::acos;
    return acos(R(-1));
}

template <class R>
inline R magnitude(const Complex<R>& z) {
    using std::abs;
    return abs(z);
}

template <class R>
inline bool is_finite(const Complex<R>& z) {
    using std::isfinite;
    return isfinite(z.real()) && isfinite(z.imag());
}

template <class R>
inline bool is_finite(const R& x) {
    using std::isfinite;
    return isfinite(x);
}

template <class R>
inline double to_double(const R& x) {
    return static_cast<double>(x);
}

/// Round-trippable decimal rendering of a real at its working precision.
template <class R>
std::string to_decimal(const R& x);

/// Parses a decimal string at the working precision.
template <class R>
R from_decimal(const std::string& s);

}  // namespace certpath
