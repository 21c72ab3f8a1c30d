#include "certpath/scalar.hpp"

#include <iomanip>
#include <sstream>

#include "certpath/error.hpp"

namespace certpath {

namespace {

thread_local unsigned current_mp_bits = 0;

unsigned digits10_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * std::log10(2.0))) + 1;
}

}  // namespace

void set_mp_precision_bits(unsigned bits) {
    if (bits < 16) throw Error(ErrorKind::InvalidArgument, "precision below 16 bits");
    MpReal::default_precision(digits10_for_bits(bits));
    current_mp_bits = bits;
}

unsigned mp_precision_bits() {
    if (current_mp_bits == 0) {
        return static_cast<unsigned>(std::floor(MpReal::default_precision() / std::log10(2.0)));
    }
    return current_mp_bits;
}

MpReal RealTraits<MpReal>::epsilon() {
    using boost::multiprecision::ldexp;
    return ldexp(MpReal(1), 1 - static_cast<int>(mp_precision_bits()));
}

template <>
std::string to_decimal<double>(const double& x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

template <>
std::string to_decimal<MpReal>(const MpReal& x) {
    return x.str(static_cast<std::streamsize>(MpReal::default_precision()) + 3, std::ios_base::scientific);
}

template <>
double from_decimal<double>(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::ParseError, "not a number: '" + s + "'");
    return v;
}

template <>
MpReal from_decimal<MpReal>(const std::string& s) {
    try {
        return MpReal(s);
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "not a number: '" + s + "'");
    }
}

}  // namespace certpath
