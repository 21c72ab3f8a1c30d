#include "certpath/error.hpp"

namespace certpath {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::InterpolationFailure: return "InterpolationFailure";
        case ErrorKind::NotSquareFree: return "NotSquareFree";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::LeadingCoefficientVanishes: return "LeadingCoefficientVanishes";
        case ErrorKind::SingleRoot: return "SingleRoot";
        case ErrorKind::RootInsideCircle: return "RootInsideCircle";
        case ErrorKind::CriticalFiber: return "CriticalFiber";
        case ErrorKind::AtCriticalPoint: return "AtCriticalPoint";
        case ErrorKind::CriticalPointOnPath: return "CriticalPointOnPath";
        case ErrorKind::NoProgress: return "NoProgress";
        case ErrorKind::AmbiguousMatch: return "AmbiguousMatch";
        case ErrorKind::DegenerateQuadruple: return "DegenerateQuadruple";
        case ErrorKind::InfiniteValue: return "InfiniteValue";
    }
    return "Unknown";
}

}  // namespace certpath
