#include "lagrtori/error.hpp"

namespace lagrtori {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::GaugeViolation: return "GaugeViolation";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::BoundaryFiber: return "BoundaryFiber";
    case ErrorCode::UnsupportedClass: return "UnsupportedClass";
    case ErrorCode::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorCode::LeavesTriangle: return "LeavesTriangle";
    case ErrorCode::DeterminantVanishes: return "DeterminantVanishes";
    case ErrorCode::ChartEscape: return "ChartEscape";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::SingularConic: return "SingularConic";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::DegenerateFamily: return "DegenerateFamily";
    case ErrorCode::ConingDegenerate: return "ConingDegenerate";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::CriticalPointMiscount: return "CriticalPointMiscount";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::InternalContradiction: return "InternalContradiction";
    }
    return "Unknown";
}

}  // namespace lagrtori
