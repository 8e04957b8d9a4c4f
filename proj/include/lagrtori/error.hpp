#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lagrtori {

enum class ErrorCode {
    ZeroVector,
    GaugeViolation,
    NonConvergent,
    NotUnitary,
    BoundaryFiber,
    UnsupportedClass,
    StencilOutOfDomain,
    LeavesTriangle,
    DeterminantVanishes,
    ChartEscape,
    BoundaryMismatch,
    SingularConic,
    RootNotBracketed,
    DegenerateFamily,
    ConingDegenerate,
    NotHermitian,
    PreconditionFailed,
    CriticalPointMiscount,
    NormalizationFailure,
    InternalContradiction,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lagrtori
