#pragma once

#include <stdexcept>
#include <string>

namespace fpspec {

enum class ErrorCode {
    NotPrime = 1,
    EvenPrime,
    ZeroElement,
    BadEpsilon,
    EmptySet,
    ZeroInSet,
    TooLargeForBrute,
    OutOfRange,
    NotADivisor,
    NotASubgroup,
    MeanZeroViolated,
    SizeOrder,
    Precondition,
    DuplicateElement,
    PrecisionLoss,
    Config,
    Io,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace fpspec
