#include "fpspec/error.hpp"

namespace fpspec {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::EvenPrime: return "EvenPrime";
        case ErrorCode::ZeroElement: return "ZeroElement";
        case ErrorCode::BadEpsilon: return "BadEpsilon";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::ZeroInSet: return "ZeroInSet";
        case ErrorCode::TooLargeForBrute: return "TooLargeForBrute";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NotADivisor: return "NotADivisor";
        case ErrorCode::NotASubgroup: return "NotASubgroup";
        case ErrorCode::MeanZeroViolated: return "MeanZeroViolated";
        case ErrorCode::SizeOrder: return "SizeOrder";
        case ErrorCode::Precondition: return "Precondition";
        case ErrorCode::DuplicateElement: return "DuplicateElement";
        case ErrorCode::PrecisionLoss: return "PrecisionLoss";
        case ErrorCode::Config: return "Config";
        case ErrorCode::Io: return "Io";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace fpspec
