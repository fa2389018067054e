#include "indexdensity/error.hpp"

namespace indexdensity {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ZeroGenerator: return "ZeroGenerator";
        case ErrorCode::FactorizationOverflow: return "FactorizationOverflow";
        case ErrorCode::NotTwoTorsion: return "NotTwoTorsion";
        case ErrorCode::ModulusMismatch: return "ModulusMismatch";
        case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
        case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
        case ErrorCode::RankZero: return "RankZero";
        case ErrorCode::ParityViolation: return "ParityViolation";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::NegativeBase: return "NegativeBase";
        case ErrorCode::SupportPrime: return "SupportPrime";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::IncompatibleHistograms: return "IncompatibleHistograms";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace indexdensity
