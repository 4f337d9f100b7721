#include "util/error.hpp"

namespace bnsurv {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::CardinalityMismatch: return "CardinalityMismatch";
        case ErrorCode::RowNotNormalized: return "RowNotNormalized";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::UnknownState: return "UnknownState";
        case ErrorCode::ZeroEvidenceProbability: return "ZeroEvidenceProbability";
        case ErrorCode::NegativeCount: return "NegativeCount";
        case ErrorCode::TotalMismatch: return "TotalMismatch";
        case ErrorCode::EmptyOriginClass: return "EmptyOriginClass";
        case ErrorCode::AllConfigsImpossible: return "AllConfigsImpossible";
        case ErrorCode::MissingCentroid: return "MissingCentroid";
        case ErrorCode::UnsortedInput: return "UnsortedInput";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownZip: return "UnknownZip";
        case ErrorCode::InsufficientCoverage: return "InsufficientCoverage";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace bnsurv
