#pragma once

#include <stdexcept>
#include <string>

namespace bnsurv {

// Stable error codes carried by every Error; mirrored one-to-one in the
// public C header.
enum class ErrorCode {
    // bn validation / inference
    CycleDetected,
    CardinalityMismatch,
    RowNotNormalized,
    UnknownVariable,
    UnknownState,
    ZeroEvidenceProbability,
    // engine
    NegativeCount,
    TotalMismatch,
    EmptyOriginClass,
    AllConfigsImpossible,
    // spatial / sim
    MissingCentroid,
    UnsortedInput,
    // io / eval
    ParseError,
    UnknownZip,
    InsufficientCoverage,
    EmptyWindow,
    TooFewSamples,
    IoError,
    InvalidArgument,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace bnsurv
