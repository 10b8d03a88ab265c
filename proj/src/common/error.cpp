// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "common/error.hpp"

namespace rlab {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kUnknownAddress:
            return "UnknownAddress";
        case ErrorCode::kGasLimitBelowIntrinsic:
            return "GasLimitBelowIntrinsic";
        case ErrorCode::kBalanceOverflow:
            return "BalanceOverflow";
        case ErrorCode::kUnknownTransaction:
            return "UnknownTransaction";
        case ErrorCode::kDegenerateTraining:
            return "DegenerateTraining";
        case ErrorCode::kDimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::kTooFewSamples:
            return "TooFewSamples";
        case ErrorCode::kEmptyConfusion:
            return "EmptyConfusion";
        case ErrorCode::kMalformedInput:
            return "MalformedInput";
        case ErrorCode::kIo:
            return "Io";
        case ErrorCode::kInvalidArgument:
            return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace rlab
