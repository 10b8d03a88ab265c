// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

enum class ErrorCode {
    kUnknownAddress,
    kGasLimitBelowIntrinsic,
    kBalanceOverflow,
    kUnknownTransaction,
    kDegenerateTraining,
    kDimensionMismatch,
    kTooFewSamples,
    kEmptyConfusion,
    kMalformedInput,
    kIo,
    kInvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace rlab
