// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chain/address.hpp"
#include "chain/gas.hpp"
#include "chain/receipt.hpp"
#include "chain/state.hpp"
#include "common/wei.hpp"

namespace rlab::chain {

struct Transaction {
    Address from;
    Address to;
    std::optional<std::string> function;  // empty: plain transfer to the fallback
    std::optional<Address> argument;      // the handler's address parameter
    Wei value;
    Gas gas_limit = 0;
};

enum class FrameOutcome { kCompleted, kRevertedFrame, kOutOfGas };

const char* to_string(FrameOutcome outcome) noexcept;

struct CallFrameRecord {
    std::uint32_t depth = 1;  // outermost frame is 1
    Address caller;
    Address callee;
    std::string function;  // handler name or "fallback"
    Wei value;
    FrameOutcome outcome = FrameOutcome::kCompleted;
    Gas gas_used = 0;  // including nested frames
};

/// Frame records in call-entry (preorder) order.
struct ExecutionTrace {
    std::vector<CallFrameRecord> frames;
    Gas total_gas_used = 0;
};

/// Index of each frame's parent, or -1 for the outermost frame.
std::vector<int> frame_parents(const ExecutionTrace& trace);

/// True for frames whose effects survived: the frame and all of its
/// ancestors completed.
std::vector<bool> committed_frames(const ExecutionTrace& trace);

struct Executed {
    Receipt receipt;
    ExecutionTrace trace;
};

/// No receipt exists for these; the trace is kept for diagnostics only.
struct TopLevelReverted {
    std::string reason;
    ExecutionTrace trace;
};

using ExecutionResult = std::variant<Executed, TopLevelReverted>;

struct ExecutionLimits {
    std::uint32_t max_call_depth = 1024;
};

/// Gas accounting for one frame.
class GasMeter {
  public:
    explicit GasMeter(Gas limit) : limit_(limit) {}

    /// Deducts `count` units of `kind`. Returns false, leaving the meter
    /// unchanged, when the remaining gas does not cover the cost.
    bool charge(const GasSchedule& schedule, OpKind kind, std::uint64_t count = 1);

    /// Gas consumed by a nested frame.
    void absorb(Gas used) { used_ += used; }

    Gas limit() const { return limit_; }
    Gas used() const { return used_; }
    Gas remaining() const { return limit_ - used_; }

  private:
    Gas limit_;
    Gas used_ = 0;
};

/// Runs one transaction as its own block. On success every surviving frame
/// effect is committed and a receipt is produced; on a top-level failure
/// accounts are left exactly as before and only the block and transaction
/// counters advance.
///
/// Throws kUnknownAddress when `from` or `to` does not exist and
/// kGasLimitBelowIntrinsic when the limit cannot cover the intrinsic cost.
ExecutionResult execute_transaction(ChainState& state, const Transaction& tx, const GasSchedule& schedule,
                                    const ExecutionLimits& limits = {});

}  // namespace rlab::chain
