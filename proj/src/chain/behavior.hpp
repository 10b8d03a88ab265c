// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "common/wei.hpp"

namespace rlab::chain {

// Contract code is a small tree of abstract, individually costed
// instructions. Costs (see GasSchedule):
//   Compute   ops * arith
//   Store     sstore
//   Increment arith + sstore
//   Draw      arith + sstore
//   Loop      iterations * arith
//   When      arith
//   Require   arith
//   Call      call_base, then all remaining gas is forwarded

/// Address resolved relative to the executing frame.
enum class AddressRef {
    kCaller,
    kSelf,
    /// The frame's address argument, or the caller when none was passed.
    kArgument,
};

/// Storage slot; keyed slots form a per-address mapping (`name[addr]`).
struct Slot {
    std::string name;
    std::optional<AddressRef> keyed_by;
};

using Operand = std::variant<std::int64_t, Slot>;

enum class Cmp { kEq, kNe, kLt, kGe };

/// `fixed`, or `storage[slot] * multiplier` when a slot is set.
struct Amount {
    Wei fixed;
    std::optional<Slot> slot;
    Wei multiplier;
};

enum class OnFailure {
    /// Failed call fails this frame as well (Solidity `require(call)` or a
    /// high-level call).
    kRevert,
    /// Failure is observed as `false` and execution continues.
    kIgnore,
};

struct Instruction;
using Script = std::vector<Instruction>;

struct Compute {
    std::uint32_t ops = 1;
};
struct Store {
    Slot dst;
    Operand src;
};
struct Increment {
    Slot dst;
};
struct Draw {
    Slot dst;
    std::uint64_t bound;
};
struct Loop {
    Slot counter;
    Operand iterations;
};
struct When {
    Operand lhs;
    Cmp cmp;
    Operand rhs;
    Script then;
};
struct Require {
    Operand lhs;
    Cmp cmp;
    Operand rhs;
};
struct Call {
    AddressRef target;
    std::optional<std::string> function;
    Amount value;
    std::optional<AddressRef> argument;
    OnFailure on_failure = OnFailure::kRevert;
};

struct Instruction {
    std::variant<Compute, Store, Increment, Draw, Loop, When, Require, Call> op;
};

/// Scripted contract: named handlers plus a fallback for value transfers and
/// unmatched function names. Immutable once built.
struct ContractBehavior {
    std::string kind;
    std::map<std::string, Script> handlers;
    Script fallback;
    /// Template parameters, kept in declaration order for manifests.
    std::vector<std::pair<std::string, std::string>> params;
    /// Mixed into the chain entropy for Draw instructions.
    std::uint64_t salt = 0;

    const Script& resolve(const std::optional<std::string>& function) const;
};

}  // namespace rlab::chain
