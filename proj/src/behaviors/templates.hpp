// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <memory>

#include "chain/behavior.hpp"
#include "common/rng.hpp"
#include "common/wei.hpp"

namespace rlab::behaviors {

using BehaviorPtr = std::shared_ptr<const chain::ContractBehavior>;

/// max_reentries sentinel: re-enter until a frame fails.
inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

/// Unit of the randomized donation, in wei (0.0005 ether).
inline constexpr std::uint64_t kFuzzDonationUnit = 500'000'000'000'000ULL;

struct FuzzConfig {
    /// Coin-flip loop of `random(loop_bound)` counter increments per call.
    bool gas_loop = false;
    std::uint32_t loop_bound = 10;
    /// Fixed arithmetic work per invocation.
    std::uint32_t extra_compute = 0;
    /// Benign users only: nested self-calls made on receipt of value.
    std::uint32_t depth_padding = 0;
    /// When set, the padding is drawn per transaction from [0, depth_padding].
    bool random_padding = false;
};

enum class GuardStyle {
    /// Per-recipient `donated` flag, set before the transfer.
    kDonatedFlag,
    /// Contract-wide lock held across the transfer.
    kMutex,
};

/// `donate(to)`: unguarded value call of `donation` to `to` (or the caller).
BehaviorPtr make_vulnerable_service(Wei donation, const FuzzConfig& fuzz = {});

/// `donate(to)`: the guard is checked and updated before the value call, so
/// re-entrant calls transfer nothing.
BehaviorPtr make_robust_service(Wei donation, const FuzzConfig& fuzz = {}, GuardStyle guard = GuardStyle::kDonatedFlag);

/// `startAttack(addr)` calls `addr.donate(this)`; the fallback re-enters the
/// caller's `donate` until `max_reentries` donations have been received.
BehaviorPtr make_malicious_user(std::int64_t max_reentries, const FuzzConfig& fuzz = {});

/// Accepts value; only local work, never calls back into the sender.
/// `requestDonation(addr)` calls `addr.donate(this)` once.
BehaviorPtr make_benign_user(const FuzzConfig& fuzz = {});

/// Randomized vulnerable service: per call, with probability 1/2 a loop of
/// `random(10)` counter increments, then an unguarded donation of
/// `random(1000) * kFuzzDonationUnit` wei. `rng` seeds the contract's
/// randomness source.
BehaviorPtr make_fuzzed_vulnerable_service(Rng& rng);

/// Same randomized gas work and amount, behind the per-recipient guard.
BehaviorPtr make_fuzzed_robust_service(Rng& rng);

}  // namespace rlab::behaviors
