// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chain/executor.hpp"

namespace rlab::chain {

struct CommittedTransaction {
    Transaction tx;
    Receipt receipt;
    ExecutionTrace trace;
    std::map<Address, Wei> balances_before;
    std::map<Address, Wei> balances_after;
};

/// A simulated chain client: owns the state, executes submitted
/// transactions and keeps the history a monitoring client would query.
/// Top-level-reverted transactions are not recorded.
class Node {
  public:
    explicit Node(GasSchedule schedule = {}, std::uint64_t entropy_seed = 0, ExecutionLimits limits = {});

    Address deploy(std::shared_ptr<const ContractBehavior> behavior, Wei endowment);

    ExecutionResult submit(const Transaction& tx);

    const ChainState& state() const { return state_; }
    const GasSchedule& schedule() const { return schedule_; }
    const std::vector<CommittedTransaction>& history() const { return history_; }

    /// Null when unknown.
    const CommittedTransaction* find(std::string_view tx_hash) const;

  private:
    GasSchedule schedule_;
    ExecutionLimits limits_;
    ChainState state_;
    std::vector<CommittedTransaction> history_;
    std::unordered_map<std::string, std::size_t> by_hash_;
};

}  // namespace rlab::chain
