// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "chain/node.hpp"

namespace rlab::chain {

namespace {

std::map<Address, Wei> snapshot_balances(const ChainState& state) {
    std::map<Address, Wei> out;
    for (const auto& a : state.addresses()) out.emplace(a, state.balance_of(a));
    return out;
}

}  // namespace

Node::Node(GasSchedule schedule, std::uint64_t entropy_seed, ExecutionLimits limits)
    : schedule_(schedule), limits_(limits), state_(entropy_seed) {}

Address Node::deploy(std::shared_ptr<const ContractBehavior> behavior, Wei endowment) {
    return state_.deploy(std::move(behavior), endowment);
}

ExecutionResult Node::submit(const Transaction& tx) {
    auto before = snapshot_balances(state_);
    ExecutionResult result = execute_transaction(state_, tx, schedule_, limits_);
    if (const auto* executed = std::get_if<Executed>(&result)) {
        by_hash_.emplace(executed->receipt.transaction_hash, history_.size());
        history_.push_back(
            CommittedTransaction{tx, executed->receipt, executed->trace, std::move(before), snapshot_balances(state_)});
    }
    return result;
}

const CommittedTransaction* Node::find(std::string_view tx_hash) const {
    const auto it = by_hash_.find(std::string(tx_hash));
    return it == by_hash_.end() ? nullptr : &history_[it->second];
}

}  // namespace rlab::chain
