// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "chain/state.hpp"

#include "common/error.hpp"

namespace rlab::chain {

const Script& ContractBehavior::resolve(const std::optional<std::string>& function) const {
    if (function) {
        if (const auto it = handlers.find(*function); it != handlers.end()) return it->second;
    }
    return fallback;
}

ChainState::ChainState(std::uint64_t entropy_seed) : entropy_seed_(entropy_seed) {}

Address ChainState::deploy(std::shared_ptr<const ContractBehavior> behavior, Wei endowment) {
    Address a = Address::derive(entropy_seed_, nonce_++);
    while (accounts_.contains(a)) a = Address::derive(entropy_seed_, nonce_++);
    // guard the conservation invariant's running sum before committing
    (void)(Wei(total_balance()) + endowment);
    accounts_.emplace(a, Account{endowment, std::move(behavior), {}});
    order_.push_back(a);
    return a;
}

const Account& ChainState::account(const Address& a) const {
    const auto it = accounts_.find(a);
    if (it == accounts_.end()) throw Error(ErrorCode::kUnknownAddress, "unknown address " + a.hex());
    return it->second;
}

Account& ChainState::mutable_account(const Address& a) {
    const auto it = accounts_.find(a);
    if (it == accounts_.end()) throw Error(ErrorCode::kUnknownAddress, "unknown address " + a.hex());
    return it->second;
}

std::int64_t ChainState::storage_at(const Address& a, std::string_view key) const {
    const auto& storage = account(a).storage;
    const auto it = storage.find(key);
    return it == storage.end() ? 0 : it->second;
}

uint128 ChainState::total_balance() const {
    Wei sum;
    for (const auto& [_, acct] : accounts_) sum += acct.balance;
    return sum.value();
}

bool ChainState::same_accounts(const ChainState& other) const {
    if (order_ != other.order_) return false;
    for (const auto& [addr, acct] : accounts_) {
        const auto& theirs = other.accounts_.at(addr);
        if (acct.balance != theirs.balance || acct.behavior != theirs.behavior || acct.storage != theirs.storage) {
            return false;
        }
    }
    return true;
}

bool operator==(const ChainState& a, const ChainState& b) {
    return a.block_number_ == b.block_number_ && a.tx_counter_ == b.tx_counter_ && a.same_accounts(b);
}

}  // namespace rlab::chain
