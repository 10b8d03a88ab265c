// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chain/address.hpp"
#include "chain/behavior.hpp"
#include "common/wei.hpp"

namespace rlab::chain {

struct Account {
    Wei balance;
    std::shared_ptr<const ContractBehavior> behavior;  // null for plain accounts
    std::map<std::string, std::int64_t, std::less<>> storage;
};

/// World state of one simulated chain. Single-threaded; parallel
/// experiments each own their own instance.
class ChainState {
  public:
    explicit ChainState(std::uint64_t entropy_seed = 0);

    /// Creates a fresh account. `behavior` may be null.
    Address deploy(std::shared_ptr<const ContractBehavior> behavior, Wei endowment);

    bool contains(const Address& a) const { return accounts_.contains(a); }
    const Account& account(const Address& a) const;
    Wei balance_of(const Address& a) const { return account(a).balance; }
    /// Missing slots read as zero.
    std::int64_t storage_at(const Address& a, std::string_view key) const;

    /// Accounts in deployment order.
    const std::vector<Address>& addresses() const { return order_; }
    uint128 total_balance() const;

    std::uint64_t block_number() const { return block_number_; }
    std::uint64_t tx_counter() const { return tx_counter_; }
    std::uint64_t entropy_seed() const { return entropy_seed_; }

    /// Balances and storage of every account (behaviors compared by identity)
    /// plus the counters.
    friend bool operator==(const ChainState& a, const ChainState& b);

    /// Same as ==, but ignores block_number and tx_counter.
    bool same_accounts(const ChainState& other) const;

  private:
    friend class Executor;

    Account& mutable_account(const Address& a);

    std::map<Address, Account> accounts_;
    std::vector<Address> order_;
    std::uint64_t entropy_seed_;
    std::uint64_t nonce_ = 0;
    std::uint64_t block_number_ = 0;
    std::uint64_t tx_counter_ = 0;
};

}  // namespace rlab::chain
