// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "chain/node.hpp"

namespace rlab::eval {

struct DemoScenario {
    std::string title;
    std::map<chain::Address, std::string> names;
    chain::Address service;
    chain::Address user;
    Wei service_before;
    Wei service_after;
    Wei user_before;
    Wei user_after;
    chain::ExecutionTrace trace;
    std::optional<chain::Receipt> receipt;  // empty when the transaction reverted
    std::string revert_reason;

    /// Committed value transfers from the service to the user.
    int donations() const;
};

struct AttackDemo {
    Wei endowment;
    Wei donation;
    DemoScenario attack;          // attacker vs unguarded service
    DemoScenario counterfactual;  // same attacker vs guarded service
    DemoScenario benign;          // benign user vs unguarded service
};

/// An operator account starts the attack (`startAttack(service)`) or the
/// benign request (`requestDonation(service)`) on a fresh chain per
/// scenario. Pass behaviors::kUnbounded for a draining attacker.
AttackDemo run_attack_demo(std::int64_t reentries, Wei endowment = Wei::ether(10), Wei donation = Wei::ether(1));

/// Frame tree, balances and receipt of one scenario.
std::string format_scenario(const DemoScenario& s);
std::string format_demo(const AttackDemo& demo);

}  // namespace rlab::eval
