// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <variant>

#include "chain/executor.hpp"
#include "chain/node.hpp"

namespace rlab::testing {

inline chain::Transaction donate_tx(const chain::Address& user, const chain::Address& service,
                                    chain::Gas gas_limit = 3'000'000) {
    chain::Transaction tx;
    tx.from = user;
    tx.to = service;
    tx.function = "donate";
    tx.argument = user;
    tx.gas_limit = gas_limit;
    return tx;
}

inline chain::Transaction call_tx(const chain::Address& from, const chain::Address& to, std::string function,
                                  std::optional<chain::Address> argument, chain::Gas gas_limit = 3'000'000) {
    chain::Transaction tx;
    tx.from = from;
    tx.to = to;
    tx.function = std::move(function);
    tx.argument = argument;
    tx.gas_limit = gas_limit;
    return tx;
}

inline const chain::Executed& executed(const chain::ExecutionResult& r) { return std::get<chain::Executed>(r); }

inline bool reverted(const chain::ExecutionResult& r) { return std::holds_alternative<chain::TopLevelReverted>(r); }

inline const chain::ExecutionTrace& trace_of(const chain::ExecutionResult& r) {
    if (const auto* e = std::get_if<chain::Executed>(&r)) return e->trace;
    return std::get<chain::TopLevelReverted>(r).trace;
}

/// Committed value transfers from `from` to `to`.
inline int committed_transfers(const chain::ExecutionTrace& trace, const chain::Address& from,
                               const chain::Address& to) {
    const auto committed = chain::committed_frames(trace);
    int n = 0;
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
        const auto& f = trace.frames[i];
        n += committed[i] && f.caller == from && f.callee == to && !f.value.is_zero();
    }
    return n;
}

}  // namespace rlab::testing
