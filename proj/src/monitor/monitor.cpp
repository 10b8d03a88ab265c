// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "monitor/monitor.hpp"

#include <algorithm>
#include <cstdio>

#include "common/error.hpp"

namespace rlab::monitor {

std::string NodeSource::transaction_id(std::size_t index) const {
    return node_.history().at(index).receipt.transaction_hash;
}

std::vector<Address> NodeSource::participants(std::size_t index) const {
    const auto& committed = node_.history().at(index);
    std::vector<Address> out{committed.tx.from, committed.tx.to};
    for (const auto& f : committed.trace.frames) {
        out.push_back(f.caller);
        out.push_back(f.callee);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<Receipt> NodeSource::receipt(const std::string& tx_id) const {
    const auto* c = node_.find(tx_id);
    return c ? std::optional(c->receipt) : std::nullopt;
}

std::optional<ExecutionTrace> NodeSource::trace(const std::string& tx_id) const {
    const auto* c = node_.find(tx_id);
    return c ? std::optional(c->trace) : std::nullopt;
}

std::optional<Wei> NodeSource::balance(const Address& account, const std::string& tx_id, Probe when) const {
    const auto* c = node_.find(tx_id);
    if (!c) return std::nullopt;
    const auto& snapshot = when == Probe::kBefore ? c->balances_before : c->balances_after;
    const auto it = snapshot.find(account);
    // accounts deployed after the probed transaction did not exist yet
    return it == snapshot.end() ? Wei{} : it->second;
}

std::vector<std::string> PendingSubscription::poll() {
    std::vector<std::string> ids;
    for (const std::size_t height = source_.height(); cursor_ < height; ++cursor_) {
        const auto who = source_.participants(cursor_);
        const bool watched = std::binary_search(who.begin(), who.end(), watch_.c1) ||
                             std::binary_search(who.begin(), who.end(), watch_.c2);
        if (watched) ids.push_back(source_.transaction_id(cursor_));
    }
    return ids;
}

PendingSubscription subscribe_pending(const ChainSource& source, WatchList watch) {
    return PendingSubscription(source, watch);
}

Observation observe(const ChainSource& source, const std::string& tx_id, const WatchList& watch) {
    auto receipt = source.receipt(tx_id);
    auto trace = source.trace(tx_id);
    if (!receipt || !trace) throw Error(ErrorCode::kUnknownTransaction, "unknown transaction " + tx_id);

    auto probe = [&](const Address& a, Probe when) {
        auto b = source.balance(a, tx_id, when);
        if (!b) throw Error(ErrorCode::kUnknownTransaction, "no balance probe for transaction " + tx_id);
        return *b;
    };

    Observation obs;
    obs.tx_id = tx_id;
    obs.gas_used = receipt->gas_used;
    obs.balance_before_c1 = probe(watch.c1, Probe::kBefore);
    obs.balance_after_c1 = probe(watch.c1, Probe::kAfter);
    obs.balance_before_c2 = probe(watch.c2, Probe::kBefore);
    obs.balance_after_c2 = probe(watch.c2, Probe::kAfter);
    obs.trace = std::move(*trace);
    return obs;
}

double avg_call_stack_depth(const ExecutionTrace& trace) {
    if (trace.frames.empty()) throw Error(ErrorCode::kInvalidArgument, "average depth of an empty trace");
    double sum = 0;
    for (const auto& f : trace.frames) sum += f.depth;
    return sum / static_cast<double>(trace.frames.size());
}

std::string format_depth(double depth) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", depth);
    return buf;
}

void write_observation_header(std::ostream& out) { out << "tx_id,gas_used,bal_diff_c1,bal_diff_c2,avg_stack_depth\n"; }

void write_observation_row(std::ostream& out, const Observation& obs) {
    out << obs.tx_id << ',' << obs.gas_used << ',' << to_string(obs.bal_diff_c1()) << ','
        << to_string(obs.bal_diff_c2()) << ',' << format_depth(avg_call_stack_depth(obs.trace)) << '\n';
}

}  // namespace rlab::monitor
