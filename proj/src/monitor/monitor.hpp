// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chain/node.hpp"

namespace rlab::monitor {

using chain::Address;
using chain::ExecutionTrace;
using chain::Gas;
using chain::Receipt;

/// Service contract (c1) and user contract (c2).
struct WatchList {
    Address c1;
    Address c2;
};

struct Observation {
    std::string tx_id;
    Gas gas_used = 0;
    Wei balance_before_c1;
    Wei balance_after_c1;
    Wei balance_before_c2;
    Wei balance_after_c2;
    ExecutionTrace trace;

    int128 bal_diff_c1() const { return difference(balance_after_c1, balance_before_c1); }
    int128 bal_diff_c2() const { return difference(balance_after_c2, balance_before_c2); }
};

enum class Probe { kBefore, kAfter };

/// What a monitoring client can ask of a chain: the committed transaction
/// feed, receipts, traces, and balances probed around a transaction.
/// Reverted top-level transactions are never part of the feed.
class ChainSource {
  public:
    virtual ~ChainSource() = default;

    /// Number of committed transactions so far.
    virtual std::size_t height() const = 0;
    virtual std::string transaction_id(std::size_t index) const = 0;
    /// Every address that took part in the transaction, as sender or frame
    /// participant.
    virtual std::vector<Address> participants(std::size_t index) const = 0;

    virtual std::optional<Receipt> receipt(const std::string& tx_id) const = 0;
    virtual std::optional<ExecutionTrace> trace(const std::string& tx_id) const = 0;
    virtual std::optional<Wei> balance(const Address& account, const std::string& tx_id, Probe when) const = 0;
};

/// ChainSource over an in-process simulated node.
class NodeSource final : public ChainSource {
  public:
    explicit NodeSource(const chain::Node& node) : node_(node) {}

    std::size_t height() const override { return node_.history().size(); }
    std::string transaction_id(std::size_t index) const override;
    std::vector<Address> participants(std::size_t index) const override;

    std::optional<Receipt> receipt(const std::string& tx_id) const override;
    std::optional<ExecutionTrace> trace(const std::string& tx_id) const override;
    std::optional<Wei> balance(const Address& account, const std::string& tx_id, Probe when) const override;

  private:
    const chain::Node& node_;
};

/// Feed of committed transactions touching a watched address, in chain
/// order. poll() returns the ids that appeared since the previous poll.
class PendingSubscription {
  public:
    PendingSubscription(const ChainSource& source, WatchList watch) : source_(source), watch_(watch) {}

    std::vector<std::string> poll();

  private:
    const ChainSource& source_;
    WatchList watch_;
    std::size_t cursor_ = 0;
};

/// Starts at the beginning of the chain's history.
PendingSubscription subscribe_pending(const ChainSource& source, WatchList watch);

/// Throws kUnknownTransaction when the source does not know `tx_id`.
Observation observe(const ChainSource& source, const std::string& tx_id, const WatchList& watch);

/// Mean frame depth at call entry. Throws kInvalidArgument on an empty trace.
double avg_call_stack_depth(const ExecutionTrace& trace);

/// `%.6f`, the only rendering used for depth in files.
std::string format_depth(double depth);

void write_observation_header(std::ostream& out);
void write_observation_row(std::ostream& out, const Observation& obs);

}  // namespace rlab::monitor
