// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "behaviors/templates.hpp"
#include "chain/node.hpp"
#include "chain/receipt.hpp"
#include "common/error.hpp"
#include "helpers.hpp"
#include "monitor/monitor.hpp"

using namespace rlab;
using namespace rlab::monitor;
using rlab::testing::donate_tx;
using rlab::testing::executed;
using rlab::testing::reverted;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// A node client that only knows one stored receipt.
class FixtureSource final : public ChainSource {
  public:
    explicit FixtureSource(Receipt r) : receipt_(std::move(r)) {
        chain::CallFrameRecord f;
        f.caller = receipt_.from;
        f.callee = receipt_.to;
        f.function = "fallback";
        trace_.frames.push_back(f);
        trace_.total_gas_used = receipt_.gas_used;
    }
    std::size_t height() const override { return 1; }
    std::string transaction_id(std::size_t) const override { return receipt_.transaction_hash; }
    std::vector<Address> participants(std::size_t) const override { return {receipt_.from, receipt_.to}; }
    std::optional<Receipt> receipt(const std::string& id) const override {
        return id == receipt_.transaction_hash ? std::optional(receipt_) : std::nullopt;
    }
    std::optional<ExecutionTrace> trace(const std::string& id) const override {
        return id == receipt_.transaction_hash ? std::optional(trace_) : std::nullopt;
    }
    std::optional<Wei> balance(const Address&, const std::string&, Probe) const override { return Wei::ether(1); }

  private:
    Receipt receipt_;
    ExecutionTrace trace_;
};

chain::ExecutionTrace trace_with_depths(std::initializer_list<std::uint32_t> depths) {
    chain::ExecutionTrace t;
    for (auto d : depths) {
        chain::CallFrameRecord f;
        f.depth = d;
        t.frames.push_back(f);
    }
    return t;
}

}  // namespace

TEST_SUITE("monitor") {
    TEST_CASE("subscription skips reverted and unwatched transactions") {
        chain::Node node;
        const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(3));
        const auto user = node.deploy(behaviors::make_benign_user(), Wei{});
        const auto other_service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(5));
        const auto other_user = node.deploy(behaviors::make_benign_user(), Wei{});
        const NodeSource source(node);
        auto feed = subscribe_pending(source, WatchList{service, user});

        std::vector<std::string> expected;
        auto submit = [&](const chain::Transaction& tx, bool watched) {
            const auto r = node.submit(tx);
            if (!reverted(r) && watched) expected.push_back(executed(r).receipt.transaction_hash);
            return r;
        };
        CHECK_FALSE(reverted(submit(donate_tx(user, service), true)));
        CHECK_FALSE(reverted(submit(donate_tx(other_user, other_service), false)));
        CHECK_FALSE(reverted(submit(donate_tx(user, service), true)));
        CHECK(feed.poll() == expected);
        CHECK(feed.poll().empty());

        CHECK_FALSE(reverted(submit(donate_tx(other_user, service), true)));
        // the service is empty now: the fourth donation reverts and never
        // reaches the feed
        CHECK(reverted(submit(donate_tx(user, service), true)));
        const auto later = feed.poll();
        REQUIRE(later.size() == 1);
        CHECK(later[0] == expected.back());
        CHECK(expected.size() == 3);

        // chain order
        std::uint64_t last_block = 0;
        for (const auto& id : expected) {
            const auto block = source.receipt(id)->block_number;
            CHECK(block > last_block);
            last_block = block;
        }
    }

    TEST_CASE("observing a benign donation") {
        chain::Node node;
        const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
        const auto user = node.deploy(behaviors::make_benign_user(), Wei{});
        const NodeSource source(node);
        auto feed = subscribe_pending(source, WatchList{service, user});
        const auto r = node.submit(donate_tx(user, service));
        const auto ids = feed.poll();
        REQUIRE(ids.size() == 1);

        const auto before = node.state();
        const auto obs = observe(source, ids[0], WatchList{service, user});
        CHECK(node.state() == before);
        CHECK(obs.tx_id == executed(r).receipt.transaction_hash);
        CHECK(obs.bal_diff_c1() == -int128(1'000'000'000'000'000'000LL));
        CHECK(obs.bal_diff_c2() == int128(1'000'000'000'000'000'000LL));
        CHECK(obs.balance_before_c1 == Wei::ether(10));
        CHECK(obs.balance_after_c2 == Wei::ether(1));
        CHECK(obs.gas_used == 21810);
        CHECK(avg_call_stack_depth(obs.trace) == 1.5);
    }

    TEST_CASE("observing a transaction without value") {
        chain::Node node;
        const auto service = node.deploy(behaviors::make_robust_service(Wei::ether(1)), Wei::ether(10));
        const auto account = node.deploy(nullptr, Wei::ether(1));
        chain::Transaction tx;
        tx.from = account;
        tx.to = service;
        tx.gas_limit = 100'000;
        const auto r = node.submit(tx);
        const NodeSource source(node);
        const auto obs = observe(source, executed(r).receipt.transaction_hash, WatchList{service, account});
        CHECK(obs.bal_diff_c1() == 0);
        CHECK(obs.bal_diff_c2() == 0);
        CHECK(obs.gas_used == chain::GasSchedule{}.intrinsic);
        CHECK(avg_call_stack_depth(obs.trace) == 1.0);
    }

    TEST_CASE("stored receipt fixture reads back its gas") {
        const auto receipt = chain::parse_receipt(read_file(RLAB_FIXTURE_DIR "/receipt_162534.json"));
        CHECK(receipt.gas_used == 162534);
        CHECK(receipt.cumulative_gas_used == 162534);
        CHECK(receipt.block_number == 33614);
        CHECK(receipt.status == "0x1");
        CHECK(receipt.logs.empty());
        CHECK_FALSE(receipt.contract_address.has_value());
        const FixtureSource source(receipt);
        const auto obs = observe(source, receipt.transaction_hash, WatchList{receipt.to, receipt.from});
        CHECK(obs.gas_used == 162534);
        CHECK(obs.bal_diff_c1() == 0);
        CHECK_THROWS_AS(observe(source, "0x00", WatchList{receipt.to, receipt.from}), Error);
    }

    TEST_CASE("unknown transactions are reported") {
        chain::Node node;
        const NodeSource source(node);
        try {
            (void)observe(source, "0xabc", WatchList{});
            FAIL("observe did not throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kUnknownTransaction);
        }
    }

    TEST_CASE("average depth is the mean of frame-entry depths") {
        CHECK(avg_call_stack_depth(trace_with_depths({1})) == 1.0);
        CHECK(avg_call_stack_depth(trace_with_depths({1, 2})) == 1.5);
        CHECK(avg_call_stack_depth(trace_with_depths({1, 2, 3, 4, 5, 6})) == 3.5);
        CHECK(avg_call_stack_depth(trace_with_depths({1, 2, 3, 2, 3})) == doctest::Approx(2.2));
        CHECK_THROWS_AS(avg_call_stack_depth(chain::ExecutionTrace{}), Error);
        CHECK(format_depth(1.5) == "1.500000");
        CHECK(format_depth(2.0 / 3.0) == "0.666667");
    }

    TEST_CASE("depth grows with attacker greed and balance deltas conserve value") {
        double last = 0;
        for (std::int64_t m = 1; m <= 8; ++m) {
            chain::Node node;
            const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(20));
            const auto user = node.deploy(behaviors::make_malicious_user(m), Wei{});
            const auto r = node.submit(donate_tx(user, service));
            const NodeSource source(node);
            const auto obs = observe(source, executed(r).receipt.transaction_hash, WatchList{service, user});
            const double depth = avg_call_stack_depth(obs.trace);
            CHECK(depth > last);
            CHECK(depth == doctest::Approx(m + 0.5));
            last = depth;
            // only the two watched contracts hold value here
            CHECK(obs.bal_diff_c1() + obs.bal_diff_c2() == 0);
            CHECK(obs.bal_diff_c1() == -int128(m) * int128(1'000'000'000'000'000'000LL));
        }
    }

    TEST_CASE("observation log format") {
        Observation obs;
        obs.tx_id = "0x01";
        obs.gas_used = 21810;
        obs.balance_before_c1 = Wei::ether(10);
        obs.balance_after_c1 = Wei::ether(9);
        obs.balance_after_c2 = Wei::ether(1);
        obs.trace = trace_with_depths({1, 2});
        std::ostringstream out;
        write_observation_header(out);
        write_observation_row(out, obs);
        CHECK(out.str() ==
              "tx_id,gas_used,bal_diff_c1,bal_diff_c2,avg_stack_depth\n"
              "0x01,21810,-1000000000000000000,1000000000000000000,1.500000\n");
    }
}
