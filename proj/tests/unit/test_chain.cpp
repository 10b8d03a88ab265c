// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>
#include <memory>
#include <json.hpp>

#include "behaviors/templates.hpp"
#include "chain/executor.hpp"
#include "chain/gas.hpp"
#include "chain/node.hpp"
#include "chain/receipt.hpp"
#include "chain/state.hpp"
#include "common/error.hpp"
#include "helpers.hpp"

using namespace rlab;
using namespace rlab::chain;
using rlab::testing::call_tx;
using rlab::testing::committed_transfers;
using rlab::testing::donate_tx;
using rlab::testing::executed;
using rlab::testing::reverted;

namespace {

std::shared_ptr<const ContractBehavior> script_behavior(std::string kind, Script fallback,
                                                        std::map<std::string, Script> handlers = {}) {
    ContractBehavior b;
    b.kind = std::move(kind);
    b.fallback = std::move(fallback);
    b.handlers = std::move(handlers);
    return std::make_shared<const ContractBehavior>(std::move(b));
}

Slot slot(std::string name) { return Slot{std::move(name), std::nullopt}; }

/// Fallback that accepts the first `fail_at - 1` donations and re-enters the
/// sender's donate(); the `fail_at`-th fallback fails its require.
std::shared_ptr<const ContractBehavior> failing_reentrant_user(std::int64_t fail_at) {
    Script fallback{
        Instruction{Increment{slot("donations")}},
        Instruction{Require{slot("donations"), Cmp::kLt, fail_at}},
        Instruction{When{slot("donations"), Cmp::kLt, fail_at,
                         Script{Instruction{Call{AddressRef::kCaller, std::string("donate"), Amount{}, AddressRef::kSelf,
                                                 OnFailure::kIgnore}}}}},
    };
    return script_behavior("failing-at", std::move(fallback));
}

/// Snapshot oracle: apply the transfers of committed frames to the
/// pre-transaction balances, independently of the executor's journal.
std::map<Address, Wei> replay_committed(const ChainState& before, const ExecutionTrace& trace) {
    std::map<Address, Wei> balances;
    for (const auto& a : before.addresses()) balances[a] = before.balance_of(a);
    const auto committed = committed_frames(trace);
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
        if (!committed[i]) continue;
        const auto& f = trace.frames[i];
        balances[f.caller] -= f.value;
        balances[f.callee] += f.value;
    }
    return balances;
}

void check_matches(const ChainState& after, const std::map<Address, Wei>& expected) {
    for (const auto& [a, w] : expected) CHECK(after.balance_of(a) == w);
}

}  // namespace

TEST_SUITE("chain") {
    TEST_CASE("deploy reads back the endowment and yields distinct addresses") {
        ChainState s;
        const auto a = s.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
        CHECK(s.balance_of(a).value() == uint128(10'000'000'000'000'000'000ULL));
        const auto b = s.deploy(behaviors::make_robust_service(Wei::ether(1)), Wei{});
        CHECK(a != b);
        CHECK(s.balance_of(b).is_zero());
        CHECK(s.addresses().size() == 2);
        CHECK(a.hex().size() == 42);
        CHECK(Address::from_hex(a.hex()) == a);
    }

    TEST_CASE("zero-endowment guarded service is callable") {
        Node node;
        const auto service = node.deploy(behaviors::make_robust_service(Wei::ether(1)), Wei{});
        const auto user = node.deploy(nullptr, Wei{});
        // the guard passes but the transfer cannot be funded: the call fails
        // cleanly as a top-level revert rather than corrupting state
        const auto before = node.state();
        const auto r = node.submit(donate_tx(user, service));
        CHECK(reverted(r));
        CHECK(node.state().same_accounts(before));

        Transaction fund;
        fund.from = node.deploy(nullptr, Wei::ether(3));
        fund.to = service;
        fund.value = Wei::ether(2);
        fund.gas_limit = 50'000;
        REQUIRE_FALSE(reverted(node.submit(fund)));
        CHECK(node.state().balance_of(service) == Wei::ether(2));
        REQUIRE_FALSE(reverted(node.submit(donate_tx(user, service))));
        CHECK(node.state().balance_of(user) == Wei::ether(1));
    }

    TEST_CASE("plain transfer to an empty fallback is a single frame") {
        Node node;
        const auto from = node.deploy(nullptr, Wei::ether(1));
        const auto to = node.deploy(script_behavior("empty", {}), Wei{});
        Transaction tx;
        tx.from = from;
        tx.to = to;
        tx.gas_limit = 21000;
        const auto r = node.submit(tx);
        REQUIRE_FALSE(reverted(r));
        const auto& e = executed(r);
        CHECK(e.trace.frames.size() == 1);
        CHECK(e.trace.frames[0].depth == 1);
        CHECK(e.trace.frames[0].function == "fallback");
        CHECK(e.receipt.gas_used == 21000);
        CHECK(node.state().balance_of(from) == Wei::ether(1));
    }

    TEST_CASE("gas limit equal to the intrinsic cost still moves value") {
        Node node;
        const auto from = node.deploy(nullptr, Wei::ether(1));
        const auto to = node.deploy(script_behavior("empty", {}), Wei{});
        Transaction tx;
        tx.from = from;
        tx.to = to;
        tx.value = Wei(1000);
        tx.gas_limit = GasSchedule{}.intrinsic;
        const auto r = node.submit(tx);
        REQUIRE_FALSE(reverted(r));
        CHECK(node.state().balance_of(to) == Wei(1000));
        CHECK(executed(r).receipt.gas_used == 21000);

        tx.gas_limit = 20999;
        CHECK_THROWS_AS(node.submit(tx), Error);
    }

    TEST_CASE("one call, one sstore and two ariths cost 21810") {
        // donate: Compute(1) + value call; benign fallback: Increment
        // (arith + sstore)
        Node node;
        const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
        const auto user = node.deploy(behaviors::make_benign_user(), Wei{});
        const auto r = node.submit(donate_tx(user, service));
        REQUIRE_FALSE(reverted(r));
        const GasSchedule g;
        CHECK(g.intrinsic + g.call_base + g.storage_write + 2 * g.arith == 21810);
        CHECK(executed(r).receipt.gas_used == 21810);
        CHECK(executed(r).trace.total_gas_used == 21810);
    }

    TEST_CASE("a loop of c iterations adds c arith charges") {
        for (std::int64_t c : {0, 1, 7, 250}) {
            Node node;
            const auto from = node.deploy(nullptr, Wei{});
            const auto to = node.deploy(script_behavior("loop", {Instruction{Loop{slot("i"), c}}}), Wei{});
            Transaction tx;
            tx.from = from;
            tx.to = to;
            tx.gas_limit = 1'000'000;
            const auto r = node.submit(tx);
            REQUIRE_FALSE(reverted(r));
            CHECK(executed(r).receipt.gas_used == 21000 + static_cast<Gas>(c) * 5);
            CHECK(node.state().storage_at(to, "i") == c);
        }
    }

    TEST_CASE("gas schedule config overrides selected costs") {
        const auto g = GasSchedule::parse("# costs\narith = 3\n\ncall_base=900\n");
        CHECK(g.arith == 3);
        CHECK(g.call_base == 900);
        CHECK(g.intrinsic == 21000);
        CHECK(g.storage_write == 100);
        CHECK(GasSchedule::parse(g.to_config()) == g);
        CHECK_THROWS_AS(GasSchedule::parse("arith = -1"), Error);
        CHECK_THROWS_AS(GasSchedule::parse("bogus = 1"), Error);
    }

    TEST_CASE("unbounded attacker drains the vulnerable service") {
        Node node;
        const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
        const auto attacker = node.deploy(behaviors::make_malicious_user(behaviors::kUnbounded), Wei{});
        const auto total = node.state().total_balance();
        const auto r = node.submit(donate_tx(attacker, service));
        REQUIRE_FALSE(reverted(r));
        CHECK(executed(r).receipt.status == "0x1");
        const Wei residue = node.state().balance_of(service);
        CHECK(residue < Wei::ether(1));
        CHECK(node.state().balance_of(attacker) == Wei::ether(10) - residue);
        CHECK(node.state().total_balance() == total);
        CHECK(committed_transfers(executed(r).trace, service, attacker) == 10);
    }

    TEST_CASE("outermost require failure reverts with state unchanged") {
        Node node;
        const auto from = node.deploy(nullptr, Wei::ether(5));
        const auto to = node.deploy(script_behavior("picky", {Instruction{Require{std::int64_t{0}, Cmp::kEq, 1}}}),
                                    Wei::ether(1));
        const auto before = node.state();
        Transaction tx;
        tx.from = from;
        tx.to = to;
        tx.value = Wei::ether(2);
        tx.gas_limit = 100'000;
        const auto r = node.submit(tx);
        REQUIRE(reverted(r));
        CHECK(node.state().same_accounts(before));
        CHECK(node.state().block_number() == before.block_number() + 1);
        CHECK(node.history().empty());
        CHECK(node.state().balance_of(from) == Wei::ether(5));
    }

    TEST_CASE("unknown addresses are rejected") {
        Node node;
        const auto a = node.deploy(nullptr, Wei{});
        Transaction tx;
        tx.from = a;
        tx.to = Address::derive(99, 99);
        tx.gas_limit = 30000;
        CHECK_THROWS_AS(node.submit(tx), Error);
        CHECK_THROWS_AS((void)node.state().balance_of(Address::derive(99, 99)), Error);
    }

    TEST_CASE("nested donations: only the failing frame is rolled back") {
        for (std::int64_t n : {2, 3, 6}) {
            CAPTURE(n);
            Node node;
            const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
            const auto user = node.deploy(failing_reentrant_user(n), Wei{});
            const ChainState before = node.state();
            const auto r = node.submit(donate_tx(user, service));
            REQUIRE_FALSE(reverted(r));
            const auto& trace = executed(r).trace;

            CHECK(committed_transfers(trace, service, user) == n - 1);
            check_matches(node.state(), replay_committed(before, trace));
            CHECK(node.state().balance_of(user) == Wei::ether(static_cast<std::uint64_t>(n - 1)));
            // the failing fallback's increment is gone with it
            CHECK(node.state().storage_at(user, "donations") == n - 1);

            // the n-th fallback failed and took its donate frame along
            const auto& last = trace.frames.back();
            CHECK(last.depth == static_cast<std::uint32_t>(2 * n));
            CHECK(last.outcome == FrameOutcome::kRevertedFrame);
            CHECK(trace.frames[trace.frames.size() - 2].outcome == FrameOutcome::kRevertedFrame);
            for (std::size_t i = 0; i + 2 < trace.frames.size(); ++i) {
                CHECK(trace.frames[i].outcome == FrameOutcome::kCompleted);
            }

            // masking the failed frames is equivalent to an attacker that
            // stops one donation earlier
            Node masked;
            const auto s2 = masked.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
            const auto u2 = masked.deploy(behaviors::make_malicious_user(n - 1), Wei{});
            REQUIRE_FALSE(reverted(masked.submit(donate_tx(u2, s2))));
            CHECK(masked.state().balance_of(s2) == node.state().balance_of(service));
            CHECK(masked.state().balance_of(u2) == node.state().balance_of(user));
        }
    }

    TEST_CASE("nested donations: the frame that runs out of gas is rolled back") {
        // per re-entry level: donate (arith + call) and attacker fallback
        // (increment + when + call)
        const GasSchedule g;
        const Gas level = g.arith + g.call_base + (g.arith + g.storage_write) + g.arith + g.call_base;
        REQUIRE(level == 1515);
        for (std::int64_t n : {2, 3, 6}) {
            CAPTURE(n);
            Node node;
            const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
            const auto user = node.deploy(behaviors::make_malicious_user(behaviors::kUnbounded), Wei{});
            const ChainState before = node.state();
            // enough for n-1 full levels and the n-th donate, not for the n-th
            // fallback's increment
            const Gas limit = g.intrinsic + static_cast<Gas>(n - 1) * level + g.arith + g.call_base + 50;
            const auto r = node.submit(donate_tx(user, service, limit));
            REQUIRE_FALSE(reverted(r));
            const auto& trace = executed(r).trace;

            CHECK(committed_transfers(trace, service, user) == n - 1);
            check_matches(node.state(), replay_committed(before, trace));
            CHECK(node.state().storage_at(user, "donations") == n - 1);
            CHECK(trace.frames.back().outcome == FrameOutcome::kOutOfGas);
            CHECK(trace.frames.back().depth == static_cast<std::uint32_t>(2 * n));
            CHECK(executed(r).receipt.gas_used <= limit);
        }
    }

    TEST_CASE("underfunded transfer fails its frame and the require propagates one level") {
        Node node;
        const auto op = node.deploy(nullptr, Wei{});
        const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei(5));
        const auto user = node.deploy(behaviors::make_benign_user(), Wei{});
        const auto before = node.state();
        const auto r = node.submit(call_tx(op, user, "requestDonation", service));
        REQUIRE(reverted(r));
        const auto& trace = rlab::testing::trace_of(r);
        // requestDonation -> donate; the transfer never opens a frame
        REQUIRE(trace.frames.size() == 2);
        CHECK(trace.frames[1].outcome == FrameOutcome::kRevertedFrame);
        CHECK(trace.frames[0].outcome == FrameOutcome::kRevertedFrame);
        CHECK(node.state().same_accounts(before));
    }

    TEST_CASE("calling a function on a plain account has no effects") {
        Node node;
        const auto a = node.deploy(nullptr, Wei::ether(1));
        const auto b = node.deploy(nullptr, Wei::ether(2));
        const auto r = node.submit(call_tx(a, b, "anything", std::nullopt));
        REQUIRE_FALSE(reverted(r));
        CHECK(executed(r).trace.frames.size() == 1);
        CHECK(node.state().balance_of(a) == Wei::ether(1));
        CHECK(node.state().balance_of(b) == Wei::ether(2));
    }

    TEST_CASE("call depth follows a call-tree preorder") {
        Node node;
        const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
        const auto attacker = node.deploy(behaviors::make_malicious_user(4), Wei{});
        const auto r = node.submit(donate_tx(attacker, service));
        const auto& frames = executed(r).trace.frames;
        REQUIRE(frames.size() == 8);
        CHECK(frames[0].depth == 1);
        for (std::size_t i = 1; i < frames.size(); ++i) CHECK(frames[i].depth <= frames[i - 1].depth + 1);
        const auto parents = frame_parents(executed(r).trace);
        CHECK(parents[0] == -1);
        for (std::size_t i = 1; i < frames.size(); ++i) CHECK(parents[i] == static_cast<int>(i) - 1);
    }

    TEST_CASE("receipt has the wire fields in order and round-trips") {
        Node node;
        const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
        const auto user = node.deploy(behaviors::make_benign_user(), Wei{});
        const auto r1 = node.submit(donate_tx(user, service));
        const auto r2 = node.submit(donate_tx(user, service));
        const auto& rc = executed(r2).receipt;
        CHECK(executed(r1).receipt.block_number == 1);
        CHECK(rc.block_number == 2);
        CHECK(rc.cumulative_gas_used == rc.gas_used);
        CHECK(rc.transaction_index == 0);
        CHECK(rc.logs.empty());
        CHECK(rc.status == "0x1");
        CHECK(rc.from == user);
        CHECK(rc.to == service);
        CHECK(rc.transaction_hash != executed(r1).receipt.transaction_hash);
        CHECK(rc.logs_bloom == empty_logs_bloom());
        CHECK(rc.logs_bloom.size() == 2 + 512);

        const auto text = to_json(rc, 2);
        const auto j = nlohmann::ordered_json::parse(text);
        std::vector<std::string> keys;
        for (const auto& [k, v] : j.items()) keys.push_back(k);
        const std::vector<std::string> expected{"blockHash", "blockNumber",     "contractAddress", "cumulativeGasUsed",
                                                "from",      "gasUsed",         "logs",            "logsBloom",
                                                "status",    "to",              "transactionHash", "transactionIndex"};
        CHECK(keys == expected);
        CHECK(j["contractAddress"].is_null());
        CHECK(parse_receipt(text) == rc);
        CHECK(node.find(rc.transaction_hash) != nullptr);
        CHECK(node.find("0xdead") == nullptr);
        CHECK_THROWS_AS(parse_receipt("{\"blockHash\": 1}"), Error);
    }

    TEST_CASE("execution is deterministic") {
        auto run = [] {
            Node node(GasSchedule{}, 77);
            Rng rng(5);
            const auto service = node.deploy(behaviors::make_fuzzed_vulnerable_service(rng), Wei::ether(10));
            const auto attacker = node.deploy(behaviors::make_malicious_user(3, {.gas_loop = true}), Wei{});
            const auto r = node.submit(donate_tx(attacker, service));
            return to_json(executed(r).receipt, 0) + std::to_string(executed(r).trace.frames.size());
        };
        CHECK(run() == run());
    }
}
