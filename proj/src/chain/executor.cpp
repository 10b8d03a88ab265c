// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "chain/executor.hpp"

#include <limits>
#include <type_traits>

#include "common/digest.hpp"
#include "common/error.hpp"
#include "common/rng.hpp"

namespace rlab::chain {

const char* to_string(FrameOutcome outcome) noexcept {
    switch (outcome) {
        case FrameOutcome::kCompleted:
            return "Completed";
        case FrameOutcome::kRevertedFrame:
            return "RevertedFrame";
        case FrameOutcome::kOutOfGas:
            return "OutOfGas";
    }
    return "?";
}

std::vector<int> frame_parents(const ExecutionTrace& trace) {
    std::vector<int> parents(trace.frames.size(), -1);
    std::vector<int> open;  // open[d - 1] = latest frame entered at depth d
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
        const auto depth = trace.frames[i].depth;
        open.resize(depth - 1);
        parents[i] = depth > 1 ? open[depth - 2] : -1;
        open.push_back(static_cast<int>(i));
    }
    return parents;
}

std::vector<bool> committed_frames(const ExecutionTrace& trace) {
    const auto parents = frame_parents(trace);
    std::vector<bool> committed(trace.frames.size(), false);
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
        const bool self_ok = trace.frames[i].outcome == FrameOutcome::kCompleted;
        committed[i] = self_ok && (parents[i] < 0 || committed[static_cast<std::size_t>(parents[i])]);
    }
    return committed;
}

bool GasMeter::charge(const GasSchedule& schedule, OpKind kind, std::uint64_t count) {
    const Gas unit = schedule.cost(kind);
    if (unit != 0 && count > std::numeric_limits<Gas>::max() / unit) return false;
    const Gas cost = unit * count;
    if (cost > remaining()) return false;
    used_ += cost;
    return true;
}

namespace {

enum class Status { kOk, kRevert, kOutOfGas };

struct BalanceEntry {
    Address account;
    Wei old;
};

struct StorageEntry {
    Address account;
    std::string key;
    std::optional<std::int64_t> old;
};

using JournalEntry = std::variant<BalanceEntry, StorageEntry>;

struct Frame {
    Address self;
    Address caller;
    std::optional<Address> argument;
    std::uint32_t depth;
    std::uint64_t salt;
    GasMeter meter;
};

struct FrameResult {
    bool success;
    Gas gas_used;
};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

class Executor {
  public:
    Executor(ChainState& state, const GasSchedule& schedule, const ExecutionLimits& limits, std::uint64_t entropy)
        : state_(state), schedule_(schedule), limits_(limits), entropy_(entropy) {}

    FrameResult invoke_frame(const Address& caller, const Address& callee, const std::optional<std::string>& function,
                             const std::optional<Address>& argument, Wei value, Gas gas, std::uint32_t depth);

    ExecutionTrace take_trace() { return std::move(trace_); }

    static void advance(ChainState& state, std::uint64_t block, std::uint64_t counter) {
        state.block_number_ = block;
        state.tx_counter_ = counter;
    }

  private:
    Status run(const Script& script, Frame& frame);
    Status step(const Instruction& insn, Frame& frame);

    Address resolve(AddressRef ref, const Frame& frame) const;
    std::string key_of(const Slot& slot, const Frame& frame) const;
    std::int64_t read(const Operand& operand, const Frame& frame) const;
    void write(const Frame& frame, const Slot& slot, std::int64_t value);
    void transfer(const Address& from, const Address& to, Wei value);
    void rollback(std::size_t mark);

    ChainState& state_;
    const GasSchedule& schedule_;
    const ExecutionLimits& limits_;
    std::uint64_t entropy_;
    std::uint64_t draws_ = 0;
    std::vector<JournalEntry> journal_;
    ExecutionTrace trace_;
};

FrameResult Executor::invoke_frame(const Address& caller, const Address& callee,
                                   const std::optional<std::string>& function, const std::optional<Address>& argument,
                                   Wei value, Gas gas, std::uint32_t depth) {
    const Account& target = state_.account(callee);
    const bool has_handler = target.behavior && function && target.behavior->handlers.contains(*function);

    const std::size_t index = trace_.frames.size();
    trace_.frames.push_back(CallFrameRecord{depth, caller, callee, has_handler ? *function : "fallback", value,
                                            FrameOutcome::kCompleted, 0});

    const std::size_t mark = journal_.size();
    transfer(caller, callee, value);

    Frame frame{callee, caller, argument, depth, target.behavior ? target.behavior->salt : 0, GasMeter(gas)};
    Status status = Status::kOk;
    if (target.behavior) {
        // keep the behavior alive independently of the account map
        const auto behavior = target.behavior;
        status = run(behavior->resolve(function), frame);
    }
    if (status != Status::kOk) rollback(mark);

    auto& record = trace_.frames[index];
    record.outcome = status == Status::kOk       ? FrameOutcome::kCompleted
                     : status == Status::kRevert ? FrameOutcome::kRevertedFrame
                                                 : FrameOutcome::kOutOfGas;
    record.gas_used = frame.meter.used();
    return {status == Status::kOk, frame.meter.used()};
}

Status Executor::run(const Script& script, Frame& frame) {
    for (const auto& insn : script) {
        if (const Status s = step(insn, frame); s != Status::kOk) return s;
    }
    return Status::kOk;
}

Status Executor::step(const Instruction& insn, Frame& frame) {
    auto charge = [&](OpKind kind, std::uint64_t count = 1) { return frame.meter.charge(schedule_, kind, count); };

    return std::visit(
        Overloaded{
            [&](const Compute& c) { return charge(OpKind::kArith, c.ops) ? Status::kOk : Status::kOutOfGas; },
            [&](const Store& s) {
                if (!charge(OpKind::kStorageWrite)) return Status::kOutOfGas;
                write(frame, s.dst, read(s.src, frame));
                return Status::kOk;
            },
            [&](const Increment& inc) {
                if (!charge(OpKind::kArith) || !charge(OpKind::kStorageWrite)) return Status::kOutOfGas;
                write(frame, inc.dst, read(inc.dst, frame) + 1);
                return Status::kOk;
            },
            [&](const Draw& d) {
                if (!charge(OpKind::kArith) || !charge(OpKind::kStorageWrite)) return Status::kOutOfGas;
                Rng rng = Rng(entropy_).child(frame.salt).child(draws_++);
                write(frame, d.dst, static_cast<std::int64_t>(rng.uniform(d.bound)));
                return Status::kOk;
            },
            [&](const Loop& l) {
                const std::int64_t n = read(l.iterations, frame);
                const std::string key = key_of(l.counter, frame);
                std::int64_t done = 0;
                Status s = Status::kOk;
                for (; done < n; ++done) {
                    if (!charge(OpKind::kArith)) {
                        s = Status::kOutOfGas;
                        break;
                    }
                }
                if (done > 0) write(frame, l.counter, state_.storage_at(frame.self, key) + done);
                return s;
            },
            [&](const When& w) {
                if (!charge(OpKind::kArith)) return Status::kOutOfGas;
                const auto lhs = read(w.lhs, frame);
                const auto rhs = read(w.rhs, frame);
                bool holds = false;
                switch (w.cmp) {
                    case Cmp::kEq: holds = lhs == rhs; break;
                    case Cmp::kNe: holds = lhs != rhs; break;
                    case Cmp::kLt: holds = lhs < rhs; break;
                    case Cmp::kGe: holds = lhs >= rhs; break;
                }
                return holds ? run(w.then, frame) : Status::kOk;
            },
            [&](const Require& r) {
                if (!charge(OpKind::kArith)) return Status::kOutOfGas;
                const auto lhs = read(r.lhs, frame);
                const auto rhs = read(r.rhs, frame);
                bool holds = false;
                switch (r.cmp) {
                    case Cmp::kEq: holds = lhs == rhs; break;
                    case Cmp::kNe: holds = lhs != rhs; break;
                    case Cmp::kLt: holds = lhs < rhs; break;
                    case Cmp::kGe: holds = lhs >= rhs; break;
                }
                return holds ? Status::kOk : Status::kRevert;
            },
            [&](const Call& c) {
                if (!charge(OpKind::kCallBase)) return Status::kOutOfGas;
                const Address target = resolve(c.target, frame);
                const std::optional<Address> argument =
                    c.argument ? std::optional<Address>(resolve(*c.argument, frame)) : std::nullopt;

                Wei value = c.value.fixed;
                if (c.value.slot) {
                    const auto units = read(*c.value.slot, frame);
                    value = units <= 0 ? Wei{} : c.value.multiplier.times(static_cast<std::uint64_t>(units));
                }

                bool ok = false;
                // a call that cannot start (depth, funds, missing account)
                // fails without opening a frame
                if (frame.depth < limits_.max_call_depth && state_.contains(target) &&
                    state_.balance_of(frame.self) >= value) {
                    const FrameResult child = invoke_frame(frame.self, target, c.function, argument, value,
                                                           frame.meter.remaining(), frame.depth + 1);
                    frame.meter.absorb(child.gas_used);
                    ok = child.success;
                }
                if (!ok && c.on_failure == OnFailure::kRevert) return Status::kRevert;
                return Status::kOk;
            },
        },
        insn.op);
}

Address Executor::resolve(AddressRef ref, const Frame& frame) const {
    switch (ref) {
        case AddressRef::kCaller:
            return frame.caller;
        case AddressRef::kSelf:
            return frame.self;
        case AddressRef::kArgument:
            return frame.argument.value_or(frame.caller);
    }
    return frame.caller;
}

std::string Executor::key_of(const Slot& slot, const Frame& frame) const {
    if (!slot.keyed_by) return slot.name;
    return slot.name + "[" + resolve(*slot.keyed_by, frame).hex() + "]";
}

std::int64_t Executor::read(const Operand& operand, const Frame& frame) const {
    if (const auto* literal = std::get_if<std::int64_t>(&operand)) return *literal;
    return state_.storage_at(frame.self, key_of(std::get<Slot>(operand), frame));
}

void Executor::write(const Frame& frame, const Slot& slot, std::int64_t value) {
    auto key = key_of(slot, frame);
    auto& storage = state_.mutable_account(frame.self).storage;
    const auto it = storage.find(key);
    journal_.emplace_back(StorageEntry{frame.self, key, it == storage.end() ? std::nullopt : std::optional(it->second)});
    storage[std::move(key)] = value;
}

void Executor::transfer(const Address& from, const Address& to, Wei value) {
    if (value.is_zero()) return;
    auto& src = state_.mutable_account(from);
    auto& dst = state_.mutable_account(to);
    journal_.emplace_back(BalanceEntry{from, src.balance});
    journal_.emplace_back(BalanceEntry{to, dst.balance});
    src.balance -= value;
    dst.balance += value;
}

void Executor::rollback(std::size_t mark) {
    while (journal_.size() > mark) {
        std::visit(Overloaded{
                       [&](const BalanceEntry& e) { state_.mutable_account(e.account).balance = e.old; },
                       [&](const StorageEntry& e) {
                           auto& storage = state_.mutable_account(e.account).storage;
                           if (e.old) {
                               storage[e.key] = *e.old;
                           } else {
                               storage.erase(e.key);
                           }
                       },
                   },
                   journal_.back());
        journal_.pop_back();
    }
}

namespace {

Hash32 transaction_digest(const ChainState& state, const Transaction& tx, std::uint64_t block, std::uint64_t counter) {
    DigestInput in;
    in.add("tx").add(block).add(counter).add(tx.from.bytes).add(tx.to.bytes);
    in.add(tx.function.value_or("")).add(tx.argument ? tx.argument->hex() : std::string{});
    in.add(to_string(tx.value)).add(tx.gas_limit).add(state.entropy_seed());
    return in.finish();
}

}  // namespace

ExecutionResult execute_transaction(ChainState& state, const Transaction& tx, const GasSchedule& schedule,
                                    const ExecutionLimits& limits) {
    if (!state.contains(tx.from)) throw Error(ErrorCode::kUnknownAddress, "transaction sender " + tx.from.hex());
    if (!state.contains(tx.to)) throw Error(ErrorCode::kUnknownAddress, "transaction recipient " + tx.to.hex());
    if (tx.argument && !state.contains(*tx.argument)) {
        throw Error(ErrorCode::kUnknownAddress, "transaction argument " + tx.argument->hex());
    }
    if (tx.gas_limit < schedule.intrinsic) {
        throw Error(ErrorCode::kGasLimitBelowIntrinsic, "gas limit " + std::to_string(tx.gas_limit) +
                                                            " below intrinsic cost " +
                                                            std::to_string(schedule.intrinsic));
    }

    const std::uint64_t block = state.block_number() + 1;
    const std::uint64_t counter = state.tx_counter() + 1;
    // stands in for block-derived randomness (timestamp, difficulty)
    const std::uint64_t entropy = Rng(state.entropy_seed()).child(block).seed();

    ExecutionTrace trace;
    bool success = false;
    if (state.balance_of(tx.from) >= tx.value) {
        Executor executor(state, schedule, limits, entropy);
        const FrameResult result =
            executor.invoke_frame(tx.from, tx.to, tx.function, tx.argument, tx.value, tx.gas_limit - schedule.intrinsic, 1);
        trace = executor.take_trace();
        trace.total_gas_used = schedule.intrinsic + result.gas_used;
        success = result.success;
    } else {
        trace.total_gas_used = schedule.intrinsic;
    }

    Executor::advance(state, block, counter);

    if (!success) {
        std::string reason = trace.frames.empty() ? "insufficient sender balance"
                                                  : std::string("outermost frame ") + to_string(trace.frames.front().outcome);
        return TopLevelReverted{std::move(reason), std::move(trace)};
    }

    const Hash32 tx_hash = transaction_digest(state, tx, block, counter);
    const Hash32 block_hash = DigestInput{}.add("block").add(block).add(tx_hash).finish();

    Receipt receipt;
    receipt.block_hash = "0x" + to_hex(block_hash);
    receipt.block_number = block;
    receipt.cumulative_gas_used = trace.total_gas_used;
    receipt.from = tx.from;
    receipt.gas_used = trace.total_gas_used;
    receipt.logs_bloom = empty_logs_bloom();
    receipt.status = "0x1";
    receipt.to = tx.to;
    receipt.transaction_hash = "0x" + to_hex(tx_hash);
    receipt.transaction_index = 0;
    return Executed{std::move(receipt), std::move(trace)};
}

}  // namespace rlab::chain
