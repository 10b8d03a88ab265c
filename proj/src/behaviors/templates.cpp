// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "behaviors/templates.hpp"

#include <string>
#include <utility>

#include "common/error.hpp"

namespace rlab::behaviors {

using namespace rlab::chain;

namespace {

Slot slot(std::string name) { return Slot{std::move(name), std::nullopt}; }
Slot keyed(std::string name, AddressRef by) { return Slot{std::move(name), by}; }
Instruction op(auto insn) { return Instruction{std::move(insn)}; }

std::string yes_no(bool b) { return b ? "1" : "0"; }

/// Gas fuzzing prefix shared by all templates.
void append_fuzz(Script& script, const FuzzConfig& fuzz) {
    if (fuzz.gas_loop) {
        script.push_back(op(Draw{slot("d_binary"), 2}));
        script.push_back(op(Draw{slot("c"), fuzz.loop_bound}));
        script.push_back(op(When{slot("d_binary"), Cmp::kEq, std::int64_t{1},
                                 Script{op(Loop{slot("gasFuzzingCounter"), slot("c")})}}));
    }
    if (fuzz.extra_compute > 0) script.push_back(op(Compute{fuzz.extra_compute}));
}

void append_fuzz_params(ContractBehavior& b, const FuzzConfig& fuzz) {
    b.params.emplace_back("gas_loop", yes_no(fuzz.gas_loop));
    b.params.emplace_back("extra_compute", std::to_string(fuzz.extra_compute));
}

std::uint64_t salt_of(const ContractBehavior& b) {
    std::string text = b.kind;
    for (const auto& [k, v] : b.params) text += ";" + k + "=" + v;
    return fnv1a64(text);
}

Call value_call(Amount amount) {
    return Call{AddressRef::kArgument, std::nullopt, std::move(amount), std::nullopt, OnFailure::kRevert};
}

Call donate_request(AddressRef target, OnFailure on_failure) {
    return Call{target, std::string("donate"), Amount{}, AddressRef::kSelf, on_failure};
}

Script guarded(GuardStyle guard, Call transfer) {
    if (guard == GuardStyle::kDonatedFlag) {
        auto flag = keyed("donated", AddressRef::kArgument);
        return Script{op(When{flag, Cmp::kEq, std::int64_t{0},
                              Script{op(Store{flag, std::int64_t{1}}), op(std::move(transfer))}})};
    }
    return Script{op(When{slot("locked"), Cmp::kEq, std::int64_t{0},
                          Script{op(Store{slot("locked"), std::int64_t{1}}), op(std::move(transfer)),
                                 op(Store{slot("locked"), std::int64_t{0}})}})};
}

}  // namespace

BehaviorPtr make_vulnerable_service(Wei donation, const FuzzConfig& fuzz) {
    if (donation.is_zero()) throw Error(ErrorCode::kInvalidArgument, "vulnerable service needs a positive donation");
    ContractBehavior b;
    b.kind = "vulnerable";
    b.params.emplace_back("donation", to_string(donation));
    append_fuzz_params(b, fuzz);

    Script donate;
    append_fuzz(donate, fuzz);
    donate.push_back(op(Compute{1}));
    donate.push_back(op(value_call(Amount{donation, std::nullopt, Wei{}})));
    b.handlers.emplace("donate", std::move(donate));
    b.salt = salt_of(b);
    return std::make_shared<const ContractBehavior>(std::move(b));
}

BehaviorPtr make_robust_service(Wei donation, const FuzzConfig& fuzz, GuardStyle guard) {
    if (donation.is_zero()) throw Error(ErrorCode::kInvalidArgument, "robust service needs a positive donation");
    ContractBehavior b;
    b.kind = "robust";
    b.params.emplace_back("donation", to_string(donation));
    b.params.emplace_back("guard", guard == GuardStyle::kDonatedFlag ? "donated-flag" : "mutex");
    append_fuzz_params(b, fuzz);

    Script donate;
    append_fuzz(donate, fuzz);
    for (auto& insn : guarded(guard, value_call(Amount{donation, std::nullopt, Wei{}}))) donate.push_back(std::move(insn));
    b.handlers.emplace("donate", std::move(donate));
    b.salt = salt_of(b);
    return std::make_shared<const ContractBehavior>(std::move(b));
}

BehaviorPtr make_malicious_user(std::int64_t max_reentries, const FuzzConfig& fuzz) {
    if (max_reentries < 1) throw Error(ErrorCode::kInvalidArgument, "max_reentries must be >= 1");
    ContractBehavior b;
    b.kind = "malicious";
    b.params.emplace_back("max_reentries", max_reentries == kUnbounded ? "unbounded" : std::to_string(max_reentries));
    append_fuzz_params(b, fuzz);

    b.handlers.emplace("startAttack", Script{op(donate_request(AddressRef::kArgument, OnFailure::kRevert))});

    append_fuzz(b.fallback, fuzz);
    b.fallback.push_back(op(Increment{slot("donations")}));
    b.fallback.push_back(op(When{slot("donations"), Cmp::kLt, max_reentries,
                                 Script{op(donate_request(AddressRef::kCaller, OnFailure::kIgnore))}}));
    b.salt = salt_of(b);
    return std::make_shared<const ContractBehavior>(std::move(b));
}

BehaviorPtr make_benign_user(const FuzzConfig& fuzz) {
    ContractBehavior b;
    b.kind = "benign";
    append_fuzz_params(b, fuzz);
    b.params.emplace_back("depth_padding", std::to_string(fuzz.depth_padding));
    b.params.emplace_back("random_padding", yes_no(fuzz.random_padding));

    b.handlers.emplace("requestDonation", Script{op(donate_request(AddressRef::kArgument, OnFailure::kRevert))});

    append_fuzz(b.fallback, fuzz);
    b.fallback.push_back(op(Increment{slot("received")}));
    if (fuzz.depth_padding > 0) {
        // internal bookkeeping through nested self-calls: deeper stacks
        // without ever calling back into the sender
        b.fallback.push_back(op(Store{slot("hops"), std::int64_t{0}}));
        if (fuzz.random_padding) {
            b.fallback.push_back(op(Draw{slot("pad"), std::uint64_t{fuzz.depth_padding} + 1}));
        } else {
            b.fallback.push_back(op(Store{slot("pad"), std::int64_t{fuzz.depth_padding}}));
        }
        const Call relay{AddressRef::kSelf, std::string("relay"), Amount{}, std::nullopt, OnFailure::kIgnore};
        b.fallback.push_back(op(When{slot("pad"), Cmp::kNe, std::int64_t{0}, Script{op(relay)}}));
        b.handlers.emplace("relay", Script{op(Increment{slot("hops")}),
                                           op(When{slot("hops"), Cmp::kLt, slot("pad"), Script{op(relay)}})});
    }
    b.salt = salt_of(b);
    return std::make_shared<const ContractBehavior>(std::move(b));
}

namespace {

ContractBehavior fuzzed_base(const char* kind, Rng& rng) {
    ContractBehavior b;
    b.kind = kind;
    b.params.emplace_back("gas_loop", "coin-flip");
    b.params.emplace_back("loop_bound", "10");
    b.params.emplace_back("amount", "random(1000)*" + std::to_string(kFuzzDonationUnit));
    b.salt = rng.next();
    b.params.emplace_back("salt", std::to_string(b.salt));
    return b;
}

Script fuzzed_prefix() {
    Script s;
    append_fuzz(s, FuzzConfig{.gas_loop = true, .loop_bound = 10});
    s.push_back(op(Draw{slot("amnt"), 1000}));
    return s;
}

Amount fuzzed_amount() { return Amount{Wei{}, slot("amnt"), Wei(kFuzzDonationUnit)}; }

}  // namespace

BehaviorPtr make_fuzzed_vulnerable_service(Rng& rng) {
    ContractBehavior b = fuzzed_base("vulnerable-fuzzed", rng);
    Script donate = fuzzed_prefix();
    donate.push_back(op(value_call(fuzzed_amount())));
    b.handlers.emplace("donate", std::move(donate));
    return std::make_shared<const ContractBehavior>(std::move(b));
}

BehaviorPtr make_fuzzed_robust_service(Rng& rng) {
    ContractBehavior b = fuzzed_base("robust-fuzzed", rng);
    b.params.emplace_back("guard", "donated-flag");
    Script donate = fuzzed_prefix();
    for (auto& insn : guarded(GuardStyle::kDonatedFlag, value_call(fuzzed_amount()))) donate.push_back(std::move(insn));
    b.handlers.emplace("donate", std::move(donate));
    return std::make_shared<const ContractBehavior>(std::move(b));
}

}  // namespace rlab::behaviors
