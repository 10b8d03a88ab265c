// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eval/attack_demo.hpp"

#include <sstream>

#include "behaviors/templates.hpp"
#include "chain/executor.hpp"

namespace rlab::eval {

namespace {

constexpr chain::Gas kDemoGasLimit = 3'000'000;

std::string ether_text(int128 wei) {
    const bool negative = wei < 0;
    const uint128 mag = negative ? uint128(-wei) : uint128(wei);
    std::string frac = to_string(uint128(mag % Wei::kPerEther));
    frac.insert(0, 18 - frac.size(), '0');
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    return (negative ? "-" : "") + to_string(uint128(mag / Wei::kPerEther)) + "." + frac + " ether";
}

DemoScenario run_scenario(const std::string& title, const behaviors::BehaviorPtr& service_behavior, Wei endowment,
                          const behaviors::BehaviorPtr& user_behavior, const char* user_name, const char* entry) {
    chain::Node node;
    DemoScenario s;
    s.title = title;
    const auto op = node.deploy(nullptr, Wei{});
    s.service = node.deploy(service_behavior, endowment);
    s.user = node.deploy(user_behavior, Wei{});
    s.names = {{op, "operator"}, {s.service, service_behavior->kind}, {s.user, user_name}};
    s.service_before = node.state().balance_of(s.service);
    s.user_before = node.state().balance_of(s.user);

    chain::Transaction tx;
    tx.from = op;
    tx.to = s.user;
    tx.function = entry;
    tx.argument = s.service;
    tx.gas_limit = kDemoGasLimit;
    auto result = node.submit(tx);
    if (auto* e = std::get_if<chain::Executed>(&result)) {
        s.receipt = e->receipt;
        s.trace = std::move(e->trace);
    } else {
        auto& r = std::get<chain::TopLevelReverted>(result);
        s.revert_reason = r.reason;
        s.trace = std::move(r.trace);
    }
    s.service_after = node.state().balance_of(s.service);
    s.user_after = node.state().balance_of(s.user);
    return s;
}

}  // namespace

int DemoScenario::donations() const {
    if (!receipt) return 0;
    const auto committed = chain::committed_frames(trace);
    int n = 0;
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
        const auto& f = trace.frames[i];
        n += committed[i] && f.caller == service && f.callee == user && !f.value.is_zero();
    }
    return n;
}

AttackDemo run_attack_demo(std::int64_t reentries, Wei endowment, Wei donation) {
    AttackDemo demo;
    demo.endowment = endowment;
    demo.donation = donation;
    const auto attacker = behaviors::make_malicious_user(reentries);
    demo.attack = run_scenario("attack: Attacker.startAttack(Vulnerable)", behaviors::make_vulnerable_service(donation),
                               endowment, attacker, "attacker", "startAttack");
    demo.counterfactual =
        run_scenario("counterfactual: Attacker.startAttack(NotVulnerable)", behaviors::make_robust_service(donation),
                     endowment, attacker, "attacker", "startAttack");
    demo.benign = run_scenario("baseline: BenignUser.requestDonation(Vulnerable)",
                               behaviors::make_vulnerable_service(donation), endowment, behaviors::make_benign_user(),
                               "benign-user", "requestDonation");
    return demo;
}

std::string format_scenario(const DemoScenario& s) {
    std::ostringstream out;
    auto name = [&](const chain::Address& a) {
        const auto it = s.names.find(a);
        return it == s.names.end() ? a.hex() : it->second;
    };
    out << "== " << s.title << '\n';
    out << "frames:\n";
    const auto committed = chain::committed_frames(s.trace);
    for (std::size_t i = 0; i < s.trace.frames.size(); ++i) {
        const auto& f = s.trace.frames[i];
        out << "  " << std::string(2 * (f.depth - 1), ' ') << '[' << f.depth << "] " << name(f.caller) << " -> "
            << name(f.callee) << '.' << f.function;
        if (!f.value.is_zero()) out << " value=" << ether_text(static_cast<int128>(f.value.value()));
        out << ' ' << chain::to_string(f.outcome) << (committed[i] ? "" : " (rolled back)") << " gas=" << f.gas_used
            << '\n';
    }
    out << "balances:\n";
    out << "  " << name(s.service) << ": " << ether_text(static_cast<int128>(s.service_before.value())) << " -> "
        << ether_text(static_cast<int128>(s.service_after.value())) << " ("
        << ether_text(difference(s.service_after, s.service_before)) << ")\n";
    out << "  " << name(s.user) << ": " << ether_text(static_cast<int128>(s.user_before.value())) << " -> "
        << ether_text(static_cast<int128>(s.user_after.value())) << " ("
        << ether_text(difference(s.user_after, s.user_before)) << ")\n";
    out << "donations committed: " << s.donations() << '\n';
    if (s.receipt) {
        out << "receipt:\n" << chain::to_json(*s.receipt, 2) << '\n';
    } else {
        out << "reverted: " << s.revert_reason << " (no receipt)\n";
    }
    return out.str();
}

std::string format_demo(const AttackDemo& demo) {
    return format_scenario(demo.attack) + "\n" + format_scenario(demo.counterfactual) + "\n" +
           format_scenario(demo.benign);
}

}  // namespace rlab::eval
