// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "behaviors/catalog.hpp"

#include <string>

namespace rlab::behaviors {

namespace {

constexpr uint128 kCentiEther = Wei::kPerEther / 100;

std::string numbered(const char* prefix, int i) {
    std::string n = std::to_string(i + 1);
    return std::string(prefix) + (n.size() < 2 ? "0" : "") + n;
}

/// Donations on a 0.03-ether grid with seeded jitter, so that every instance
/// of a class gets its own amount.
Wei donation_for(Rng& rng, int i) { return Wei(uint128(10 + 3 * i + rng.uniform(3)) * kCentiEther); }

}  // namespace

const char* to_string(Role role) noexcept { return role == Role::kService ? "service" : "user"; }

const char* to_string(ContractClass cls) noexcept {
    switch (cls) {
        case ContractClass::kRobust: return "robust";
        case ContractClass::kVulnerable: return "vulnerable";
        case ContractClass::kBenign: return "benign";
        case ContractClass::kMalicious: return "malicious";
    }
    return "unknown";
}

std::vector<const CatalogEntry*> ContractCatalog::of(ContractClass cls) const {
    std::vector<const CatalogEntry*> out;
    for (const auto* list : {&services, &users}) {
        for (const auto& e : *list) {
            if (e.cls == cls) out.push_back(&e);
        }
    }
    return out;
}

ContractCatalog build_catalog(std::uint64_t seed, const DisguiseConfig& disguise) {
    const Rng root = Rng(seed).child("catalog");
    ContractCatalog catalog;

    Rng rng = root.child("robust");
    for (int i = 0; i < kRobustCount; ++i) {
        FuzzConfig fuzz{.gas_loop = i % 2 == 1, .extra_compute = static_cast<std::uint32_t>(rng.uniform(40))};
        const auto guard = i % 3 == 2 ? GuardStyle::kMutex : GuardStyle::kDonatedFlag;
        catalog.services.push_back({numbered("R", i), Role::kService, ContractClass::kRobust,
                                    make_robust_service(donation_for(rng, i), fuzz, guard)});
    }

    rng = root.child("vulnerable");
    for (int i = 0; i < kVulnerableCount; ++i) {
        FuzzConfig fuzz{.gas_loop = i % 2 == 0, .extra_compute = static_cast<std::uint32_t>(rng.uniform(40))};
        catalog.services.push_back({numbered("V", i), Role::kService, ContractClass::kVulnerable,
                                    make_vulnerable_service(donation_for(rng, i), fuzz)});
    }

    rng = root.child("benign");
    for (int i = 0; i < kBenignCount; ++i) {
        FuzzConfig fuzz{.gas_loop = i % 2 == 0, .extra_compute = static_cast<std::uint32_t>(4 * i + rng.uniform(4))};
        if (disguise.randomize_depth) {
            fuzz.depth_padding = static_cast<std::uint32_t>(2 + rng.uniform(13));
            fuzz.random_padding = true;
        }
        catalog.users.push_back(
            {numbered("B", i), Role::kUser, ContractClass::kBenign, make_benign_user(fuzz)});
    }

    rng = root.child("malicious");
    for (int i = 0; i < kMaliciousCount; ++i) {
        FuzzConfig fuzz{.gas_loop = i % 2 == 1, .extra_compute = static_cast<std::uint32_t>(4 * i + rng.uniform(4))};
        // at least two re-entries, so every curated attack on a vulnerable
        // service succeeds
        const std::int64_t reentries =
            disguise.randomize_reentries ? static_cast<std::int64_t>(rng.uniform_between(2, 8)) : kUnbounded;
        catalog.users.push_back(
            {numbered("M", i), Role::kUser, ContractClass::kMalicious, make_malicious_user(reentries, fuzz)});
    }
    return catalog;
}

std::string manifest_header() { return "id,role,class,params"; }

std::string manifest_row(const CatalogEntry& entry) {
    std::string params;
    for (const auto& [k, v] : entry.behavior->params) {
        if (!params.empty()) params += ';';
        params += k + "=" + v;
    }
    return entry.id + "," + to_string(entry.role) + "," + to_string(entry.cls) + "," + params;
}

}  // namespace rlab::behaviors
