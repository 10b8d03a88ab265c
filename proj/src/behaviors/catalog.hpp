// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "behaviors/templates.hpp"

namespace rlab::behaviors {

enum class Role { kService, kUser };
enum class ContractClass { kRobust, kVulnerable, kBenign, kMalicious };

const char* to_string(Role role) noexcept;
const char* to_string(ContractClass cls) noexcept;

struct CatalogEntry {
    std::string id;
    Role role;
    ContractClass cls;
    BehaviorPtr behavior;
};

/// The knobs attackers and benign users use to blur the depth feature.
struct DisguiseConfig {
    /// Attackers stop after a few re-entries instead of draining the victim.
    bool randomize_reentries = true;
    /// Benign users pad their call stacks with nested internal calls.
    bool randomize_depth = true;

    static DisguiseConfig none() { return {false, false}; }
};

/// 13 robust + 12 vulnerable services, 11 benign + 9 malicious users.
struct ContractCatalog {
    std::vector<CatalogEntry> services;
    std::vector<CatalogEntry> users;

    std::vector<const CatalogEntry*> of(ContractClass cls) const;
};

inline constexpr int kRobustCount = 13;
inline constexpr int kVulnerableCount = 12;
inline constexpr int kBenignCount = 11;
inline constexpr int kMaliciousCount = 9;

ContractCatalog build_catalog(std::uint64_t seed, const DisguiseConfig& disguise = {});

/// One row per instance: `id,role,class,params` where params is a
/// `;`-separated list of key=value pairs.
std::string manifest_header();
std::string manifest_row(const CatalogEntry& entry);

}  // namespace rlab::behaviors
