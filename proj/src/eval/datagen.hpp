// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "behaviors/catalog.hpp"
#include "chain/gas.hpp"
#include "detector/features.hpp"
#include "monitor/monitor.hpp"

namespace rlab::eval {

struct GenerationConfig {
    std::uint64_t seed = 1;
    behaviors::DisguiseConfig disguise;
    chain::GasSchedule schedule;
    chain::Gas gas_limit = 3'000'000;
    /// Balance of every curated service.
    Wei curated_endowment = Wei::ether(10);
    /// Fuzzed services hold random(11) * this.
    Wei fuzzed_endowment_unit = Wei(Wei::kPerEther / 2);
    /// Loop bound of the gas fuzzing in fuzzed user contracts.
    std::uint32_t user_loop_bound = 10;
    /// Largest number of nested internal calls a fuzzed benign user draws.
    std::uint32_t max_depth_padding = 18;
    /// Attack greediness of fuzzed attackers when reentries are randomized.
    std::int64_t min_reentries = 1;
    std::int64_t max_reentries = 8;

    int fuzzed_harmful = 40;
    int fuzzed_benign = 40;
    /// Upper bound on fuzzed executions before generation gives up.
    int max_attempts = 100'000;
};

enum class RunOrigin { kCurated, kFuzzed };

const char* to_string(RunOrigin origin) noexcept;

struct LabeledRun {
    std::string service_id;
    std::string user_id;
    RunOrigin origin = RunOrigin::kCurated;
    int expected_label = 0;
    monitor::Observation observation;
};

struct GeneratedDataset {
    std::vector<LabeledRun> runs;  // 25 curated, then the fuzzed runs
    behaviors::ContractCatalog catalog;
    /// Fuzzed contract instances of the committed runs.
    std::vector<behaviors::CatalogEntry> fuzzed_contracts;
    int reverted_attempts = 0;
    int quota_rejections = 0;

    /// Feature rows exactly as they are written to the dataset file.
    detector::Dataset dataset() const;
};

/// 1 when the service moved value to the user in at least two committed
/// frames, i.e. a re-entrant call succeeded; 0 otherwise.
int harm_label(const chain::ExecutionTrace& trace, const monitor::WatchList& watch);

/// Runs one `donate` transaction from `user` against `service` on a fresh
/// chain. Empty when the transaction reverted at the top level.
std::optional<LabeledRun> run_pair(const behaviors::CatalogEntry& service, Wei service_endowment,
                                   const behaviors::CatalogEntry& user, const GenerationConfig& config,
                                   std::uint64_t chain_seed);

/// 25 curated catalog pairings followed by fuzzed runs until the class
/// quotas are met. Throws kInvalidArgument when quotas cannot be met within
/// `max_attempts`.
GeneratedDataset generate_dataset(const GenerationConfig& config);

void write_dataset_csv(std::ostream& out, const std::vector<LabeledRun>& runs);
/// Only the mask's columns, from in-memory feature values.
void write_masked_csv(std::ostream& out, const detector::Dataset& dataset);
/// Throws kMalformedInput on any header, field or duplicate-id problem.
detector::Dataset load_dataset_csv(std::istream& in);

void write_manifest_csv(std::ostream& out, const GeneratedDataset& generated);

}  // namespace rlab::eval
