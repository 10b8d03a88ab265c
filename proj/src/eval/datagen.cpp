// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eval/datagen.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "common/error.hpp"

namespace rlab::eval {

using behaviors::CatalogEntry;
using behaviors::ContractClass;
using behaviors::Role;

namespace {

constexpr const char* kDatasetHeader = "tx_id,gas_used,bal_diff_c1,bal_diff_c2,avg_stack_depth,label";

double parse_depth(const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw Error(ErrorCode::kMalformedInput, "not a number: '" + text + "'");
    }
    return v;
}

std::string fuzz_id(char prefix, int attempt) {
    std::string n = std::to_string(attempt);
    return std::string(1, prefix) + std::string(n.size() < 5 ? 5 - n.size() : 0, '0') + n;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

const char* to_string(RunOrigin origin) noexcept { return origin == RunOrigin::kCurated ? "curated" : "fuzzed"; }

int harm_label(const chain::ExecutionTrace& trace, const monitor::WatchList& watch) {
    const auto committed = chain::committed_frames(trace);
    int transfers = 0;
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
        const auto& f = trace.frames[i];
        if (committed[i] && f.caller == watch.c1 && f.callee == watch.c2 && !f.value.is_zero()) ++transfers;
    }
    return transfers >= 2 ? 1 : 0;
}

std::optional<LabeledRun> run_pair(const CatalogEntry& service, Wei service_endowment, const CatalogEntry& user,
                                   const GenerationConfig& config, std::uint64_t chain_seed) {
    chain::Node node(config.schedule, chain_seed);
    const monitor::WatchList watch{node.deploy(service.behavior, service_endowment), node.deploy(user.behavior, Wei{})};
    const monitor::NodeSource source(node);
    auto feed = monitor::subscribe_pending(source, watch);

    chain::Transaction tx;
    tx.from = watch.c2;
    tx.to = watch.c1;
    tx.function = "donate";
    tx.argument = watch.c2;
    tx.gas_limit = config.gas_limit;
    node.submit(tx);

    const auto ids = feed.poll();
    if (ids.empty()) return std::nullopt;
    LabeledRun run;
    run.service_id = service.id;
    run.user_id = user.id;
    run.observation = monitor::observe(source, ids.front(), watch);
    run.expected_label = harm_label(run.observation.trace, watch);
    return run;
}

GeneratedDataset generate_dataset(const GenerationConfig& config) {
    GeneratedDataset out;
    out.catalog = behaviors::build_catalog(config.seed, config.disguise);
    const Rng root(config.seed);

    // curated plan: every vulnerable service against a malicious user, every
    // robust service against a benign user until those run out, then against
    // the first malicious users
    const auto robust = out.catalog.of(ContractClass::kRobust);
    const auto vulnerable = out.catalog.of(ContractClass::kVulnerable);
    const auto benign = out.catalog.of(ContractClass::kBenign);
    const auto malicious = out.catalog.of(ContractClass::kMalicious);
    std::vector<std::pair<const CatalogEntry*, const CatalogEntry*>> plan;
    for (std::size_t i = 0; i < vulnerable.size(); ++i) plan.emplace_back(vulnerable[i], malicious[i % malicious.size()]);
    for (std::size_t j = 0; j < robust.size(); ++j) {
        plan.emplace_back(robust[j], j < benign.size() ? benign[j] : malicious[(j - benign.size()) % malicious.size()]);
    }

    const Rng curated_rng = root.child("curated");
    for (std::size_t i = 0; i < plan.size(); ++i) {
        std::optional<LabeledRun> run;
        for (std::uint64_t attempt = 0; !run; ++attempt) {
            if (attempt >= static_cast<std::uint64_t>(config.max_attempts)) {
                throw Error(ErrorCode::kInvalidArgument, "curated pairing " + plan[i].first->id + " keeps reverting");
            }
            run = run_pair(*plan[i].first, config.curated_endowment, *plan[i].second, config,
                           curated_rng.child(i).child(attempt).seed());
            if (!run) ++out.reverted_attempts;
        }
        run->origin = RunOrigin::kCurated;
        out.runs.push_back(std::move(*run));
    }

    // fuzzed runs: a randomized vulnerable service against an attacker, or a
    // randomized robust service against a benign user
    const Rng fuzz_rng = root.child("fuzzed");
    int need[2] = {config.fuzzed_benign, config.fuzzed_harmful};
    for (int attempt = 0; need[0] > 0 || need[1] > 0; ++attempt) {
        if (attempt >= config.max_attempts) {
            throw Error(ErrorCode::kInvalidArgument, "fuzzed class quotas not met within the attempt budget");
        }
        Rng rng = fuzz_rng.child(static_cast<std::uint64_t>(attempt));
        bool attack = rng.uniform(2) == 1;
        if (need[1] == 0) attack = false;
        if (need[0] == 0) attack = true;

        behaviors::FuzzConfig user_fuzz{.gas_loop = true, .loop_bound = config.user_loop_bound};
        CatalogEntry service;
        CatalogEntry user;
        Rng contract_rng = rng.child("contracts");
        if (attack) {
            const std::int64_t reentries =
                config.disguise.randomize_reentries
                    ? static_cast<std::int64_t>(rng.uniform_between(static_cast<std::uint64_t>(config.min_reentries),
                                                                    static_cast<std::uint64_t>(config.max_reentries)))
                    : behaviors::kUnbounded;
            service = {fuzz_id('S', attempt), Role::kService, ContractClass::kVulnerable,
                       behaviors::make_fuzzed_vulnerable_service(contract_rng)};
            user = {fuzz_id('U', attempt), Role::kUser, ContractClass::kMalicious,
                    behaviors::make_malicious_user(reentries, user_fuzz)};
        } else {
            if (config.disguise.randomize_depth) {
                user_fuzz.depth_padding = config.max_depth_padding;
                user_fuzz.random_padding = true;
            }
            service = {fuzz_id('S', attempt), Role::kService, ContractClass::kRobust,
                       behaviors::make_fuzzed_robust_service(contract_rng)};
            user = {fuzz_id('U', attempt), Role::kUser, ContractClass::kBenign, behaviors::make_benign_user(user_fuzz)};
        }
        const Wei endowment = config.fuzzed_endowment_unit.times(rng.uniform(11));

        auto run = run_pair(service, endowment, user, config, rng.child("chain").seed());
        if (!run) {
            ++out.reverted_attempts;
            continue;
        }
        if (need[run->expected_label] == 0) {
            ++out.quota_rejections;
            continue;
        }
        --need[run->expected_label];
        run->origin = RunOrigin::kFuzzed;
        out.runs.push_back(std::move(*run));
        out.fuzzed_contracts.push_back(std::move(service));
        out.fuzzed_contracts.push_back(std::move(user));
    }
    return out;
}

detector::Dataset GeneratedDataset::dataset() const {
    detector::Dataset d;
    for (const auto& run : runs) {
        auto x = detector::extract_features(run.observation);
        x.avg_stack_depth = parse_depth(monitor::format_depth(x.avg_stack_depth));
        d.samples.push_back({run.observation.tx_id, x, run.expected_label});
    }
    return d;
}

void write_dataset_csv(std::ostream& out, const std::vector<LabeledRun>& runs) {
    out << kDatasetHeader << '\n';
    for (const auto& run : runs) {
        const auto& obs = run.observation;
        out << obs.tx_id << ',' << obs.gas_used << ',' << rlab::to_string(obs.bal_diff_c1()) << ','
            << rlab::to_string(obs.bal_diff_c2()) << ',' << monitor::format_depth(monitor::avg_call_stack_depth(obs.trace))
            << ',' << run.expected_label << '\n';
    }
}

void write_masked_csv(std::ostream& out, const detector::Dataset& dataset) {
    const auto idx = dataset.mask.indices();
    out << "tx_id";
    for (const auto i : idx) out << ',' << detector::kFeatureNames[i];
    out << ",label\n";
    char buf[64];
    for (const auto& s : dataset.samples) {
        out << s.tx_id;
        const auto v = s.x.values();
        for (const auto i : idx) {
            if (i == static_cast<std::size_t>(detector::Feature::kAvgStackDepth)) {
                out << ',' << monitor::format_depth(v[i]);
            } else {
                std::snprintf(buf, sizeof buf, "%.0f", v[i]);
                out << ',' << buf;
            }
        }
        out << ',' << s.label << '\n';
    }
}

detector::Dataset load_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::kMalformedInput, "empty dataset file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kDatasetHeader) throw Error(ErrorCode::kMalformedInput, "unexpected dataset header '" + line + "'");

    detector::Dataset d;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line);
        const std::string where = "dataset line " + std::to_string(lineno);
        if (f.size() != 6) throw Error(ErrorCode::kMalformedInput, where + ": expected 6 fields");
        if (f[0].empty()) throw Error(ErrorCode::kMalformedInput, where + ": empty tx_id");
        try {
            detector::Sample s;
            s.tx_id = f[0];
            s.x.gas_used = static_cast<double>(parse_uint128(f[1]));
            s.x.bal_diff_c1 = static_cast<double>(parse_int128(f[2]));
            s.x.bal_diff_c2 = static_cast<double>(parse_int128(f[3]));
            s.x.avg_stack_depth = parse_depth(f[4]);
            if (f[5] != "0" && f[5] != "1") throw Error(ErrorCode::kMalformedInput, "label must be 0 or 1");
            s.label = f[5] == "1" ? 1 : 0;
            d.samples.push_back(std::move(s));
        } catch (const Error& e) {
            throw Error(ErrorCode::kMalformedInput, where + ": " + e.what());
        }
    }
    d.validate();
    return d;
}

void write_manifest_csv(std::ostream& out, const GeneratedDataset& generated) {
    out << behaviors::manifest_header() << '\n';
    for (const auto* list : {&generated.catalog.services, &generated.catalog.users}) {
        for (const auto& e : *list) out << behaviors::manifest_row(e) << '\n';
    }
    for (const auto& e : generated.fuzzed_contracts) out << behaviors::manifest_row(e) << '\n';
}

}  // namespace rlab::eval
