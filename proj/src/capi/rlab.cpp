// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlab/rlab.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "behaviors/templates.hpp"
#include "chain/node.hpp"
#include "common/error.hpp"
#include "eval/attack_demo.hpp"
#include "eval/correlation.hpp"
#include "eval/datagen.hpp"
#include "eval/experiment.hpp"
#include "eval/report.hpp"
#include "monitor/monitor.hpp"

using namespace rlab;

struct rlab_dataset {
    std::optional<eval::GeneratedDataset> generated;
    detector::Dataset data;
    std::string csv;  // exact file contents
};

struct rlab_report {
    eval::MetricsReport report;
    std::vector<std::string> masks;  // names, parallel to report.results
};

struct rlab_chain {
    chain::Node node;
};

namespace {

thread_local std::string g_last_error;

rlab_status to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::kUnknownAddress: return RLAB_ERR_UNKNOWN_ADDRESS;
        case ErrorCode::kGasLimitBelowIntrinsic: return RLAB_ERR_GAS_LIMIT;
        case ErrorCode::kBalanceOverflow: return RLAB_ERR_OVERFLOW;
        case ErrorCode::kUnknownTransaction: return RLAB_ERR_UNKNOWN_TRANSACTION;
        case ErrorCode::kDegenerateTraining: return RLAB_ERR_DEGENERATE_TRAINING;
        case ErrorCode::kIo: return RLAB_ERR_IO;
        case ErrorCode::kDimensionMismatch:
        case ErrorCode::kTooFewSamples:
        case ErrorCode::kEmptyConfusion:
        case ErrorCode::kMalformedInput:
        case ErrorCode::kInvalidArgument: return RLAB_ERR_INVALID_INPUT;
    }
    return RLAB_ERR_INTERNAL;
}

template <class F>
rlab_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return RLAB_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    } catch (...) {
        g_last_error = "unknown failure";
    }
    return RLAB_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void copy_fixed(char (&dst)[48], const std::string& s) {
    std::snprintf(dst, sizeof dst, "%s", s.c_str());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

template <class Fn>
void write_with(const std::filesystem::path& path, Fn&& fn) {
    std::ostringstream s;
    fn(s);
    write_file(path, s.str());
}

chain::Address from_c(const rlab_address& a) {
    chain::Address out;
    std::memcpy(out.bytes.data(), a.bytes, 20);
    return out;
}

rlab_address to_c(const chain::Address& a) {
    rlab_address out;
    std::memcpy(out.bytes, a.bytes.data(), 20);
    return out;
}

Wei wei_or(const char* text, Wei fallback) { return text ? parse_wei(text) : fallback; }

std::vector<detector::ModelSpec> parse_models(const char* list) {
    std::vector<detector::ModelSpec> specs;
    std::string all = list ? list : "rf,nb,lr,knn,svm";
    std::istringstream in(all);
    std::string name;
    while (std::getline(in, name, ',')) {
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name.empty()) continue;
        const auto kind = detector::parse_model_kind(name);
        if (!kind) throw Error(ErrorCode::kInvalidArgument, "unknown model '" + name + "'");
        const bool seen = std::any_of(specs.begin(), specs.end(), [&](const auto& s) { return s.kind == *kind; });
        if (!seen) specs.push_back(detector::ModelSpec::of(*kind));
    }
    if (specs.empty()) throw Error(ErrorCode::kInvalidArgument, "no models selected");
    return specs;
}

rlab_metric_means to_c(const eval::MetricMeans& m) {
    return rlab_metric_means{m.accuracy, m.precision, m.recall, m.f1, m.fpr, m.fnr};
}

}  // namespace

extern "C" {

const char* rlab_last_error(void) { return g_last_error.c_str(); }

void rlab_string_free(char* s) { std::free(s); }

const char* rlab_version(void) { return "0.1.0"; }

void rlab_gen_config_init(rlab_gen_config* config) {
    if (!config) return;
    config->seed = 1;
    config->randomize_reentries = 1;
    config->randomize_depth = 1;
    config->gas_schedule_path = nullptr;
}

rlab_status rlab_dataset_generate(const rlab_gen_config* config, rlab_dataset** out) {
    return guarded([&] {
        require(config && out, "null argument");
        eval::GenerationConfig g;
        g.seed = config->seed;
        g.disguise = {config->randomize_reentries != 0, config->randomize_depth != 0};
        if (config->gas_schedule_path) g.schedule = chain::GasSchedule::load(config->gas_schedule_path);
        auto d = std::make_unique<rlab_dataset>();
        d->generated = eval::generate_dataset(g);
        d->data = d->generated->dataset();
        std::ostringstream csv;
        eval::write_dataset_csv(csv, d->generated->runs);
        d->csv = csv.str();
        *out = d.release();
    });
}

rlab_status rlab_dataset_load(const char* path, rlab_dataset** out) {
    return guarded([&] {
        require(path && out, "null argument");
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorCode::kIo, std::string("cannot read dataset ") + path);
        std::ostringstream raw;
        raw << in.rdbuf();
        auto d = std::make_unique<rlab_dataset>();
        d->csv = raw.str();
        std::istringstream parse(d->csv);
        d->data = eval::load_dataset_csv(parse);
        *out = d.release();
    });
}

void rlab_dataset_free(rlab_dataset* dataset) { delete dataset; }

size_t rlab_dataset_size(const rlab_dataset* dataset) { return dataset ? dataset->data.size() : 0; }

size_t rlab_dataset_count(const rlab_dataset* dataset, int label) { return dataset ? dataset->data.count(label) : 0; }

size_t rlab_dataset_curated(const rlab_dataset* dataset) {
    if (!dataset || !dataset->generated) return 0;
    const auto& runs = dataset->generated->runs;
    return static_cast<size_t>(std::count_if(
        runs.begin(), runs.end(), [](const auto& r) { return r.origin == eval::RunOrigin::kCurated; }));
}

rlab_status rlab_dataset_write_csv(const rlab_dataset* dataset, const char* path) {
    return guarded([&] {
        require(dataset && path, "null argument");
        write_file(path, dataset->csv);
    });
}

rlab_status rlab_dataset_write_manifest(const rlab_dataset* dataset, const char* path) {
    return guarded([&] {
        require(dataset && path, "null argument");
        require(dataset->generated.has_value(), "only generated datasets carry a contract manifest");
        write_with(path, [&](std::ostream& o) { eval::write_manifest_csv(o, *dataset->generated); });
    });
}

rlab_status rlab_dataset_write_ablated_csv(const rlab_dataset* dataset, const char* path) {
    return guarded([&] {
        require(dataset && path, "null argument");
        detector::Dataset d = dataset->data;
        d.mask = detector::FeatureMask::all().without(detector::Feature::kAvgStackDepth);
        write_with(path, [&](std::ostream& o) { eval::write_masked_csv(o, d); });
    });
}

rlab_status rlab_dataset_correlation(const rlab_dataset* dataset, double values[25], int defined[25]) {
    return guarded([&] {
        require(dataset && values && defined, "null argument");
        const auto m = eval::correlation_matrix(dataset->data);
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) {
                const auto v = m.at(i, j);
                values[i * 5 + j] = v.value_or(0.0);
                defined[i * 5 + j] = v.has_value();
            }
        }
    });
}

rlab_status rlab_dataset_write_correlation(const rlab_dataset* dataset, const char* csv_path, const char* svg_path) {
    return guarded([&] {
        require(dataset && csv_path, "null argument");
        const auto m = eval::correlation_matrix(dataset->data);
        write_with(csv_path, [&](std::ostream& o) { eval::write_correlation_csv(o, m); });
        if (svg_path) write_with(svg_path, [&](std::ostream& o) { eval::write_heatmap_svg(o, m); });
    });
}

void rlab_eval_config_init(rlab_eval_config* config) {
    if (!config) return;
    config->seed = 1;
    config->folds = 10;
    config->repetitions = 10;
    config->models = "rf,nb,lr,knn,svm";
    config->ablate_depth = 0;
}

rlab_status rlab_experiment_run(const rlab_dataset* dataset, const rlab_eval_config* config, rlab_report** out) {
    return guarded([&] {
        require(dataset && config && out, "null argument");
        require(config->folds >= 2, "folds must be at least 2");
        require(config->repetitions >= 1, "repetitions must be at least 1");
        const auto specs = parse_models(config->models);
        const eval::ExperimentConfig ec{config->repetitions, config->folds, config->seed};
        auto r = std::make_unique<rlab_report>();
        r->report = config->ablate_depth ? eval::run_ablation(dataset->data, specs, ec)
                                         : eval::run_experiment(dataset->data, specs, ec);
        for (const auto& res : r->report.results) r->masks.push_back(res.mask.name());
        *out = r.release();
    });
}

void rlab_report_free(rlab_report* report) { delete report; }

size_t rlab_report_result_count(const rlab_report* report) { return report ? report->report.results.size() : 0; }

rlab_status rlab_report_result(const rlab_report* report, size_t index, const char** model, const char** mask,
                               rlab_metric_means* means) {
    return guarded([&] {
        require(report != nullptr, "null argument");
        require(index < report->report.results.size(), "result index out of range");
        const auto& r = report->report.results[index];
        if (model) *model = r.model.c_str();
        if (mask) *mask = report->masks[index].c_str();
        if (means) *means = to_c(r.mean);
    });
}

rlab_status rlab_report_lookup(const rlab_report* report, const char* model, const char* mask,
                               rlab_metric_means* means) {
    return guarded([&] {
        require(report && model && mask && means, "null argument");
        for (std::size_t i = 0; i < report->report.results.size(); ++i) {
            if (report->report.results[i].model == model && report->masks[i] == mask) {
                *means = to_c(report->report.results[i].mean);
                return;
            }
        }
        throw Error(ErrorCode::kInvalidArgument, std::string("no result for ") + model + "/" + mask);
    });
}

rlab_status rlab_report_json(const rlab_report* report, char** out) {
    return guarded([&] {
        require(report && out, "null argument");
        *out = dup_string(eval::report_json(report->report));
    });
}

rlab_status rlab_report_write(const rlab_report* report, const char* dir) {
    return guarded([&] {
        require(report && dir, "null argument");
        const std::filesystem::path root(dir);
        write_file(root / "report.json", eval::report_json(report->report));
        write_with(root / "metrics.csv", [&](std::ostream& o) { eval::write_metrics_csv(o, report->report); });
        std::vector<detector::FeatureMask> masks;
        for (const auto& r : report->report.results) {
            if (std::find(masks.begin(), masks.end(), r.mask) == masks.end()) masks.push_back(r.mask);
        }
        for (const auto& m : masks) {
            write_with(root / ("quality_" + m.name() + ".svg"),
                       [&](std::ostream& o) { eval::write_quality_chart_svg(o, report->report, m); });
            write_with(root / ("rates_" + m.name() + ".svg"),
                       [&](std::ostream& o) { eval::write_error_chart_svg(o, report->report, m); });
        }
    });
}

rlab_status rlab_chain_create(uint64_t seed, const char* gas_schedule_path, rlab_chain** out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        const chain::GasSchedule schedule =
            gas_schedule_path ? chain::GasSchedule::load(gas_schedule_path) : chain::GasSchedule{};
        *out = new rlab_chain{chain::Node(schedule, seed)};
    });
}

void rlab_chain_free(rlab_chain* chain) { delete chain; }

rlab_status rlab_chain_deploy(rlab_chain* chain, const rlab_deploy_params* params, rlab_address* out) {
    return guarded([&] {
        require(chain && params && out, "null argument");
        const Wei endowment = wei_or(params->endowment_wei, Wei{});
        const Wei donation = wei_or(params->donation_wei, Wei::ether(1));
        behaviors::BehaviorPtr behavior;
        switch (params->kind) {
            case RLAB_TEMPLATE_ACCOUNT: break;
            case RLAB_TEMPLATE_VULNERABLE: behavior = behaviors::make_vulnerable_service(donation); break;
            case RLAB_TEMPLATE_ROBUST: behavior = behaviors::make_robust_service(donation); break;
            case RLAB_TEMPLATE_MALICIOUS:
                behavior = behaviors::make_malicious_user(params->max_reentries < 0 ? behaviors::kUnbounded
                                                                                     : params->max_reentries);
                break;
            case RLAB_TEMPLATE_BENIGN: behavior = behaviors::make_benign_user(); break;
            default: throw Error(ErrorCode::kInvalidArgument, "unknown contract template");
        }
        *out = to_c(chain->node.deploy(behavior, endowment));
    });
}

rlab_status rlab_chain_balance(const rlab_chain* chain, const rlab_address* account, char** out_wei) {
    return guarded([&] {
        require(chain && account && out_wei, "null argument");
        const auto a = from_c(*account);
        if (!chain->node.state().contains(a)) throw Error(ErrorCode::kUnknownAddress, "unknown account " + a.hex());
        *out_wei = dup_string(to_string(chain->node.state().balance_of(a)));
    });
}

rlab_status rlab_chain_transact(rlab_chain* chain, const rlab_tx* tx, int* committed, char** tx_hash) {
    return guarded([&] {
        require(chain && tx && committed, "null argument");
        chain::Transaction t;
        t.from = from_c(tx->from);
        t.to = from_c(tx->to);
        if (tx->function) t.function = std::string(tx->function);
        if (tx->argument) t.argument = from_c(*tx->argument);
        t.value = wei_or(tx->value_wei, Wei{});
        t.gas_limit = tx->gas_limit;
        const auto result = chain->node.submit(t);
        const auto* executed = std::get_if<chain::Executed>(&result);
        *committed = executed != nullptr;
        if (tx_hash) *tx_hash = executed ? dup_string(executed->receipt.transaction_hash) : nullptr;
    });
}

rlab_status rlab_chain_receipt_json(const rlab_chain* chain, const char* tx_hash, char** out) {
    return guarded([&] {
        require(chain && tx_hash && out, "null argument");
        const auto* c = chain->node.find(tx_hash);
        if (!c) throw Error(ErrorCode::kUnknownTransaction, std::string("unknown transaction ") + tx_hash);
        *out = dup_string(chain::to_json(c->receipt, 2));
    });
}

rlab_status rlab_chain_observe(const rlab_chain* chain, const char* tx_hash, const rlab_address* c1,
                               const rlab_address* c2, rlab_observation* out) {
    return guarded([&] {
        require(chain && tx_hash && c1 && c2 && out, "null argument");
        const monitor::NodeSource source(chain->node);
        const auto obs = monitor::observe(source, tx_hash, {from_c(*c1), from_c(*c2)});
        out->gas_used = obs.gas_used;
        out->avg_stack_depth = monitor::avg_call_stack_depth(obs.trace);
        copy_fixed(out->bal_diff_c1, to_string(obs.bal_diff_c1()));
        copy_fixed(out->bal_diff_c2, to_string(obs.bal_diff_c2()));
    });
}

rlab_status rlab_attack_demo(int64_t reentries, char** text, rlab_demo_summary* summary) {
    return guarded([&] {
        const auto demo = eval::run_attack_demo(reentries < 0 ? behaviors::kUnbounded : reentries);
        if (summary) {
            summary->attack_donations = demo.attack.donations();
            summary->counterfactual_donations = demo.counterfactual.donations();
            summary->benign_donations = demo.benign.donations();
            summary->attack_depth = monitor::avg_call_stack_depth(demo.attack.trace);
            summary->benign_depth = monitor::avg_call_stack_depth(demo.benign.trace);
            copy_fixed(summary->victim_before, to_string(demo.attack.service_before));
            copy_fixed(summary->victim_after, to_string(demo.attack.service_after));
            copy_fixed(summary->attacker_gain, to_string(difference(demo.attack.user_after, demo.attack.user_before)));
            copy_fixed(summary->counterfactual_gain,
                       to_string(difference(demo.counterfactual.user_after, demo.counterfactual.user_before)));
            copy_fixed(summary->donation, to_string(demo.donation));
        }
        if (text) *text = dup_string(eval::format_demo(demo));
    });
}

}  // extern "C"
