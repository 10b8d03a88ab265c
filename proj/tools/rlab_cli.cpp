// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

// rlab: generate the labelled transaction dataset, evaluate the detectors,
// and replay the reentrancy exploit. Talks to the library only through the
// C interface.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rlab/rlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitInput = 3;
constexpr int kExitDegenerate = 4;

struct Options {
    std::string config_path;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string gas_schedule;
    bool no_disguise = false;

    std::string dataset;
    std::string models = "rf,nb,lr,knn,svm";
    std::uint32_t folds = 10;
    std::uint32_t repeats = 10;
    bool ablate_depth = false;

    std::int64_t reentries = 1;
    bool unbounded = false;
};

int exit_code(rlab_status s) {
    switch (s) {
        case RLAB_OK: return kExitOk;
        case RLAB_ERR_IO: return kExitIo;
        case RLAB_ERR_DEGENERATE_TRAINING: return kExitDegenerate;
        case RLAB_ERR_INTERNAL: return 1;
        default: return kExitInput;
    }
}

int fail(rlab_status s, const std::string& context) {
    std::cerr << "rlab: " << context << ": " << rlab_last_error() << '\n';
    return exit_code(s);
}

bool parse_bool(const std::string& v) { return v == "1" || v == "true" || v == "yes" || v == "on"; }

/// `key = value` lines; '#' starts a comment. Values replace whatever the
/// flags set.
int apply_config_file(const std::string& path, Options& o) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "rlab: cannot read config file " << path << '\n';
        return kExitIo;
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos) {
            std::cerr << "rlab: " << path << ":" << lineno << ": expected key = value\n";
            return kExitInput;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "seed") o.seed = std::stoull(value);
            else if (key == "out") o.out_dir = value;
            else if (key == "gas-schedule") o.gas_schedule = value;
            else if (key == "no-disguise") o.no_disguise = parse_bool(value);
            else if (key == "dataset") o.dataset = value;
            else if (key == "models") o.models = value;
            else if (key == "folds") o.folds = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "repeats") o.repeats = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "ablate-depth") o.ablate_depth = parse_bool(value);
            else if (key == "reentries") o.reentries = std::stoll(value);
            else if (key == "unbounded") o.unbounded = parse_bool(value);
            else {
                std::cerr << "rlab: " << path << ":" << lineno << ": unknown key '" << key << "'\n";
                return kExitInput;
            }
        } catch (const std::exception&) {
            std::cerr << "rlab: " << path << ":" << lineno << ": bad value for '" << key << "'\n";
            return kExitInput;
        }
    }
    return kExitOk;
}

int ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        std::cerr << "rlab: cannot create output directory " << dir << ": " << ec.message() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

std::string join(const std::string& dir, const char* file) { return (std::filesystem::path(dir) / file).string(); }

int cmd_generate(const Options& o) {
    if (int rc = ensure_dir(o.out_dir)) return rc;
    rlab_gen_config g;
    rlab_gen_config_init(&g);
    g.seed = o.seed;
    g.randomize_reentries = !o.no_disguise;
    g.randomize_depth = !o.no_disguise;
    g.gas_schedule_path = o.gas_schedule.empty() ? nullptr : o.gas_schedule.c_str();

    rlab_dataset* d = nullptr;
    if (auto s = rlab_dataset_generate(&g, &d)) return fail(s, "generate");
    int rc = kExitOk;
    if (auto s = rlab_dataset_write_csv(d, join(o.out_dir, "dataset.csv").c_str())) {
        rc = fail(s, "write dataset");
    } else if (auto s2 = rlab_dataset_write_manifest(d, join(o.out_dir, "catalog.csv").c_str())) {
        rc = fail(s2, "write catalog");
    } else {
        std::cout << "wrote " << rlab_dataset_size(d) << " transactions (" << rlab_dataset_count(d, 0) << " benign, "
                  << rlab_dataset_count(d, 1) << " harmful, " << rlab_dataset_curated(d) << " curated) to "
                  << o.out_dir << '\n';
    }
    rlab_dataset_free(d);
    return rc;
}

int cmd_eval(const Options& o) {
    if (o.dataset.empty()) {
        std::cerr << "rlab: eval needs --dataset\n";
        return kExitInput;
    }
    rlab_dataset* d = nullptr;
    if (auto s = rlab_dataset_load(o.dataset.c_str(), &d)) return fail(s, "load " + o.dataset);

    rlab_eval_config c;
    rlab_eval_config_init(&c);
    c.seed = o.seed;
    c.folds = o.folds;
    c.repetitions = o.repeats;
    c.models = o.models.c_str();
    c.ablate_depth = o.ablate_depth;

    rlab_report* r = nullptr;
    int rc = ensure_dir(o.out_dir);
    if (rc == kExitOk) {
        if (auto s = rlab_experiment_run(d, &c, &r)) rc = fail(s, "evaluate");
    }
    if (rc == kExitOk) {
        if (auto s = rlab_report_write(r, o.out_dir.c_str())) {
            rc = fail(s, "write report");
        } else if (auto s2 = rlab_dataset_write_correlation(d, join(o.out_dir, "correlation.csv").c_str(),
                                                            join(o.out_dir, "correlation.svg").c_str())) {
            rc = fail(s2, "write correlation");
        } else if (o.ablate_depth) {
            if (auto s3 = rlab_dataset_write_ablated_csv(d, join(o.out_dir, "dataset_no-avg_stack_depth.csv").c_str())) {
                rc = fail(s3, "write ablated dataset");
            }
        }
    }
    if (rc == kExitOk) {
        std::printf("%-9s %-20s %8s %8s %8s %8s %8s\n", "model", "features", "accuracy", "f1", "recall", "fpr", "fnr");
        for (size_t i = 0; i < rlab_report_result_count(r); ++i) {
            const char* model = nullptr;
            const char* mask = nullptr;
            rlab_metric_means m;
            rlab_report_result(r, i, &model, &mask, &m);
            std::printf("%-9s %-20s %8.4f %8.4f %8.4f %8.4f %8.4f\n", model, mask, m.accuracy, m.f1, m.recall, m.fpr,
                        m.fnr);
        }
        std::cout << "report written to " << o.out_dir << '\n';
    }
    rlab_report_free(r);
    rlab_dataset_free(d);
    return rc;
}

int cmd_attack_demo(const Options& o) {
    if (!o.unbounded && o.reentries < 1) {
        std::cerr << "rlab: --reentries must be at least 1\n";
        return kExitInput;
    }
    char* text = nullptr;
    rlab_demo_summary summary;
    if (auto s = rlab_attack_demo(o.unbounded ? -1 : o.reentries, &text, &summary)) return fail(s, "attack demo");
    std::cout << text;
    std::cout << "\nsummary: attacker gained " << summary.attacker_gain << " wei in " << summary.attack_donations
              << " donations; victim " << summary.victim_before << " -> " << summary.victim_after
              << " wei; guarded service paid " << summary.counterfactual_donations << " donation(s)\n";
    rlab_string_free(text);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    if (const char* env = std::getenv("RLAB_OUT_DIR"); env && *env) o.out_dir = env;

    CLI::App app{"Reentrancy lab: simulated transactions, detectors and their evaluation.\n"
                 "Settings precedence: defaults < RLAB_OUT_DIR < flags < --config file."};
    app.require_subcommand(1);
    app.add_option("--config", o.config_path, "key = value file; its values override flags");

    auto* gen = app.add_subcommand("generate", "generate dataset.csv and catalog.csv");
    gen->add_option("--seed", o.seed, "generation seed")->capture_default_str();
    gen->add_option("--out", o.out_dir, "output directory (default: $RLAB_OUT_DIR or ./out)");
    gen->add_option("--gas-schedule", o.gas_schedule, "gas schedule config file");
    gen->add_flag("--no-disguise", o.no_disguise, "unbounded attackers and no benign depth padding");

    auto* ev = app.add_subcommand("eval", "cross-validate the detectors on a dataset");
    ev->add_option("--dataset", o.dataset, "dataset CSV")->required();
    ev->add_option("--models", o.models, "comma separated: rf,nb,lr,knn,svm,svm-poly")->capture_default_str();
    ev->add_option("--folds", o.folds, "folds per repetition")->capture_default_str();
    ev->add_option("--repeats", o.repeats, "repetitions of the cross-validation")->capture_default_str();
    ev->add_option("--seed", o.seed, "base seed of the fold shuffles")->capture_default_str();
    ev->add_flag("--ablate-depth", o.ablate_depth, "also evaluate without avg_stack_depth");
    ev->add_option("--out", o.out_dir, "output directory (default: $RLAB_OUT_DIR or ./out)");

    auto* demo = app.add_subcommand("attack-demo", "replay the exploit and its guarded counterfactual");
    auto* re = demo->add_option("--reentries", o.reentries, "donations the attacker collects")->capture_default_str();
    auto* unb = demo->add_flag("--unbounded", o.unbounded, "re-enter until the victim cannot pay");
    re->excludes(unb);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (!o.config_path.empty()) {
        if (int rc = apply_config_file(o.config_path, o)) return rc;
    }

    if (gen->parsed()) return cmd_generate(o);
    if (ev->parsed()) return cmd_eval(o);
    return cmd_attack_demo(o);
}
