// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "behaviors/templates.hpp"
#include "chain/executor.hpp"
#include "chain/node.hpp"
#include "chain/state.hpp"
#include "common/error.hpp"
#include "common/rng.hpp"
#include "detector/features.hpp"
#include "detector/models.hpp"
#include "detector/tree.hpp"
#include "eval/attack_demo.hpp"
#include "eval/correlation.hpp"
#include "eval/datagen.hpp"
#include "eval/experiment.hpp"
#include "eval/metrics.hpp"

namespace fs = std::filesystem;
using namespace rlab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = "'" RLAB_CLI_PATH "' " + args + " > '" + log.string() + "' 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("rlab_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

const eval::GeneratedDataset& generated() {
    static const eval::GeneratedDataset g = eval::generate_dataset(eval::GenerationConfig{});
    return g;
}

chain::Transaction donate_tx(const chain::Address& user, const chain::Address& service) {
    chain::Transaction tx;
    tx.from = user;
    tx.to = service;
    tx.function = "donate";
    tx.argument = user;
    tx.gas_limit = 3'000'000;
    return tx;
}

// ---- 1: exploit reproduction ------------------------------------------------

Outcome exploit_reproduction() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto demo = eval::run_attack_demo(behaviors::kUnbounded);
    const double in_process = seconds_since(t0);

    const auto& a = demo.attack;
    o.require(a.receipt.has_value(), "attack transaction reverted");
    o.require(a.service_before == Wei::ether(10), "victim did not start at 10 ether");
    o.require(a.service_after < demo.donation, "victim kept at least one donation");
    const int128 drained = difference(a.service_before, a.service_after);
    o.require(difference(a.user_after, a.user_before) == drained, "attacker gain differs from the drained total");
    const auto& c = demo.counterfactual;
    o.require(difference(c.user_after, c.user_before) == static_cast<int128>(Wei::ether(1).value()),
              "guarded counterfactual did not transfer exactly 1 ether");

    const auto log = scratch("demo") / "out.txt";
    const auto t1 = Clock::now();
    const int status = run_cli("attack-demo --unbounded", log);
    const double cli_time = seconds_since(t1);
    o.require(status == 0, "attack-demo exited with " + std::to_string(status));
    o.require(read_file(log).find("donations committed: 10") != std::string::npos, "CLI dump lacks the drain");
    o.require(cli_time < 1.0, "attack-demo took " + fmt(cli_time) + " s");
    if (o.pass) {
        o.detail = "drained " + rlab::to_string(drained) + " wei in " + std::to_string(a.donations()) +
                   " donations; counterfactual " + std::to_string(c.donations()) + "; CLI " + fmt(cli_time, 3) +
                   " s, in-process " + fmt(in_process, 4) + " s";
    }
    return o;
}

// ---- 2: revert semantics ----------------------------------------------------

std::shared_ptr<const chain::ContractBehavior> failing_reentrant_user(std::int64_t fail_at) {
    using namespace chain;
    const Slot donations{"donations", std::nullopt};
    ContractBehavior b;
    b.kind = "failing-at";
    b.fallback = Script{
        Instruction{Increment{donations}},
        Instruction{Require{donations, Cmp::kLt, fail_at}},
        Instruction{When{donations, Cmp::kLt, fail_at,
                         Script{Instruction{Call{AddressRef::kCaller, std::string("donate"), Amount{}, AddressRef::kSelf,
                                                 OnFailure::kIgnore}}}}},
    };
    return std::make_shared<const ContractBehavior>(std::move(b));
}

Outcome revert_semantics() {
    Outcome o;
    std::string summary;
    for (std::int64_t n : {2, 3, 6}) {
        chain::Node node;
        const auto service = node.deploy(behaviors::make_vulnerable_service(Wei::ether(1)), Wei::ether(10));
        const auto user = node.deploy(failing_reentrant_user(n), Wei{});
        const chain::ChainState before = node.state();
        const auto r = node.submit(donate_tx(user, service));
        const auto* e = std::get_if<chain::Executed>(&r);
        if (!e) {
            o.require(false, "N=" + std::to_string(n) + " reverted at top level");
            continue;
        }
        // snapshot oracle: replay committed frames over the pre-state
        std::map<chain::Address, Wei> expected;
        for (const auto& addr : before.addresses()) expected[addr] = before.balance_of(addr);
        const auto committed = chain::committed_frames(e->trace);
        int transfers = 0;
        for (std::size_t i = 0; i < e->trace.frames.size(); ++i) {
            if (!committed[i]) continue;
            const auto& f = e->trace.frames[i];
            expected[f.caller] -= f.value;
            expected[f.callee] += f.value;
            transfers += f.caller == service && f.callee == user && !f.value.is_zero();
        }
        bool journal_matches = true;
        for (const auto& [addr, w] : expected) journal_matches &= node.state().balance_of(addr) == w;
        o.require(transfers == n - 1, "N=" + std::to_string(n) + " committed " + std::to_string(transfers));
        o.require(journal_matches, "N=" + std::to_string(n) + " state differs from the snapshot replay");
        o.require(node.state().balance_of(user) == Wei::ether(static_cast<std::uint64_t>(n - 1)),
                  "N=" + std::to_string(n) + " user balance");
        summary += (summary.empty() ? "" : ", ") + std::string("N=") + std::to_string(n) + ": " +
                   std::to_string(transfers);
    }
    if (o.pass) o.detail = "committed transfers " + summary;
    return o;
}

// ---- 3: dataset protocol ----------------------------------------------------

Outcome dataset_protocol() {
    Outcome o;
    const auto& g = generated();
    const auto d = g.dataset();
    int curated = 0;
    for (const auto& r : g.runs) curated += r.origin == eval::RunOrigin::kCurated;
    o.require(d.size() == 105, "rows " + std::to_string(d.size()));
    o.require(d.count(0) == 53, "benign " + std::to_string(d.count(0)));
    o.require(d.count(1) == 52, "harmful " + std::to_string(d.count(1)));
    o.require(curated == 25, "curated " + std::to_string(curated));
    o.require(g.runs.size() - curated == 80, "fuzzed " + std::to_string(g.runs.size() - curated));

    std::ostringstream a, b;
    eval::write_dataset_csv(a, g.runs);
    eval::write_dataset_csv(b, eval::generate_dataset(eval::GenerationConfig{}).runs);
    o.require(a.str() == b.str(), "regeneration under the same seed differs");

    // the harness derives repetition r's shuffle from base_seed + r
    const auto y = d.labels();
    const eval::ExperimentConfig config;
    for (std::size_t r = 0; r < config.repetitions; ++r) {
        Rng rng(config.base_seed + r);
        const auto folds = eval::stratified_kfold(y, config.folds, rng);
        bool ok = eval::is_stratified(folds, y) && folds.k() == 10;
        for (const auto& f : folds.folds) {
            const auto harmful = std::count_if(f.begin(), f.end(), [&](std::size_t i) { return y[i] == 1; });
            ok &= (f.size() == 10 || f.size() == 11) && harmful >= 5 && harmful <= 6;
        }
        o.require(ok, "repetition " + std::to_string(r) + " not stratified");
    }
    if (o.pass) o.detail = "105 rows, 53/52, 25 curated + 80 fuzzed, 10 stratified repetitions";
    return o;
}

// ---- 4: classifier oracles --------------------------------------------------

double gini_of(std::size_t n0, std::size_t n1) {
    const double n = static_cast<double>(n0 + n1);
    if (n == 0) return 0;
    const double p = static_cast<double>(n1) / n;
    return 2 * p * (1 - p);
}

Outcome classifier_oracles() {
    using namespace detector;
    Outcome o;
    const auto d = generated().dataset();
    const auto x = d.features();
    const auto y = d.labels();
    const std::size_t n = x.rows;

    // k-NN against brute force over z-scored rows
    {
        const auto m = fit(ModelSpec::of(ModelKind::kKnn), x, y);
        std::vector<double> mean(x.cols), sd(x.cols);
        for (std::size_t j = 0; j < x.cols; ++j) {
            double s = 0, v = 0;
            for (std::size_t i = 0; i < n; ++i) s += x(i, j);
            mean[j] = s / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) v += (x(i, j) - mean[j]) * (x(i, j) - mean[j]);
            sd[j] = std::sqrt(v / static_cast<double>(n));
            if (sd[j] == 0) sd[j] = 1;
        }
        std::size_t mismatches = 0;
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<double> dist(n);
            for (std::size_t i = 0; i < n; ++i) {
                double s = 0;
                for (std::size_t j = 0; j < x.cols; ++j) {
                    const double diff = (x(i, j) - mean[j]) / sd[j] - (x(q, j) - mean[j]) / sd[j];
                    s += diff * diff;
                }
                dist[i] = s;
            }
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return dist[a] < dist[b]; });
            order.resize(5);
            int ones = 0;
            for (auto i : order) ones += y[i];
            mismatches += knn_neighbors(m, x.row(q)) != order || predict(m, x.row(q)) != (ones >= 3 ? 1 : 0);
        }
        o.require(mismatches == 0, "k-NN differs from brute force on " + std::to_string(mismatches) + " rows");
    }

    // forest prediction is the modal tree vote
    {
        const auto m = fit(ModelSpec::of(ModelKind::kRandomForest, 5), x, y);
        const auto& forest = std::get<ForestModel>(m.params);
        std::size_t mismatches = 0;
        for (std::size_t q = 0; q < n; ++q) {
            int ones = 0;
            for (const auto& t : forest.trees) ones += t.predict(x.row(q));
            const int modal = 2 * ones > static_cast<int>(forest.trees.size()) ? 1 : 0;
            mismatches += predict(m, x.row(q)) != modal;
        }
        o.require(mismatches == 0, "RF differs from the modal vote on " + std::to_string(mismatches) + " rows");
    }

    // LR gradient against central differences
    {
        const auto z = Scaler::fit(x).transform(x);
        Rng rng(77);
        double worst = 0;
        for (int point = 0; point < 10; ++point) {
            std::vector<double> theta(z.cols + 1);
            for (auto& t : theta) t = rng.uniform01() * 4 - 2;
            const auto g = logistic_gradient(theta, z, y);
            for (std::size_t j = 0; j < theta.size(); ++j) {
                const double h = 1e-5;
                auto plus = theta, minus = theta;
                plus[j] += h;
                minus[j] -= h;
                const double numeric = (logistic_loss(plus, z, y) - logistic_loss(minus, z, y)) / (2 * h);
                const double scale = std::max({std::abs(g[j]), std::abs(numeric), 1e-8});
                worst = std::max(worst, std::abs(g[j] - numeric) / scale);
            }
        }
        o.require(worst <= 1e-4, "LR gradient relative error " + std::to_string(worst));
    }

    // NB posteriors normalize
    {
        const auto m = fit(ModelSpec::of(ModelKind::kGaussianNB), x, y);
        double worst = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const auto p = nb_posteriors(m, x.row(q));
            worst = std::max(worst, std::abs(p[0] + p[1] - 1.0));
        }
        o.require(worst <= 1e-12, "NB posterior sum off by " + std::to_string(worst));
    }

    // best split against exhaustive search, all features considered
    {
        std::vector<std::size_t> idx(n), features(x.cols);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::iota(features.begin(), features.end(), std::size_t{0});
        const std::size_t n1 = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
        const double parent = gini_of(n - n1, n1);
        double best_gain = -1;
        std::size_t best_feature = 0;
        double best_threshold = 0;
        for (std::size_t f = 0; f < x.cols; ++f) {
            std::vector<double> values;
            for (std::size_t i = 0; i < n; ++i) values.push_back(x(i, f));
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            for (std::size_t k = 0; k + 1 < values.size(); ++k) {
                const double t = (values[k] + values[k + 1]) / 2;
                std::size_t l0 = 0, l1 = 0, r0 = 0, r1 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const bool left = x(i, f) <= t;
                    (left ? (y[i] ? l1 : l0) : (y[i] ? r1 : r0)) += 1;
                }
                const double nd = static_cast<double>(n);
                const double gain = parent - static_cast<double>(l0 + l1) / nd * gini_of(l0, l1) -
                                    static_cast<double>(r0 + r1) / nd * gini_of(r0, r1);
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_feature = f;
                    best_threshold = t;
                }
            }
        }
        const auto got = best_split(x, y, idx, features);
        o.require(got.has_value() && got->feature == best_feature && got->threshold == best_threshold &&
                      std::abs(got->gain - best_gain) <= 1e-12,
                  "best split differs from exhaustive search");
    }
    if (o.pass) o.detail = "k-NN, RF vote, LR gradient, NB normalization and best split agree with their oracles";
    return o;
}

// ---- 5, 6: headline accuracy and FPR regime ---------------------------------

struct FullRun {
    eval::MetricsReport report;
    double seconds = 0;
};

const FullRun& full_run() {
    static const FullRun run = [] {
        std::vector<detector::ModelSpec> specs;
        for (auto k : {detector::ModelKind::kRandomForest, detector::ModelKind::kGaussianNB,
                       detector::ModelKind::kLogisticRegression, detector::ModelKind::kKnn,
                       detector::ModelKind::kSvmLinear}) {
            specs.push_back(detector::ModelSpec::of(k));
        }
        const auto t0 = Clock::now();
        FullRun r;
        r.report = eval::run_ablation(generated().dataset(), specs, eval::ExperimentConfig{});
        r.seconds = seconds_since(t0);
        return r;
    }();
    return run;
}

Outcome headline_accuracy() {
    Outcome o;
    const auto& run = full_run();
    const auto all = detector::FeatureMask::all();
    const auto ablated = all.without(detector::Feature::kAvgStackDepth);
    const auto* rf = run.report.find("rf", all);
    const auto* rf_ablated = run.report.find("rf", ablated);
    if (!rf || !rf_ablated) {
        o.require(false, "RF results missing");
        return o;
    }
    o.require(run.report.results.size() == 10, "expected 5 models x 2 masks");
    o.require(rf->mean.accuracy >= 0.85, "RF accuracy " + fmt(rf->mean.accuracy));
    o.require(rf_ablated->mean.accuracy >= rf->mean.accuracy - 0.03, "ablated RF accuracy " +
                                                                         fmt(rf_ablated->mean.accuracy));
    o.require(rf->mean.fnr <= 0.25, "RF FNR " + fmt(rf->mean.fnr));
    o.require(run.seconds < 120, "experiment took " + fmt(run.seconds, 1) + " s");
    const std::string numbers = "RF accuracy " + fmt(rf->mean.accuracy) + ", ablated " +
                                fmt(rf_ablated->mean.accuracy) + ", FNR " + fmt(rf->mean.fnr) + ", 5x2 run " +
                                fmt(run.seconds, 1) + " s";
    o.detail = o.pass ? numbers : o.detail + " (" + numbers + ")";
    return o;
}

Outcome fpr_regime() {
    Outcome o;
    const auto& report = full_run().report;
    double worst = 0;
    for (const auto& r : report.results) {
        worst = std::max(worst, r.mean.fpr);
        o.require(r.mean.fpr <= 0.15, r.model + "/" + r.mask.name() + " FPR " + fmt(r.mean.fpr));
    }
    const auto all = detector::FeatureMask::all();
    const auto* lr = report.find("lr", all);
    const auto* nb = report.find("nb", all);
    if (!lr || !nb) {
        o.require(false, "LR or NB results missing");
        return o;
    }
    o.require(lr->mean.fpr <= nb->mean.fpr + 0.05, "LR FPR " + fmt(lr->mean.fpr) + " vs NB " + fmt(nb->mean.fpr));
    const std::string numbers =
        "max FPR " + fmt(worst) + ", LR " + fmt(lr->mean.fpr) + ", NB " + fmt(nb->mean.fpr);
    o.detail = o.pass ? numbers : o.detail + " (" + numbers + ")";
    return o;
}

// ---- 7: correlation analysis ------------------------------------------------

Outcome correlation_analysis() {
    Outcome o;
    const auto m = eval::correlation_matrix(generated().dataset());
    bool symmetric = true, unit = true;
    for (std::size_t i = 0; i < eval::kCorrelationColumns; ++i) {
        unit &= m.at(i, i).has_value() && std::abs(*m.at(i, i) - 1.0) <= 1e-12;
        for (std::size_t j = 0; j < eval::kCorrelationColumns; ++j) symmetric &= m.at(i, j) == m.at(j, i);
    }
    o.require(symmetric, "matrix not symmetric");
    o.require(unit, "diagonal not 1");
    const auto depth_label = m.at(3, 4);
    o.require(depth_label.has_value() && std::abs(*depth_label) < 0.3,
              "disguised corr(depth, label) " + (depth_label ? fmt(*depth_label) : std::string("NA")));

    eval::GenerationConfig plain;
    plain.disguise = behaviors::DisguiseConfig::none();
    const auto undisguised = eval::correlation_matrix(eval::generate_dataset(plain).dataset()).at(3, 4);
    o.require(undisguised.has_value() && *undisguised > 0.5,
              "undisguised corr(depth, label) " + (undisguised ? fmt(*undisguised) : std::string("NA")));
    if (o.pass) {
        o.detail = "corr(depth, label) " + fmt(*depth_label) + " disguised, " + fmt(*undisguised) + " undisguised";
    }
    return o;
}

// ---- 8: metric identities ---------------------------------------------------

Outcome metric_identities() {
    Outcome o;
    Rng rng(8080);
    int checked = 0, harmonic = 0;
    for (int i = 0; i < 1000; ++i) {
        eval::ConfusionCounts c{rng.uniform(100), rng.uniform(100), rng.uniform(100), rng.uniform(100)};
        if (c.total() == 0) c.tp = 1;
        const auto m = eval::compute_metrics(c);
        const double n = static_cast<double>(c.total());
        const double tp_tn = static_cast<double>(c.tp + c.tn);
        bool ok = std::abs(m.accuracy * n - tp_tn) <= 1e-9 * std::max(1.0, tp_tn);
        // precision, recall and F1 from first principles
        const double p = c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0;
        const double r = c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0;
        if (p + r > 0) {
            ok &= std::abs(m.f1 - 2 * p * r / (p + r)) <= 1e-12;
            if (p > 0 && r > 0) ok &= std::abs(2 / m.f1 - (1 / p + 1 / r)) <= 1e-9 * (1 / p + 1 / r);
            ++harmonic;
        } else {
            ok &= m.f1 == 0;
        }
        checked += ok;
    }
    o.require(checked == 1000, std::to_string(1000 - checked) + " of 1000 counts violate an identity");
    if (o.pass) o.detail = "1000 random counts, " + std::to_string(harmonic) + " with a defined harmonic mean";
    return o;
}

// ---- 9: determinism ---------------------------------------------------------

Outcome determinism() {
    Outcome o;
    const fs::path dirs[2] = {scratch("run_a"), scratch("run_b")};
    for (const auto& dir : dirs) {
        const auto log = dir / "log.txt";
        const std::string out = "'" + dir.string() + "'";
        const int g = run_cli("generate --seed 1 --out " + out, log);
        const int e = run_cli("eval --dataset " + out + "/dataset.csv --ablate-depth --seed 1 --out " + out, log);
        o.require(g == 0 && e == 0, "CLI run in " + dir.string() + " failed");
    }
    const char* files[] = {"dataset.csv",     "catalog.csv",     "report.json", "metrics.csv",
                           "correlation.csv", "correlation.svg", "dataset_no-avg_stack_depth.csv"};
    for (const char* f : files) {
        const auto a = read_file(dirs[0] / f);
        const auto b = read_file(dirs[1] / f);
        o.require(!a.empty() && a == b, std::string(f) + " differs between runs");
    }
    if (o.pass) o.detail = "dataset, catalog, report, metrics and correlation files byte-identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 exploit reproduction", exploit_reproduction},
        {"2 revert semantics", revert_semantics},
        {"3 dataset protocol", dataset_protocol},
        {"4 classifier oracles", classifier_oracles},
        {"5 headline accuracy band", headline_accuracy},
        {"6 FPR regime", fpr_regime},
        {"7 correlation analysis", correlation_analysis},
        {"8 metrics identities", metric_identities},
        {"9 determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s  %-26s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
