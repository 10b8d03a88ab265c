// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eval/experiment.hpp"

#include <memory>

namespace rlab::eval {

MetricMeans mean_of(std::span<const FoldResult> folds) {
    MetricMeans m;
    if (folds.empty()) return m;
    for (const auto& f : folds) {
        m.accuracy += f.metrics.accuracy;
        m.precision += f.metrics.precision;
        m.recall += f.metrics.recall;
        m.f1 += f.metrics.f1;
        m.fpr += f.metrics.fpr;
        m.fnr += f.metrics.fnr;
    }
    const double n = double(folds.size());
    m.accuracy /= n;
    m.precision /= n;
    m.recall /= n;
    m.f1 /= n;
    m.fpr /= n;
    m.fnr /= n;
    return m;
}

const ModelResult* MetricsReport::find(std::string_view model, const detector::FeatureMask& mask) const {
    for (const auto& r : results) {
        if (r.model == model && r.mask == mask) return &r;
    }
    return nullptr;
}

ModelResult cross_validate(const std::string& name, const FitFn& fit, const detector::Dataset& dataset,
                           const ExperimentConfig& config) {
    const detector::Matrix x = dataset.features();
    const std::vector<int> y = dataset.labels();

    ModelResult result;
    result.model = name;
    result.mask = dataset.mask;
    const Rng model_seeds = Rng(config.base_seed).child("model");
    for (std::size_t r = 0; r < config.repetitions; ++r) {
        Rng fold_rng(config.base_seed + r);
        const FoldAssignment folds = stratified_kfold(y, config.folds, fold_rng);
        ConfusionCounts pooled;
        const std::size_t first = result.folds.size();
        for (std::size_t f = 0; f < folds.k(); ++f) {
            const auto train = folds.training(f);
            const detector::Matrix xt = x.select(train);
            std::vector<int> yt;
            yt.reserve(train.size());
            for (const auto i : train) yt.push_back(y[i]);

            const Predictor predict = fit(xt, yt, model_seeds.child(r * folds.k() + f).seed());
            ConfusionCounts counts;
            for (const auto i : folds.folds[f]) counts.add(y[i], predict(x.row(i)));
            pooled += counts;
            result.folds.push_back(FoldResult{r, f, counts, compute_metrics(counts)});
        }
        result.repetition_counts.push_back(pooled);
        result.repetition_means.push_back(mean_of(std::span(result.folds).subspan(first)));
    }
    result.mean = mean_of(result.folds);
    return result;
}

FitFn fit_fn(const detector::ModelSpec& spec) {
    return [spec](const detector::Matrix& x, std::span<const int> y, std::uint64_t seed) -> Predictor {
        detector::ModelSpec s = spec;
        s.seed = seed;
        auto model = std::make_shared<const detector::TrainedModel>(detector::fit(s, x, y));
        return [model](std::span<const double> row) { return detector::predict(*model, row); };
    };
}

MetricsReport run_experiment(const detector::Dataset& dataset, std::span<const detector::ModelSpec> specs,
                             const ExperimentConfig& config) {
    MetricsReport report;
    report.config = config;
    report.samples = dataset.size();
    report.harmful = dataset.count(1);
    for (const auto& spec : specs) {
        report.results.push_back(
            cross_validate(std::string(detector::model_name(spec.kind)), fit_fn(spec), dataset, config));
    }
    return report;
}

MetricsReport run_ablation(const detector::Dataset& dataset, std::span<const detector::ModelSpec> specs,
                           const ExperimentConfig& config) {
    detector::Dataset full = dataset;
    full.mask = detector::FeatureMask::all();
    MetricsReport report = run_experiment(full, specs, config);

    detector::Dataset ablated = full;
    ablated.mask = full.mask.without(detector::Feature::kAvgStackDepth);
    auto more = run_experiment(ablated, specs, config);
    for (auto& r : more.results) report.results.push_back(std::move(r));
    return report;
}

}  // namespace rlab::eval
