// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "detector/models.hpp"
#include "eval/metrics.hpp"

namespace rlab::eval {

/// A fitted classifier as seen by the cross-validation harness.
using Predictor = std::function<int(std::span<const double>)>;
/// Trains on (x, y) and returns the predictor. `seed` is unique per fold.
using FitFn = std::function<Predictor(const detector::Matrix& x, std::span<const int> y, std::uint64_t seed)>;

struct FoldResult {
    std::size_t repetition = 0;
    std::size_t fold = 0;
    ConfusionCounts counts;
    Metrics metrics;
};

struct MetricMeans {
    double accuracy = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    double fpr = 0;
    double fnr = 0;
};

/// Arithmetic mean over the given folds.
MetricMeans mean_of(std::span<const FoldResult> folds);

struct ModelResult {
    std::string model;  // short name, e.g. "rf"
    detector::FeatureMask mask;
    std::vector<FoldResult> folds;  // repetition-major
    /// Mean of the per-fold metrics over every fold of every repetition.
    MetricMeans mean;
    /// Per repetition: fold-mean metrics and the pooled confusion counts.
    std::vector<MetricMeans> repetition_means;
    std::vector<ConfusionCounts> repetition_counts;
};

struct ExperimentConfig {
    std::size_t repetitions = 10;
    std::size_t folds = 10;
    std::uint64_t base_seed = 1;
};

struct MetricsReport {
    ExperimentConfig config;
    std::size_t samples = 0;
    std::size_t harmful = 0;
    std::vector<ModelResult> results;

    const ModelResult* find(std::string_view model, const detector::FeatureMask& mask) const;
};

/// Repetition r folds the data with Rng(base_seed + r); every fold trains
/// on the other k-1 folds and predicts the held-out one.
ModelResult cross_validate(const std::string& name, const FitFn& fit, const detector::Dataset& dataset,
                           const ExperimentConfig& config);

FitFn fit_fn(const detector::ModelSpec& spec);

/// Every spec on the dataset's mask. Propagates kDegenerateTraining.
MetricsReport run_experiment(const detector::Dataset& dataset, std::span<const detector::ModelSpec> specs,
                             const ExperimentConfig& config);

/// run_experiment on the full mask, then again without avg_stack_depth.
MetricsReport run_ablation(const detector::Dataset& dataset, std::span<const detector::ModelSpec> specs,
                           const ExperimentConfig& config);

}  // namespace rlab::eval
