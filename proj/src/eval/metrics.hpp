// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "common/rng.hpp"

namespace rlab::eval {

/// Harmful (label 1) is the positive class.
struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
    void add(int truth, int predicted);
    ConfusionCounts& operator+=(const ConfusionCounts& o);
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Rates whose denominator is zero are reported as 0 with their flag set.
struct Metrics {
    double accuracy = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    double fpr = 0;
    double fnr = 0;

    bool precision_degenerate = false;
    bool recall_degenerate = false;
    bool f1_degenerate = false;
    bool fpr_degenerate = false;
    bool fnr_degenerate = false;
};

/// Throws kEmptyConfusion when all counts are zero.
Metrics compute_metrics(const ConfusionCounts& c);

/// k disjoint, exhaustive folds of sample indices.
struct FoldAssignment {
    std::vector<std::vector<std::size_t>> folds;

    std::size_t k() const { return folds.size(); }
    /// Indices of every fold except `held_out`, in ascending order.
    std::vector<std::size_t> training(std::size_t held_out) const;
};

/// Shuffles each class with `rng` (benign first), then deals the
/// concatenated class lists round-robin over the folds. Throws
/// kTooFewSamples when a class has fewer than k samples.
FoldAssignment stratified_kfold(std::span<const int> labels, std::size_t k, Rng& rng);

/// Folds are disjoint and exhaustive over `labels`, and each fold's class
/// counts are within one sample of the global class ratio.
bool is_stratified(const FoldAssignment& folds, std::span<const int> labels);

}  // namespace rlab::eval
