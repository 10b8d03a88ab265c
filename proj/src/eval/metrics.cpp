// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace rlab::eval {

void ConfusionCounts::add(int truth, int predicted) {
    if (truth == 1) {
        (predicted == 1 ? tp : fn)++;
    } else {
        (predicted == 1 ? fp : tn)++;
    }
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
}

Metrics compute_metrics(const ConfusionCounts& c) {
    const std::uint64_t n = c.total();
    if (n == 0) throw Error(ErrorCode::kEmptyConfusion, "confusion counts are all zero");

    auto ratio = [](std::uint64_t num, std::uint64_t den, bool& degenerate) {
        degenerate = den == 0;
        return degenerate ? 0.0 : double(num) / double(den);
    };

    Metrics m;
    m.accuracy = double(c.tp + c.tn) / double(n);
    m.precision = ratio(c.tp, c.tp + c.fp, m.precision_degenerate);
    m.recall = ratio(c.tp, c.tp + c.fn, m.recall_degenerate);
    m.fpr = ratio(c.fp, c.fp + c.tn, m.fpr_degenerate);
    m.fnr = ratio(c.fn, c.fn + c.tp, m.fnr_degenerate);
    const double sum = m.precision + m.recall;
    m.f1_degenerate = m.precision_degenerate || m.recall_degenerate || sum == 0;
    m.f1 = m.f1_degenerate ? 0.0 : 2 * m.precision * m.recall / sum;
    return m;
}

std::vector<std::size_t> FoldAssignment::training(std::size_t held_out) const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        if (f != held_out) out.insert(out.end(), folds[f].begin(), folds[f].end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

FoldAssignment stratified_kfold(std::span<const int> labels, std::size_t k, Rng& rng) {
    if (k < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 folds");
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i] == 1 ? 1 : 0].push_back(i);
    for (const auto& members : by_class) {
        if (members.size() < k) {
            throw Error(ErrorCode::kTooFewSamples, "a class has " + std::to_string(members.size()) +
                                                       " samples, fewer than " + std::to_string(k) + " folds");
        }
    }

    FoldAssignment out;
    out.folds.resize(k);
    std::size_t next = 0;
    for (auto& members : by_class) {
        rng.shuffle(std::span(members));
        for (const auto i : members) out.folds[next++ % k].push_back(i);
    }
    for (auto& f : out.folds) std::sort(f.begin(), f.end());
    return out;
}

bool is_stratified(const FoldAssignment& folds, std::span<const int> labels) {
    const std::size_t n = labels.size();
    std::vector<int> seen(n, 0);
    std::size_t covered = 0;
    std::size_t total1 = 0;
    for (const int y : labels) total1 += y == 1;
    for (const auto& fold : folds.folds) {
        std::size_t ones = 0;
        for (const auto i : fold) {
            if (i >= n || seen[i]++) return false;
            ++covered;
            ones += labels[i] == 1;
        }
        const double expected1 = double(fold.size()) * double(total1) / double(n);
        const double expected0 = double(fold.size()) - expected1;
        if (std::abs(double(ones) - expected1) > 1.0) return false;
        if (std::abs(double(fold.size() - ones) - expected0) > 1.0) return false;
    }
    return covered == n;
}

}  // namespace rlab::eval
