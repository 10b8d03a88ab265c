// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "common/rng.hpp"
#include "detector/features.hpp"

namespace rlab::detector {

/// Per-feature standardization fitted on training rows only. Uses the
/// population standard deviation; constant features get a scale of 1.
struct Scaler {
    std::vector<double> mean;
    std::vector<double> scale;

    static Scaler fit(const Matrix& x);
    std::vector<double> transform(std::span<const double> row) const;
    Matrix transform(const Matrix& x) const;
};

/// Gini impurity of a binary node.
double gini(std::size_t n0, std::size_t n1);

struct Split {
    std::size_t feature = 0;
    double threshold = 0;  // rows with x <= threshold go left
    double gain = 0;       // parent impurity minus weighted child impurity
};

/// Best CART split over `features` for the rows `index` of `x`, trying the
/// midpoints between consecutive distinct values. Ties go to the lower
/// feature, then the lower threshold. Empty when no feature separates the
/// rows.
std::optional<Split> best_split(const Matrix& x, std::span<const int> y, std::span<const std::size_t> index,
                                std::span<const std::size_t> features);

struct TreeNode {
    // internal nodes
    std::size_t feature = 0;
    double threshold = 0;
    int left = -1;
    int right = -1;
    // every node
    std::size_t n0 = 0;
    std::size_t n1 = 0;

    bool is_leaf() const { return left < 0; }
    int label() const { return n1 > n0 ? 1 : 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    int predict(std::span<const double> row) const;
    std::size_t depth() const;
};

inline constexpr std::size_t kMinSamplesSplit = 2;

/// Unpruned CART on the rows `index` (duplicates allowed, as in a bootstrap
/// sample). Each node draws `feature_subsample` candidate features from
/// `rng`; when none of them separates the rows the remaining features are
/// tried before the node becomes a leaf.
Tree fit_decision_tree(const Matrix& x, std::span<const int> y, std::span<const std::size_t> index, Rng& rng,
                       std::size_t feature_subsample);

}  // namespace rlab::detector
