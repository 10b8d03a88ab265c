// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "detector/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rlab::detector {

namespace {

// gains closer than this are treated as equal so that the tie-break order,
// not rounding noise, picks the split
constexpr double kGainTolerance = 1e-12;

}  // namespace

Scaler Scaler::fit(const Matrix& x) {
    Scaler s;
    s.mean.assign(x.cols, 0.0);
    s.scale.assign(x.cols, 1.0);
    if (x.rows == 0) return s;
    for (std::size_t j = 0; j < x.cols; ++j) {
        double sum = 0;
        for (std::size_t i = 0; i < x.rows; ++i) sum += x(i, j);
        const double mean = sum / static_cast<double>(x.rows);
        double ss = 0;
        for (std::size_t i = 0; i < x.rows; ++i) ss += (x(i, j) - mean) * (x(i, j) - mean);
        const double sd = std::sqrt(ss / static_cast<double>(x.rows));
        s.mean[j] = mean;
        s.scale[j] = sd > 0 ? sd : 1.0;
    }
    return s;
}

std::vector<double> Scaler::transform(std::span<const double> row) const {
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / scale[j];
    return out;
}

Matrix Scaler::transform(const Matrix& x) const {
    Matrix out(x.rows, x.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t j = 0; j < x.cols; ++j) out(i, j) = (x(i, j) - mean[j]) / scale[j];
    }
    return out;
}

double gini(std::size_t n0, std::size_t n1) {
    const std::size_t n = n0 + n1;
    if (n == 0) return 0;
    const double p0 = static_cast<double>(n0) / static_cast<double>(n);
    const double p1 = static_cast<double>(n1) / static_cast<double>(n);
    return 1.0 - p0 * p0 - p1 * p1;
}

std::optional<Split> best_split(const Matrix& x, std::span<const int> y, std::span<const std::size_t> index,
                                std::span<const std::size_t> features) {
    const std::size_t n = index.size();
    if (n < 2) return std::nullopt;
    std::size_t total1 = 0;
    for (const auto i : index) total1 += y[i] == 1;
    const double parent = gini(n - total1, total1);

    std::optional<Split> best;
    std::vector<std::size_t> order(index.begin(), index.end());
    for (const auto f : features) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x(a, f) < x(b, f); });
        std::size_t left1 = 0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            left1 += y[order[k]] == 1;
            const double lo = x(order[k], f);
            const double hi = x(order[k + 1], f);
            if (!(lo < hi)) continue;
            const std::size_t nl = k + 1;
            const std::size_t nr = n - nl;
            const double weighted = (static_cast<double>(nl) * gini(nl - left1, left1) +
                                     static_cast<double>(nr) * gini(nr - (total1 - left1), total1 - left1)) /
                                    static_cast<double>(n);
            const double gain = parent - weighted;
            if (best && gain <= best->gain + kGainTolerance) continue;
            double mid = lo + (hi - lo) / 2;
            if (!(mid < hi)) mid = lo;  // adjacent doubles
            best = Split{f, mid, gain};
        }
    }
    return best;
}

int Tree::predict(std::span<const double> row) const {
    std::size_t at = 0;
    while (!nodes[at].is_leaf()) {
        const auto& node = nodes[at];
        at = static_cast<std::size_t>(row[node.feature] <= node.threshold ? node.left : node.right);
    }
    return nodes[at].label();
}

std::size_t Tree::depth() const {
    std::vector<std::size_t> level(nodes.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        deepest = std::max(deepest, level[i]);
        if (!nodes[i].is_leaf()) {
            level[static_cast<std::size_t>(nodes[i].left)] = level[i] + 1;
            level[static_cast<std::size_t>(nodes[i].right)] = level[i] + 1;
        }
    }
    return deepest;
}

namespace {

class TreeBuilder {
  public:
    TreeBuilder(const Matrix& x, std::span<const int> y, Rng& rng, std::size_t subsample)
        : x_(x), y_(y), rng_(rng), subsample_(std::clamp<std::size_t>(subsample, 1, x.cols)) {}

    int build(std::vector<std::size_t> index) {
        const int id = static_cast<int>(tree_.nodes.size());
        tree_.nodes.emplace_back();
        for (const auto i : index) (y_[i] == 1 ? tree_.nodes[id].n1 : tree_.nodes[id].n0)++;
        const auto& counts = tree_.nodes[id];
        if (counts.n0 == 0 || counts.n1 == 0 || index.size() < kMinSamplesSplit) return id;

        std::vector<std::size_t> candidates(x_.cols);
        std::iota(candidates.begin(), candidates.end(), std::size_t{0});
        rng_.shuffle(std::span(candidates));
        std::vector<std::size_t> first(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(subsample_));
        std::vector<std::size_t> rest(candidates.begin() + static_cast<std::ptrdiff_t>(subsample_), candidates.end());
        std::sort(first.begin(), first.end());
        std::sort(rest.begin(), rest.end());

        auto split = best_split(x_, y_, index, first);
        if (!split && !rest.empty()) split = best_split(x_, y_, index, rest);
        if (!split) return id;

        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (const auto i : index) (x_(i, split->feature) <= split->threshold ? left : right).push_back(i);
        index.clear();
        index.shrink_to_fit();

        tree_.nodes[id].feature = split->feature;
        tree_.nodes[id].threshold = split->threshold;
        const int l = build(std::move(left));
        tree_.nodes[id].left = l;
        const int r = build(std::move(right));
        tree_.nodes[id].right = r;
        return id;
    }

    Tree take() { return std::move(tree_); }

  private:
    const Matrix& x_;
    std::span<const int> y_;
    Rng& rng_;
    std::size_t subsample_;
    Tree tree_;
};

}  // namespace

Tree fit_decision_tree(const Matrix& x, std::span<const int> y, std::span<const std::size_t> index, Rng& rng,
                       std::size_t feature_subsample) {
    TreeBuilder builder(x, y, rng, feature_subsample);
    builder.build(std::vector<std::size_t>(index.begin(), index.end()));
    return builder.take();
}

}  // namespace rlab::detector
