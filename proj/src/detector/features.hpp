// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monitor/monitor.hpp"

namespace rlab::detector {

enum class Feature { kGasUsed = 0, kBalDiffC1 = 1, kBalDiffC2 = 2, kAvgStackDepth = 3 };

inline constexpr std::size_t kFeatureCount = 4;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {"gas_used", "bal_diff_c1", "bal_diff_c2",
                                                                              "avg_stack_depth"};

/// The four monitored features. Wei values are plain wei counts.
struct FeatureVector {
    double gas_used = 0;
    double bal_diff_c1 = 0;
    double bal_diff_c2 = 0;
    double avg_stack_depth = 0;

    std::array<double, kFeatureCount> values() const { return {gas_used, bal_diff_c1, bal_diff_c2, avg_stack_depth}; }
};

FeatureVector extract_features(const monitor::Observation& obs);

/// Subset of the features a model is trained on, in canonical order.
class FeatureMask {
  public:
    FeatureMask() { bits_.set(); }

    static FeatureMask all() { return {}; }
    FeatureMask without(Feature f) const;

    bool has(Feature f) const { return bits_.test(static_cast<std::size_t>(f)); }
    std::size_t dimension() const { return bits_.count(); }
    std::vector<std::size_t> indices() const;
    /// "all" or "no-<feature>[-<feature>...]".
    std::string name() const;

    friend bool operator==(const FeatureMask&, const FeatureMask&) = default;

  private:
    std::bitset<kFeatureCount> bits_;
};

/// Row-major dense matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

    /// Rows at `index`, in that order.
    Matrix select(std::span<const std::size_t> index) const;
};

struct Sample {
    std::string tx_id;
    FeatureVector x;
    int label = 0;  // 1 harmful, 0 benign
};

struct Dataset {
    std::vector<Sample> samples;
    FeatureMask mask;

    std::size_t size() const { return samples.size(); }
    std::size_t count(int label) const;

    /// Masked feature matrix.
    Matrix features() const;
    std::vector<int> labels() const;
    std::vector<double> masked(const FeatureVector& x) const;

    /// Rejects duplicated tx ids and labels other than 0/1.
    void validate() const;
};

}  // namespace rlab::detector
