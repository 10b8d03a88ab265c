// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "detector/features.hpp"

namespace rlab::eval {

inline constexpr std::size_t kCorrelationColumns = detector::kFeatureCount + 1;

/// Pearson coefficients over the four features and the label. Entries
/// involving a constant column are undefined (empty).
struct CorrelationMatrix {
    std::array<std::string_view, kCorrelationColumns> names{};
    std::array<std::array<std::optional<double>, kCorrelationColumns>, kCorrelationColumns> value{};

    std::optional<double> at(std::size_t i, std::size_t j) const { return value[i][j]; }
};

/// Empty when either column is constant or the columns differ in length.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

/// Uses all four features regardless of the dataset's mask.
CorrelationMatrix correlation_matrix(const detector::Dataset& dataset);

/// Header row of names, then one row per column; undefined entries are NA.
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& m);

}  // namespace rlab::eval
