// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eval/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rlab::eval {

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != n) return std::nullopt;
    double ma = 0;
    double mb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= double(n);
    mb /= double(n);
    double sab = 0;
    double saa = 0;
    double sbb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (!(saa > 0) || !(sbb > 0)) return std::nullopt;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const detector::Dataset& dataset) {
    CorrelationMatrix m;
    std::array<std::vector<double>, kCorrelationColumns> cols;
    for (const auto& s : dataset.samples) {
        const auto v = s.x.values();
        for (std::size_t j = 0; j < detector::kFeatureCount; ++j) cols[j].push_back(v[j]);
        cols[detector::kFeatureCount].push_back(s.label);
    }
    for (std::size_t j = 0; j < detector::kFeatureCount; ++j) m.names[j] = detector::kFeatureNames[j];
    m.names[detector::kFeatureCount] = "label";

    for (std::size_t i = 0; i < kCorrelationColumns; ++i) {
        for (std::size_t j = i; j < kCorrelationColumns; ++j) {
            auto r = pearson(cols[i], cols[j]);
            if (i == j && r) r = 1.0;
            m.value[i][j] = m.value[j][i] = r;
        }
    }
    return m;
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& m) {
    char buf[32];
    for (const auto name : m.names) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < kCorrelationColumns; ++i) {
        out << m.names[i];
        for (std::size_t j = 0; j < kCorrelationColumns; ++j) {
            if (m.value[i][j]) {
                std::snprintf(buf, sizeof buf, "%.6f", *m.value[i][j]);
                out << ',' << buf;
            } else {
                out << ",NA";
            }
        }
        out << '\n';
    }
}

}  // namespace rlab::eval
