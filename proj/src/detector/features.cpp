// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "detector/features.hpp"

#include <set>

#include "common/error.hpp"

namespace rlab::detector {

FeatureVector extract_features(const monitor::Observation& obs) {
    return FeatureVector{
        static_cast<double>(obs.gas_used),
        static_cast<double>(obs.bal_diff_c1()),
        static_cast<double>(obs.bal_diff_c2()),
        monitor::avg_call_stack_depth(obs.trace),
    };
}

FeatureMask FeatureMask::without(Feature f) const {
    FeatureMask m = *this;
    m.bits_.reset(static_cast<std::size_t>(f));
    return m;
}

std::vector<std::size_t> FeatureMask::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (bits_.test(i)) out.push_back(i);
    }
    return out;
}

std::string FeatureMask::name() const {
    if (bits_.all()) return "all";
    std::string out = "no";
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (!bits_.test(i)) out += "-" + std::string(kFeatureNames[i]);
    }
    return out;
}

Matrix Matrix::select(std::span<const std::size_t> index) const {
    Matrix out(index.size(), cols);
    for (std::size_t r = 0; r < index.size(); ++r) {
        const auto src = row(index[r]);
        std::copy(src.begin(), src.end(), out.data.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    return out;
}

std::size_t Dataset::count(int label) const {
    std::size_t n = 0;
    for (const auto& s : samples) n += s.label == label;
    return n;
}

std::vector<double> Dataset::masked(const FeatureVector& x) const {
    const auto all = x.values();
    std::vector<double> out;
    for (const auto i : mask.indices()) out.push_back(all[i]);
    return out;
}

Matrix Dataset::features() const {
    const auto idx = mask.indices();
    Matrix m(samples.size(), idx.size());
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const auto all = samples[r].x.values();
        for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = all[idx[c]];
    }
    return m;
}

std::vector<int> Dataset::labels() const {
    std::vector<int> y;
    y.reserve(samples.size());
    for (const auto& s : samples) y.push_back(s.label);
    return y;
}

void Dataset::validate() const {
    std::set<std::string> seen;
    for (const auto& s : samples) {
        if (s.label != 0 && s.label != 1) {
            throw Error(ErrorCode::kMalformedInput, "label must be 0 or 1 for " + s.tx_id);
        }
        if (!seen.insert(s.tx_id).second) throw Error(ErrorCode::kMalformedInput, "duplicated tx_id " + s.tx_id);
    }
}

}  // namespace rlab::detector
