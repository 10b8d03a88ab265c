// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>

#include "eval/correlation.hpp"
#include "eval/experiment.hpp"

namespace rlab::eval {

/// Structured report: configuration, dataset shape, and per model and mask
/// the metric means, per-repetition breakdown and per-fold counts.
std::string report_json(const MetricsReport& report, int indent = 2);

/// `model,mask,scope,accuracy,precision,recall,f1,fpr,fnr`; scope is
/// `mean` or `rep<N>`.
void write_metrics_csv(std::ostream& out, const MetricsReport& report);

/// Grouped bar chart of accuracy, F1 and recall per model for one mask.
void write_quality_chart_svg(std::ostream& out, const MetricsReport& report, const detector::FeatureMask& mask);
/// Grouped bar chart of FPR and FNR per model for one mask.
void write_error_chart_svg(std::ostream& out, const MetricsReport& report, const detector::FeatureMask& mask);
void write_heatmap_svg(std::ostream& out, const CorrelationMatrix& m);

}  // namespace rlab::eval
