// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace rlab::eval {

using nlohmann::ordered_json;

namespace {

ordered_json means_json(const MetricMeans& m) {
    return ordered_json{{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall},
                        {"f1", m.f1},             {"fpr", m.fpr},             {"fnr", m.fnr}};
}

ordered_json counts_json(const ConfusionCounts& c) {
    return ordered_json{{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
}

ordered_json metrics_json(const Metrics& m) {
    ordered_json degenerate = ordered_json::array();
    if (m.precision_degenerate) degenerate.push_back("precision");
    if (m.recall_degenerate) degenerate.push_back("recall");
    if (m.f1_degenerate) degenerate.push_back("f1");
    if (m.fpr_degenerate) degenerate.push_back("fpr");
    if (m.fnr_degenerate) degenerate.push_back("fnr");
    return ordered_json{{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
                        {"fpr", m.fpr},           {"fnr", m.fnr},             {"degenerate", degenerate}};
}

std::string fixed(double v, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Series {
    const char* name;
    const char* color;
    double MetricMeans::*field;
};

void bar_chart(std::ostream& out, const std::string& title, const MetricsReport& report,
               const detector::FeatureMask& mask, const std::vector<Series>& series) {
    std::vector<const ModelResult*> rows;
    for (const auto& r : report.results) {
        if (r.mask == mask) rows.push_back(&r);
    }
    const int bar = 26;
    const int gap = 30;
    const int left = 60;
    const int top = 50;
    const int plot_h = 260;
    const int group_w = int(series.size()) * bar + gap;
    const int width = left + std::max<int>(1, int(rows.size())) * group_w + 150;
    const int height = top + plot_h + 60;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";
    for (int t = 0; t <= 5; ++t) {
        const double v = t / 5.0;
        const int y = top + plot_h - int(std::lround(v * plot_h));
        out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << width - 140 << "\" y2=\"" << y
            << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << fixed(v, 1)
            << "</text>\n";
    }
    for (std::size_t g = 0; g < rows.size(); ++g) {
        const int x0 = left + int(g) * group_w + gap / 2;
        for (std::size_t s = 0; s < series.size(); ++s) {
            const double v = rows[g]->mean.*series[s].field;
            const int h = int(std::lround(v * plot_h));
            const int x = x0 + int(s) * bar;
            out << "<rect x=\"" << x << "\" y=\"" << top + plot_h - h << "\" width=\"" << bar - 4 << "\" height=\""
                << h << "\" fill=\"" << series[s].color << "\"/>\n";
            out << "<text x=\"" << x + (bar - 4) / 2 << "\" y=\"" << top + plot_h - h - 3
                << "\" text-anchor=\"middle\" font-size=\"9\">" << fixed(v, 3) << "</text>\n";
        }
        out << "<text x=\"" << x0 + int(series.size()) * bar / 2 << "\" y=\"" << top + plot_h + 18
            << "\" text-anchor=\"middle\">" << escape(rows[g]->model) << "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const int y = top + 10 + int(s) * 18;
        out << "<rect x=\"" << width - 130 << "\" y=\"" << y - 9 << "\" width=\"12\" height=\"12\" fill=\""
            << series[s].color << "\"/>\n";
        out << "<text x=\"" << width - 112 << "\" y=\"" << y + 1 << "\">" << series[s].name << "</text>\n";
    }
    out << "</svg>\n";
}

std::string heat_color(double v) {
    // -1 blue, 0 white, +1 red
    const double t = std::clamp(v, -1.0, 1.0);
    int r = 255;
    int g = 255;
    int b = 255;
    if (t >= 0) {
        g = b = int(std::lround(255 * (1 - t)));
    } else {
        r = g = int(std::lround(255 * (1 + t)));
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

std::string report_json(const MetricsReport& report, int indent) {
    ordered_json j;
    j["config"] = {{"base_seed", report.config.base_seed},
                   {"folds", report.config.folds},
                   {"repetitions", report.config.repetitions}};
    j["dataset"] = {{"samples", report.samples},
                    {"harmful", report.harmful},
                    {"benign", report.samples - report.harmful}};
    ordered_json results = ordered_json::array();
    for (const auto& r : report.results) {
        ordered_json features = ordered_json::array();
        for (const auto i : r.mask.indices()) features.push_back(detector::kFeatureNames[i]);
        ordered_json reps = ordered_json::array();
        for (std::size_t k = 0; k < r.repetition_means.size(); ++k) {
            reps.push_back({{"repetition", k},
                            {"fold_mean", means_json(r.repetition_means[k])},
                            {"pooled_counts", counts_json(r.repetition_counts[k])},
                            {"pooled", metrics_json(compute_metrics(r.repetition_counts[k]))}});
        }
        ordered_json folds = ordered_json::array();
        for (const auto& f : r.folds) {
            ordered_json row = {{"repetition", f.repetition}, {"fold", f.fold}};
            row.update(counts_json(f.counts));
            folds.push_back(row);
        }
        results.push_back({{"model", r.model},
                           {"mask", r.mask.name()},
                           {"features", features},
                           {"mean", means_json(r.mean)},
                           {"repetitions", reps},
                           {"folds", folds}});
    }
    j["results"] = results;
    return j.dump(indent) + "\n";
}

void write_metrics_csv(std::ostream& out, const MetricsReport& report) {
    out << "model,mask,scope,accuracy,precision,recall,f1,fpr,fnr\n";
    auto row = [&](const ModelResult& r, const std::string& scope, const MetricMeans& m) {
        out << r.model << ',' << r.mask.name() << ',' << scope << ',' << fixed(m.accuracy) << ',' << fixed(m.precision)
            << ',' << fixed(m.recall) << ',' << fixed(m.f1) << ',' << fixed(m.fpr) << ',' << fixed(m.fnr) << '\n';
    };
    for (const auto& r : report.results) {
        row(r, "mean", r.mean);
        for (std::size_t k = 0; k < r.repetition_means.size(); ++k) row(r, "rep" + std::to_string(k), r.repetition_means[k]);
    }
}

void write_quality_chart_svg(std::ostream& out, const MetricsReport& report, const detector::FeatureMask& mask) {
    bar_chart(out, "Average accuracy, F1 score and recall (" + mask.name() + ")", report, mask,
              {{"accuracy", "#4c72b0", &MetricMeans::accuracy},
               {"f1", "#55a868", &MetricMeans::f1},
               {"recall", "#c44e52", &MetricMeans::recall}});
}

void write_error_chart_svg(std::ostream& out, const MetricsReport& report, const detector::FeatureMask& mask) {
    bar_chart(out, "Average false positive and false negative rate (" + mask.name() + ")", report, mask,
              {{"fpr", "#dd8452", &MetricMeans::fpr}, {"fnr", "#8172b3", &MetricMeans::fnr}});
}

void write_heatmap_svg(std::ostream& out, const CorrelationMatrix& m) {
    const int cell = 80;
    const int left = 120;
    const int top = 50;
    const int n = int(kCorrelationColumns);
    const int width = left + n * cell + 20;
    const int height = top + n * cell + 110;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">Feature correlation</text>\n";
    for (int i = 0; i < n; ++i) {
        out << "<text x=\"" << left - 6 << "\" y=\"" << top + i * cell + cell / 2 + 4 << "\" text-anchor=\"end\">"
            << m.names[i] << "</text>\n";
        const int cx = left + i * cell + cell / 2;
        const int cy = top + n * cell + 10;
        out << "<text x=\"" << cx << "\" y=\"" << cy << "\" text-anchor=\"end\" transform=\"rotate(-45 " << cx << ' '
            << cy << ")\">" << m.names[i] << "</text>\n";
        for (int j = 0; j < n; ++j) {
            const auto v = m.value[i][j];
            const int x = left + j * cell;
            const int y = top + i * cell;
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"" << (v ? heat_color(*v) : std::string("#cccccc")) << "\" stroke=\"white\"/>\n";
            out << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"middle\">"
                << (v ? fixed(*v, 2) : std::string("NA")) << "</text>\n";
        }
    }
    out << "</svg>\n";
}

}  // namespace rlab::eval
