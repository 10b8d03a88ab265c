// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "detector/tree.hpp"

namespace rlab::detector {

enum class ModelKind { kRandomForest, kGaussianNB, kLogisticRegression, kKnn, kSvmLinear, kSvmPoly };

/// Short names used on the command line and in reports: rf, nb, lr, knn,
/// svm, svm-poly.
std::string_view model_name(ModelKind kind) noexcept;
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct ModelSpec {
    ModelKind kind = ModelKind::kRandomForest;
    std::uint64_t seed = 0;

    // random forest
    std::size_t n_trees = 100;
    std::size_t max_features = 0;  // 0: floor(sqrt(d))
    // naive Bayes
    double var_smoothing = 1e-9;
    // logistic regression
    double learning_rate = 0.1;
    std::size_t max_iterations = 5000;
    double tolerance = 1e-6;
    // k-NN
    std::size_t k = 5;
    // SVM
    double c = 1.0;
    std::size_t epochs = 200;
    int degree = 3;
    double coef0 = 1.0;
    double gamma = 0;  // 0: 1 / d

    static ModelSpec of(ModelKind kind, std::uint64_t seed = 0) {
        ModelSpec s;
        s.kind = kind;
        s.seed = seed;
        return s;
    }
};

struct ForestModel {
    std::vector<Tree> trees;
};

struct NaiveBayesModel {
    std::array<double, 2> log_prior{};
    std::array<std::vector<double>, 2> mean;
    std::array<std::vector<double>, 2> var;
};

struct LogisticModel {
    std::vector<double> w;
    double b = 0;
    std::vector<double> loss_history;  // loss before each update, then the final loss
};

struct KnnModel {
    Matrix x;  // standardized training rows
    std::vector<int> y;
};

struct LinearSvmModel {
    std::vector<double> w;  // last entry multiplies the constant bias input
};

struct KernelSvmModel {
    Matrix support;            // standardized training rows
    std::vector<double> coef;  // alpha_i * y_i / (lambda * T)
    double gamma = 0;
};

using ModelParams =
    std::variant<ForestModel, NaiveBayesModel, LogisticModel, KnnModel, LinearSvmModel, KernelSvmModel>;

struct TrainedModel {
    ModelSpec spec;
    std::size_t dimension = 0;
    std::optional<Scaler> scaler;  // LR, k-NN and SVM
    ModelParams params;
};

/// Throws kDegenerateTraining when `y` holds a single class, and
/// kDimensionMismatch when x and y disagree or x is empty.
TrainedModel fit(const ModelSpec& spec, const Matrix& x, std::span<const int> y);
TrainedModel fit(const ModelSpec& spec, const Dataset& train);

/// Throws kDimensionMismatch when `row` does not match the training width.
int predict(const TrainedModel& model, std::span<const double> row);

/// P(harmful) for LR and NB, the signed margin for SVMs, the harmful vote
/// share for RF and k-NN. predict() thresholds it at 0.5 (margins at 0).
double decision_score(const TrainedModel& model, std::span<const double> row);

/// Votes of every tree of a forest, in tree order.
std::vector<int> tree_votes(const TrainedModel& model, std::span<const double> row);

/// Normalized naive Bayes class posteriors {P(0|x), P(1|x)}.
std::array<double, 2> nb_posteriors(const TrainedModel& model, std::span<const double> row);

/// Training rows of the k nearest neighbours (standardized squared
/// Euclidean distance, ties to the lower index).
std::vector<std::size_t> knn_neighbors(const TrainedModel& model, std::span<const double> row);

/// Mean cross-entropy of a logistic model with parameters `theta` = (w, b)
/// on standardized inputs `z`, and its gradient.
double logistic_loss(std::span<const double> theta, const Matrix& z, std::span<const int> y);
std::vector<double> logistic_gradient(std::span<const double> theta, const Matrix& z, std::span<const int> y);

/// Bootstrap resample of n rows as drawn by the forest for one tree.
std::vector<std::size_t> bootstrap_indices(Rng& rng, std::size_t n);

/// The generator each forest tree t uses, for bootstrap and splits.
Rng forest_tree_rng(std::uint64_t seed, std::size_t t);

/// Human-readable parameter listing.
std::string dump(const TrainedModel& model);

}  // namespace rlab::detector
