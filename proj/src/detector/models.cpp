// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "detector/models.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "common/error.hpp"

namespace rlab::detector {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sigmoid(double s) {
    if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

double softplus(double s) { return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double poly_kernel(std::span<const double> a, std::span<const double> b, double gamma, double coef0, int degree) {
    return std::pow(gamma * dot(a, b) + coef0, degree);
}

ForestModel fit_forest(const ModelSpec& spec, const Matrix& x, std::span<const int> y) {
    const std::size_t subsample =
        spec.max_features ? spec.max_features : static_cast<std::size_t>(std::floor(std::sqrt(double(x.cols))));
    ForestModel m;
    m.trees.reserve(spec.n_trees);
    for (std::size_t t = 0; t < spec.n_trees; ++t) {
        Rng rng = forest_tree_rng(spec.seed, t);
        const auto sample = bootstrap_indices(rng, x.rows);
        m.trees.push_back(fit_decision_tree(x, y, sample, rng, subsample));
    }
    return m;
}

NaiveBayesModel fit_naive_bayes(const ModelSpec& spec, const Matrix& x, std::span<const int> y) {
    const std::size_t d = x.cols;
    double max_var = 0;
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0;
        for (std::size_t i = 0; i < x.rows; ++i) mean += x(i, j);
        mean /= double(x.rows);
        double ss = 0;
        for (std::size_t i = 0; i < x.rows; ++i) ss += (x(i, j) - mean) * (x(i, j) - mean);
        max_var = std::max(max_var, ss / double(x.rows));
    }
    double epsilon = spec.var_smoothing * max_var;
    if (!(epsilon > 0)) epsilon = spec.var_smoothing;  // every feature constant

    NaiveBayesModel m;
    for (int c = 0; c < 2; ++c) {
        std::size_t n = 0;
        m.mean[c].assign(d, 0.0);
        m.var[c].assign(d, 0.0);
        for (std::size_t i = 0; i < x.rows; ++i) {
            if (y[i] != c) continue;
            ++n;
            for (std::size_t j = 0; j < d; ++j) m.mean[c][j] += x(i, j);
        }
        for (auto& v : m.mean[c]) v /= double(n);
        for (std::size_t i = 0; i < x.rows; ++i) {
            if (y[i] != c) continue;
            for (std::size_t j = 0; j < d; ++j) m.var[c][j] += (x(i, j) - m.mean[c][j]) * (x(i, j) - m.mean[c][j]);
        }
        for (auto& v : m.var[c]) v = v / double(n) + epsilon;
        m.log_prior[c] = std::log(double(n) / double(x.rows));
    }
    return m;
}

LogisticModel fit_logistic(const ModelSpec& spec, const Matrix& z, std::span<const int> y) {
    std::vector<double> theta(z.cols + 1, 0.0);
    LogisticModel m;
    double loss = logistic_loss(theta, z, y);
    m.loss_history.push_back(loss);
    for (std::size_t it = 0; it < spec.max_iterations; ++it) {
        const auto grad = logistic_gradient(theta, z, y);
        for (std::size_t j = 0; j < theta.size(); ++j) theta[j] -= spec.learning_rate * grad[j];
        const double next = logistic_loss(theta, z, y);
        m.loss_history.push_back(next);
        const bool converged = std::abs(loss - next) < spec.tolerance;
        loss = next;
        if (converged) break;
    }
    m.b = theta.back();
    theta.pop_back();
    m.w = std::move(theta);
    return m;
}

LinearSvmModel fit_linear_svm(const ModelSpec& spec, const Matrix& z, std::span<const int> y) {
    // Pegasos on the hinge loss with lambda = 1 / (C n); the constant input
    // appended to every row plays the role of the bias
    const std::size_t n = z.rows;
    const std::size_t d = z.cols + 1;
    const double lambda = 1.0 / (spec.c * double(n));
    const double radius = 1.0 / std::sqrt(lambda);

    std::vector<double> w(d, 0.0);
    std::vector<double> row(d, 1.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = Rng(spec.seed).child("pegasos");
    std::uint64_t t = 0;
    for (std::size_t epoch = 0; epoch < spec.epochs; ++epoch) {
        rng.shuffle(std::span(order));
        for (const auto i : order) {
            ++t;
            const auto src = z.row(i);
            std::copy(src.begin(), src.end(), row.begin());
            const double yi = y[i] == 1 ? 1.0 : -1.0;
            const double eta = 1.0 / (lambda * double(t));
            const bool violated = yi * dot(w, row) < 1.0;
            for (auto& v : w) v *= 1.0 - eta * lambda;
            if (violated) {
                for (std::size_t j = 0; j < d; ++j) w[j] += eta * yi * row[j];
            }
            const double norm = std::sqrt(dot(w, w));
            if (norm > radius) {
                for (auto& v : w) v *= radius / norm;
            }
        }
    }
    return LinearSvmModel{std::move(w)};
}

KernelSvmModel fit_kernel_svm(const ModelSpec& spec, const Matrix& z, std::span<const int> y) {
    const std::size_t n = z.rows;
    const double gamma = spec.gamma > 0 ? spec.gamma : 1.0 / double(z.cols);
    const double lambda = 1.0 / (spec.c * double(n));

    std::vector<double> gram(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            gram[i * n + j] = gram[j * n + i] = poly_kernel(z.row(i), z.row(j), gamma, spec.coef0, spec.degree);
        }
    }

    std::vector<double> alpha(n, 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = Rng(spec.seed).child("kernel-pegasos");
    std::uint64_t t = 0;
    for (std::size_t epoch = 0; epoch < spec.epochs; ++epoch) {
        rng.shuffle(std::span(order));
        for (const auto i : order) {
            ++t;
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (alpha[j] != 0) s += alpha[j] * (y[j] == 1 ? 1.0 : -1.0) * gram[j * n + i];
            }
            const double yi = y[i] == 1 ? 1.0 : -1.0;
            if (yi * s / (lambda * double(t)) < 1.0) alpha[i] += 1.0;
        }
    }

    KernelSvmModel m;
    m.gamma = gamma;
    m.support = z;
    m.coef.resize(n);
    for (std::size_t j = 0; j < n; ++j) m.coef[j] = alpha[j] * (y[j] == 1 ? 1.0 : -1.0) / (lambda * double(t));
    return m;
}

std::vector<double> prepared(const TrainedModel& model, std::span<const double> row) {
    if (row.size() != model.dimension) {
        throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(model.dimension) + " features, got " +
                                                       std::to_string(row.size()));
    }
    if (model.scaler) return model.scaler->transform(row);
    return {row.begin(), row.end()};
}

std::array<double, 2> nb_log_joint(const NaiveBayesModel& m, std::span<const double> x) {
    std::array<double, 2> out{};
    for (int c = 0; c < 2; ++c) {
        double s = m.log_prior[c];
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double diff = x[j] - m.mean[c][j];
            s -= 0.5 * (std::log(2 * std::numbers::pi * m.var[c][j]) + diff * diff / m.var[c][j]);
        }
        out[c] = s;
    }
    return out;
}

std::vector<std::size_t> nearest(const KnnModel& m, std::size_t k, std::span<const double> z) {
    std::vector<std::pair<double, std::size_t>> dist(m.x.rows);
    for (std::size_t i = 0; i < m.x.rows; ++i) {
        double s = 0;
        const auto r = m.x.row(i);
        for (std::size_t j = 0; j < z.size(); ++j) s += (r[j] - z[j]) * (r[j] - z[j]);
        dist[i] = {s, i};
    }
    k = std::min(k, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = dist[i].second;
    return out;
}

const std::vector<const char*>& kind_names() {
    static const std::vector<const char*> names = {"rf", "nb", "lr", "knn", "svm", "svm-poly"};
    return names;
}

}  // namespace

std::string_view model_name(ModelKind kind) noexcept { return kind_names()[static_cast<std::size_t>(kind)]; }

std::optional<ModelKind> parse_model_kind(std::string_view name) {
    const auto& names = kind_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (name == names[i]) return static_cast<ModelKind>(i);
    }
    return std::nullopt;
}

Rng forest_tree_rng(std::uint64_t seed, std::size_t t) { return Rng(seed).child("forest").child(std::uint64_t{t}); }

std::vector<std::size_t> bootstrap_indices(Rng& rng, std::size_t n) {
    std::vector<std::size_t> out(n);
    for (auto& i : out) i = static_cast<std::size_t>(rng.uniform(n));
    return out;
}

double logistic_loss(std::span<const double> theta, const Matrix& z, std::span<const int> y) {
    const std::size_t d = z.cols;
    double total = 0;
    for (std::size_t i = 0; i < z.rows; ++i) {
        const double s = dot(theta.first(d), z.row(i)) + theta[d];
        total += softplus(s) - (y[i] == 1 ? s : 0.0);
    }
    return total / double(z.rows);
}

std::vector<double> logistic_gradient(std::span<const double> theta, const Matrix& z, std::span<const int> y) {
    const std::size_t d = z.cols;
    std::vector<double> g(d + 1, 0.0);
    for (std::size_t i = 0; i < z.rows; ++i) {
        const auto r = z.row(i);
        const double err = sigmoid(dot(theta.first(d), r) + theta[d]) - (y[i] == 1 ? 1.0 : 0.0);
        for (std::size_t j = 0; j < d; ++j) g[j] += err * r[j];
        g[d] += err;
    }
    for (auto& v : g) v /= double(z.rows);
    return g;
}

TrainedModel fit(const ModelSpec& spec, const Matrix& x, std::span<const int> y) {
    if (x.rows == 0 || x.cols == 0 || x.rows != y.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "training matrix is empty or does not match the labels");
    }
    std::size_t positives = 0;
    for (const int label : y) {
        if (label != 0 && label != 1) throw Error(ErrorCode::kMalformedInput, "labels must be 0 or 1");
        positives += label == 1;
    }
    if (positives == 0 || positives == y.size()) {
        throw Error(ErrorCode::kDegenerateTraining, "training set holds a single class");
    }

    TrainedModel model;
    model.spec = spec;
    model.dimension = x.cols;
    switch (spec.kind) {
        case ModelKind::kRandomForest:
            model.params = fit_forest(spec, x, y);
            break;
        case ModelKind::kGaussianNB:
            model.params = fit_naive_bayes(spec, x, y);
            break;
        case ModelKind::kLogisticRegression:
        case ModelKind::kKnn:
        case ModelKind::kSvmLinear:
        case ModelKind::kSvmPoly: {
            model.scaler = Scaler::fit(x);
            const Matrix z = model.scaler->transform(x);
            if (spec.kind == ModelKind::kLogisticRegression) {
                model.params = fit_logistic(spec, z, y);
            } else if (spec.kind == ModelKind::kKnn) {
                model.params = KnnModel{z, std::vector<int>(y.begin(), y.end())};
            } else if (spec.kind == ModelKind::kSvmLinear) {
                model.params = fit_linear_svm(spec, z, y);
            } else {
                model.params = fit_kernel_svm(spec, z, y);
            }
            break;
        }
    }
    return model;
}

TrainedModel fit(const ModelSpec& spec, const Dataset& train) {
    const auto y = train.labels();
    return fit(spec, train.features(), y);
}

double decision_score(const TrainedModel& model, std::span<const double> row) {
    const auto z = prepared(model, row);
    return std::visit(
        Overloaded{
            [&](const ForestModel& m) {
                std::size_t ones = 0;
                for (const auto& t : m.trees) ones += t.predict(z) == 1;
                return double(ones) / double(m.trees.size());
            },
            [&](const NaiveBayesModel&) { return nb_posteriors(model, row)[1]; },
            [&](const LogisticModel& m) {
                // kept inside the open unit interval even where the sigmoid
                // rounds to 0 or 1
                const double p = sigmoid(dot(m.w, z) + m.b);
                return std::clamp(p, DBL_MIN, 1.0 - DBL_EPSILON / 2);
            },
            [&](const KnnModel& m) {
                const auto nn = nearest(m, model.spec.k, z);
                std::size_t ones = 0;
                for (const auto i : nn) ones += m.y[i] == 1;
                return double(ones) / double(nn.size());
            },
            [&](const LinearSvmModel& m) {
                double s = m.w.back();
                for (std::size_t j = 0; j < z.size(); ++j) s += m.w[j] * z[j];
                return s;
            },
            [&](const KernelSvmModel& m) {
                double s = 0;
                for (std::size_t j = 0; j < m.coef.size(); ++j) {
                    if (m.coef[j] != 0) {
                        s += m.coef[j] * poly_kernel(m.support.row(j), z, m.gamma, model.spec.coef0, model.spec.degree);
                    }
                }
                return s;
            },
        },
        model.params);
}

int predict(const TrainedModel& model, std::span<const double> row) {
    const double s = decision_score(model, row);
    switch (model.spec.kind) {
        case ModelKind::kSvmLinear:
        case ModelKind::kSvmPoly:
            return s > 0 ? 1 : 0;
        default:
            // forest vote ties and even posteriors resolve to benign
            return s > 0.5 ? 1 : 0;
    }
}

std::vector<int> tree_votes(const TrainedModel& model, std::span<const double> row) {
    const auto* forest = std::get_if<ForestModel>(&model.params);
    if (!forest) throw Error(ErrorCode::kInvalidArgument, "tree votes of a model that is not a forest");
    const auto z = prepared(model, row);
    std::vector<int> votes;
    votes.reserve(forest->trees.size());
    for (const auto& t : forest->trees) votes.push_back(t.predict(z));
    return votes;
}

std::array<double, 2> nb_posteriors(const TrainedModel& model, std::span<const double> row) {
    const auto* nb = std::get_if<NaiveBayesModel>(&model.params);
    if (!nb) throw Error(ErrorCode::kInvalidArgument, "posteriors of a model that is not naive Bayes");
    const auto z = prepared(model, row);
    const auto lj = nb_log_joint(*nb, z);
    const double top = std::max(lj[0], lj[1]);
    const double lse = top + std::log(std::exp(lj[0] - top) + std::exp(lj[1] - top));
    return {std::exp(lj[0] - lse), std::exp(lj[1] - lse)};
}

std::vector<std::size_t> knn_neighbors(const TrainedModel& model, std::span<const double> row) {
    const auto* knn = std::get_if<KnnModel>(&model.params);
    if (!knn) throw Error(ErrorCode::kInvalidArgument, "neighbours of a model that is not k-NN");
    return nearest(*knn, model.spec.k, prepared(model, row));
}

std::string dump(const TrainedModel& model) {
    std::ostringstream out;
    out.precision(17);
    auto list = [&](const char* key, const std::vector<double>& v) {
        out << key;
        for (const double x : v) out << ' ' << x;
        out << '\n';
    };
    out << "model " << model_name(model.spec.kind) << "\nseed " << model.spec.seed << "\ndimension "
        << model.dimension << '\n';
    if (model.scaler) {
        list("scaler.mean", model.scaler->mean);
        list("scaler.scale", model.scaler->scale);
    }
    std::visit(Overloaded{
                   [&](const ForestModel& m) {
                       out << "trees " << m.trees.size() << '\n';
                       for (std::size_t t = 0; t < m.trees.size(); ++t) {
                           out << "tree " << t << " nodes " << m.trees[t].nodes.size() << '\n';
                           for (const auto& n : m.trees[t].nodes) {
                               if (n.is_leaf()) {
                                   out << "  leaf " << n.n0 << ' ' << n.n1 << '\n';
                               } else {
                                   out << "  split x" << n.feature << " <= " << n.threshold << " -> " << n.left << ' '
                                       << n.right << '\n';
                               }
                           }
                       }
                   },
                   [&](const NaiveBayesModel& m) {
                       for (int c = 0; c < 2; ++c) {
                           out << "class " << c << " log_prior " << m.log_prior[c] << '\n';
                           list("  mean", m.mean[c]);
                           list("  var", m.var[c]);
                       }
                   },
                   [&](const LogisticModel& m) {
                       list("weights", m.w);
                       out << "bias " << m.b << "\niterations " << m.loss_history.size() - 1 << "\nfinal_loss "
                           << m.loss_history.back() << '\n';
                   },
                   [&](const KnnModel& m) { out << "k " << model.spec.k << "\ntraining_rows " << m.x.rows << '\n'; },
                   [&](const LinearSvmModel& m) { list("weights+bias", m.w); },
                   [&](const KernelSvmModel& m) {
                       out << "gamma " << m.gamma << "\ncoef0 " << model.spec.coef0 << "\ndegree " << model.spec.degree
                           << '\n';
                       list("dual_coef", m.coef);
                   },
               },
               model.params);
    return out.str();
}

}  // namespace rlab::detector
