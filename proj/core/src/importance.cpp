/*
 * Copyright 2026 the motune authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "motune/importance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "motune/nsga2.hpp"

namespace motune {

namespace {

constexpr std::size_t kMinRows = 20;
constexpr std::uint64_t kTreeStream = 0x7265657301ULL;

struct TreeInputs {
    const Eigen::MatrixXd& x; // canonical row order
    const Eigen::VectorXd& y;
    int max_depth;
    int min_leaf;
    int features_per_split;
};

/// Recursively grows one CART regression tree on `samples` (bootstrap
/// indices, may repeat) and accumulates weighted variance reduction per
/// feature. Only the importances are kept; the tree itself is discarded.
void grow_node(const TreeInputs& in, std::vector<std::size_t>& samples, int depth,
               Rng& rng, std::vector<double>& importance) {
    const auto n = static_cast<double>(samples.size());
    if (depth >= in.max_depth || samples.size() < 2 * static_cast<std::size_t>(in.min_leaf)) {
        return;
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t idx : samples) {
        const double v = in.y(static_cast<Eigen::Index>(idx));
        sum += v;
        sum_sq += v * v;
    }
    const double parent_sse = sum_sq - sum * sum / n;
    if (parent_sse <= 1e-12) {
        return;
    }

    // sqrt(D) candidate features, sampled without replacement.
    const auto d = static_cast<std::size_t>(in.x.cols());
    std::vector<std::size_t> features(d);
    std::iota(features.begin(), features.end(), 0);
    for (int pick = 0; pick < in.features_per_split; ++pick) {
        const auto j = static_cast<std::size_t>(
            rng.uniform_int(pick, static_cast<std::int64_t>(d) - 1));
        std::swap(features[static_cast<std::size_t>(pick)], features[j]);
    }
    features.resize(static_cast<std::size_t>(in.features_per_split));

    struct Best {
        double gain = 0.0;
        std::size_t feature = 0;
        double threshold = 0.0;
        bool found = false;
    } best;

    std::vector<std::pair<double, double>> column(samples.size()); // (x_feature, y)
    for (std::size_t feature : features) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            column[i] = {in.x(static_cast<Eigen::Index>(samples[i]), static_cast<Eigen::Index>(feature)),
                         in.y(static_cast<Eigen::Index>(samples[i]))};
        }
        std::sort(column.begin(), column.end());
        double left_sum = 0.0;
        double left_sq = 0.0;
        for (std::size_t i = 0; i + 1 < column.size(); ++i) {
            left_sum += column[i].second;
            left_sq += column[i].second * column[i].second;
            const auto left_n = static_cast<double>(i + 1);
            const auto right_n = n - left_n;
            if (i + 1 < static_cast<std::size_t>(in.min_leaf) ||
                right_n < static_cast<double>(in.min_leaf)) {
                continue;
            }
            if (column[i].first == column[i + 1].first) {
                continue; // no boundary between equal values
            }
            const double right_sum = sum - left_sum;
            const double right_sq = sum_sq - left_sq;
            const double sse = (left_sq - left_sum * left_sum / left_n) +
                               (right_sq - right_sum * right_sum / right_n);
            const double gain = parent_sse - sse;
            if (gain > best.gain) {
                best = {gain, feature, 0.5 * (column[i].first + column[i + 1].first), true};
            }
        }
    }
    if (!best.found) {
        return;
    }

    // Importance uses the variance decrease weighted by the node fraction.
    importance[best.feature] += best.gain / static_cast<double>(in.y.size());

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t idx : samples) {
        const double v = in.x(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(best.feature));
        (v <= best.threshold ? left : right).push_back(idx);
    }
    samples.clear();
    samples.shrink_to_fit();
    grow_node(in, left, depth + 1, rng, importance);
    grow_node(in, right, depth + 1, rng, importance);
}

std::vector<double> train_tree(const TreeInputs& in, Rng rng) {
    const auto n = static_cast<std::size_t>(in.y.size());
    std::vector<std::size_t> bootstrap(n);
    for (std::size_t i = 0; i < n; ++i) {
        bootstrap[i] = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    }
    std::vector<double> importance(static_cast<std::size_t>(in.x.cols()), 0.0);
    grow_node(in, bootstrap, 0, rng, importance);
    return importance;
}

/// Order rows by encoded configuration then objective so the bootstrap is
/// independent of how the dataset happened to be ordered.
std::vector<std::size_t> canonical_row_order(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    std::vector<std::size_t> order(static_cast<std::size_t>(x.rows()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const double va = x(static_cast<Eigen::Index>(a), j);
            const double vb = x(static_cast<Eigen::Index>(b), j);
            if (va != vb) {
                return va < vb;
            }
        }
        return y(static_cast<Eigen::Index>(a)) < y(static_cast<Eigen::Index>(b));
    });
    return order;
}

} // namespace

GiniImportance gini_importance(const ObservationDataset& ds, std::size_t objective,
                               const ForestConfig& config) {
    if (ds.size() < kMinRows) {
        throw std::invalid_argument("gini_importance: insufficient data (need >= " +
                                    std::to_string(kMinRows) + " rows, have " +
                                    std::to_string(ds.size()) + ")");
    }
    if (objective >= ds.objective_count()) {
        throw std::invalid_argument("gini_importance: objective index out of range");
    }
    if (config.trees < 1 || config.max_depth < 1 || config.min_samples_leaf < 1) {
        throw std::invalid_argument("gini_importance: invalid forest configuration");
    }

    const auto d = ds.space().dimension();
    auto [x_raw, y_all] = ds.training_matrices();
    const Eigen::VectorXd y_raw = y_all.col(static_cast<Eigen::Index>(objective));

    GiniImportance result;
    result.importance.assign(d, 1.0 / static_cast<double>(d));
    if (y_raw.maxCoeff() == y_raw.minCoeff()) {
        result.degenerate = true;
        return result;
    }

    const std::vector<std::size_t> order = canonical_row_order(x_raw, y_raw);
    Eigen::MatrixXd x(x_raw.rows(), x_raw.cols());
    Eigen::VectorXd y(y_raw.size());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        x.row(i) = x_raw.row(static_cast<Eigen::Index>(order[static_cast<std::size_t>(i)]));
        y(i) = y_raw(static_cast<Eigen::Index>(order[static_cast<std::size_t>(i)]));
    }

    const int features_per_split =
        std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(d)))));
    const TreeInputs inputs{x, y, config.max_depth, config.min_samples_leaf, features_per_split};

    // Per-tree rng substreams; totals are summed in tree order afterwards,
    // so thread scheduling cannot change the result.
    std::vector<std::vector<double>> per_tree(static_cast<std::size_t>(config.trees));
    const Rng base(config.seed);
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> futures;
    std::atomic<int> next_tree{0};
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&] {
            while (true) {
                const int t = next_tree.fetch_add(1);
                if (t >= config.trees) {
                    return;
                }
                per_tree[static_cast<std::size_t>(t)] =
                    train_tree(inputs, base.stream(kTreeStream, static_cast<std::uint64_t>(t)));
            }
        }));
    }
    for (auto& f : futures) {
        f.get();
    }

    std::vector<double> total(d, 0.0);
    for (const auto& tree : per_tree) {
        for (std::size_t j = 0; j < d; ++j) {
            total[j] += tree[j];
        }
    }
    const double sum = std::accumulate(total.begin(), total.end(), 0.0);
    if (sum <= 0.0) {
        result.degenerate = true; // forest never split; uniform fallback
        return result;
    }
    for (std::size_t j = 0; j < d; ++j) {
        result.importance[j] = total[j] / sum;
    }
    result.degenerate = false;
    return result;
}

ImportanceTable rank_importance(const ObservationDataset& ds, const ForestConfig& config) {
    const auto d = ds.space().dimension();
    const auto m = ds.objective_count();
    ImportanceTable table;
    table.objective_names = ds.objective_names();
    table.param_names.reserve(d);
    for (const ParameterSpec& spec : ds.space().params()) {
        table.param_names.push_back(spec.name);
    }
    table.gini.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(m));
    table.degenerate_objective.assign(m, false);
    for (std::size_t j = 0; j < m; ++j) {
        const GiniImportance gi = gini_importance(ds, j, config);
        table.degenerate_objective[j] = gi.degenerate;
        for (std::size_t i = 0; i < d; ++i) {
            table.gini(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gi.importance[i];
        }
    }
    return table;
}

std::vector<int> pareto_rank_parameters(const ImportanceTable& table) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(table.gini.rows()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].resize(static_cast<std::size_t>(table.gini.cols()));
        for (Eigen::Index j = 0; j < table.gini.cols(); ++j) {
            rows[i][static_cast<std::size_t>(j)] = table.gini(static_cast<Eigen::Index>(i), j);
        }
    }
    return fast_non_dominated_sort(rows, Sense::maximize);
}

std::vector<std::string> select_top(const ImportanceTable& table, const std::vector<int>& ranks,
                                    std::size_t top_count) {
    const std::size_t d = table.param_names.size();
    if (ranks.size() != d) {
        throw std::invalid_argument("select_top: ranks/table size mismatch");
    }
    if (top_count < 1 || top_count > d) {
        throw std::invalid_argument("select_top: need 1 <= d <= " + std::to_string(d));
    }
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    const auto max_gini = [&](std::size_t i) {
        return table.gini.row(static_cast<Eigen::Index>(i)).maxCoeff();
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ranks[a] != ranks[b]) {
            return ranks[a] < ranks[b];
        }
        const double ga = max_gini(a);
        const double gb = max_gini(b);
        if (ga != gb) {
            return ga > gb;
        }
        return table.param_names[a] < table.param_names[b];
    });
    std::vector<std::string> selected;
    selected.reserve(top_count);
    for (std::size_t i = 0; i < top_count; ++i) {
        selected.push_back(table.param_names[order[i]]);
    }
    return selected;
}

} // namespace motune
