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

#ifndef MOTUNE_IMPORTANCE_HPP
#define MOTUNE_IMPORTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "motune/dataset.hpp"

namespace motune {

/// Random-forest regressor settings for the per-objective importances.
struct ForestConfig {
    int trees = 100;
    int max_depth = 8;
    int min_samples_leaf = 2;
    std::uint64_t seed = 0;
};

struct GiniImportance {
    std::vector<double> importance; // length D, non-negative, sums to 1
    bool degenerate = false;        // constant objective: uniform fallback
};

/// Per-parameter impurity (variance-reduction) importance for one objective.
/// Trains a random forest on (encoded configs -> objective) with bootstrap
/// sampling and sqrt(D) features per split; totals are averaged over trees
/// and normalized to sum 1. Deterministic given the seed and invariant to
/// row order (rows are canonicalized before training). Needs >= 20 rows.
GiniImportance gini_importance(const ObservationDataset& ds, std::size_t objective,
                               const ForestConfig& config = {});

/// Importances for every objective plus the per-column degenerate flags.
struct ImportanceTable {
    std::vector<std::string> param_names;
    std::vector<std::string> objective_names;
    Eigen::MatrixXd gini; // D x M, each column sums to 1
    std::vector<bool> degenerate_objective;
};

ImportanceTable rank_importance(const ObservationDataset& ds, const ForestConfig& config = {});

/// Pareto rank of each parameter: non-dominated sorting of the importance
/// rows with maximization sense (higher importance is better). 1-based.
std::vector<int> pareto_rank_parameters(const ImportanceTable& table);

/// Top-d parameter names: whole ranks in ascending order; when a rank must
/// be split, its members are ordered by max-over-objectives importance
/// descending, ties lexicographically by name. Output order is selection
/// order.
std::vector<std::string> select_top(const ImportanceTable& table, const std::vector<int>& ranks,
                                    std::size_t top_count);

} // namespace motune

#endif
