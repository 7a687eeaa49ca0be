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

#ifndef MOTUNE_TUNER_HPP
#define MOTUNE_TUNER_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "motune/dataset.hpp"
#include "motune/evaluator.hpp"
#include "motune/gp.hpp"
#include "motune/nsga2.hpp"
#include "motune/pareto.hpp"

namespace motune {

enum class Algorithm { adumbo, usemo, random_search, bo_single };

std::string algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

/// How the mean product of the selection metric treats minimized
/// objectives: verbatim multiplies the normalized means as written;
/// negated flips them so smaller predicted objectives score higher.
enum class AduMeanDirection { verbatim, negated };

struct TunerConfig {
    Algorithm algorithm = Algorithm::adumbo;
    int max_iterations = 70; // total evaluation budget
    int init_samples = 10;   // random initialization draws
    std::uint64_t seed = 0;
    double delta = 0.1;
    Nsga2Config inner;       // the cheap acquisition-space solver
    AduMeanDirection adu_mean_direction = AduMeanDirection::verbatim;
    int bo_objective_index = 0;      // bo_single only
    double dedup_epsilon = 1e-9;     // unit-cube L-inf against evaluated configs
    KernelFamily kernel = KernelFamily::matern52;
    int cardinality_resolution = 100;
    bool parallel_fits = true;
};

/// Per-iteration candidate bookkeeping for the model-based algorithms.
struct IterationRecord {
    std::vector<double> candidate_scores; // metric of each non-skipped candidate
    double chosen_score = std::numeric_limits<double>::quiet_NaN();
    bool random_fallback = false; // every candidate was a duplicate
};

struct TunerResult {
    ObservationDataset dataset;
    ParetoArchive archive;                   // Pareto filter of the dataset
    std::vector<double> hv_trace;            // prefix HV, final-bounds normalized
    std::vector<double> chosen_metric_trace; // NaN on fallback iterations
    std::vector<IterationRecord> iterations;
    int random_fallbacks = 0;
};

/// Thrown when the evaluator fails permanently; rows already emitted
/// through the sink remain persisted.
struct TunerAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Selection metric sqrt(beta) * prod(mu_hat) + prod(sigma_hat) over all
/// surrogate predictions, computed on bounds-normalized values:
/// mu_hat = clamp((mu - min) / (max - min), 1e-6, 2),
/// sigma_hat = sigma / (max - min). Degenerate bounds give mu_hat = 0.5 and
/// leave sigma unscaled. The negated direction replaces mu_hat with
/// (1 + 1e-6 - mu_hat) clamped to >= 1e-6.
double compute_adu(std::span<const double> means, std::span<const double> stddevs, double beta,
                   std::span<const std::pair<double, double>> bounds,
                   AduMeanDirection direction);

/// Uncertainty-volume metric prod(sqrt(beta) * sigma_hat) on the same
/// normalized scale.
double compute_usemo_u(std::span<const double> stddevs, double beta,
                       std::span<const std::pair<double, double>> bounds);

using ObservationSink = std::function<void(const Observation&)>;

/// Runs the configured tuning loop until exactly max_iterations evaluations
/// exist (counting any rows supplied via `resume`, which must share the
/// space). Every appended row is forwarded to `sink` before the loop
/// continues, so interrupted runs lose at most the in-flight evaluation.
/// Fully deterministic given the seed and a deterministic evaluator;
/// randomness is keyed to row/iteration indices, so a resumed run continues
/// the same stream.
TunerResult run_tuner(const ParameterSpace& space, const EvaluatorSpec& evaluator,
                      const TunerConfig& config, const ObservationSink& sink = {},
                      const ObservationDataset* resume = nullptr);

/// Prefix hypervolume curve: entry j is the HV of the Pareto filter of rows
/// 0..j after min-max normalization with the FULL dataset's bounds, against
/// `reference` (default 1.2 per objective). Exact sweep for two objectives,
/// Monte Carlo otherwise. Nondecreasing in j.
std::vector<double> hv_trace(const ObservationDataset& ds, std::vector<double> reference = {},
                             int mc_samples = 100000, std::uint64_t mc_seed = 0);

} // namespace motune

#endif
