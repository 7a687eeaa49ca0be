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

#include "motune/tuner.hpp"

#include <algorithm>
#include <cmath>

#include "motune/acquisition.hpp"

namespace motune {

namespace {

// Substream ids; randomness is keyed to (stream, position) so resumed runs
// replay the identical sequence.
constexpr std::uint64_t kStreamSample = 1;   // per row index
constexpr std::uint64_t kStreamInner = 2;    // per BO iteration
constexpr std::uint64_t kStreamFallback = 3; // per BO iteration

constexpr double kMeanClampLo = 1e-6;
constexpr double kMeanClampHi = 2.0;

double linf_distance(std::span<const double> a, std::span<const double> b) {
    double dist = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dist = std::max(dist, std::abs(a[i] - b[i]));
    }
    return dist;
}

struct NormalizedPrediction {
    double mean_hat;
    double stddev_hat;
};

NormalizedPrediction normalize_prediction(double mean, double stddev,
                                          const std::pair<double, double>& bounds) {
    const double range = bounds.second - bounds.first;
    if (!(range > 0.0)) {
        return {0.5, stddev};
    }
    const double mean_hat = std::clamp((mean - bounds.first) / range, kMeanClampLo, kMeanClampHi);
    return {mean_hat, stddev / range};
}

} // namespace

std::string algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::adumbo:
        return "adumbo";
    case Algorithm::usemo:
        return "usemo";
    case Algorithm::random_search:
        return "random";
    case Algorithm::bo_single:
        return "bo-single";
    }
    throw std::invalid_argument("unknown algorithm");
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "adumbo") {
        return Algorithm::adumbo;
    }
    if (name == "usemo") {
        return Algorithm::usemo;
    }
    if (name == "random") {
        return Algorithm::random_search;
    }
    if (name == "bo-single") {
        return Algorithm::bo_single;
    }
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

double compute_adu(std::span<const double> means, std::span<const double> stddevs, double beta,
                   std::span<const std::pair<double, double>> bounds,
                   AduMeanDirection direction) {
    if (means.size() != stddevs.size() || means.size() != bounds.size() || means.empty()) {
        throw std::invalid_argument("compute_adu: inconsistent inputs");
    }
    double mean_product = 1.0;
    double stddev_product = 1.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        const NormalizedPrediction np = normalize_prediction(means[i], stddevs[i], bounds[i]);
        double mean_hat = np.mean_hat;
        if (direction == AduMeanDirection::negated) {
            mean_hat = std::max(1.0 + 1e-6 - mean_hat, kMeanClampLo);
        }
        mean_product *= mean_hat;
        stddev_product *= np.stddev_hat;
    }
    return std::sqrt(beta) * mean_product + stddev_product;
}

double compute_usemo_u(std::span<const double> stddevs, double beta,
                       std::span<const std::pair<double, double>> bounds) {
    if (stddevs.size() != bounds.size() || stddevs.empty()) {
        throw std::invalid_argument("compute_usemo_u: inconsistent inputs");
    }
    double product = 1.0;
    const double root_beta = std::sqrt(beta);
    for (std::size_t i = 0; i < stddevs.size(); ++i) {
        const NormalizedPrediction np = normalize_prediction(0.0, stddevs[i], bounds[i]);
        product *= root_beta * np.stddev_hat;
    }
    return product;
}

std::vector<double> hv_trace(const ObservationDataset& ds, std::vector<double> reference,
                             int mc_samples, std::uint64_t mc_seed) {
    if (ds.empty()) {
        return {};
    }
    const std::size_t m = ds.objective_count();
    if (reference.empty()) {
        reference.assign(m, 1.2);
    }
    if (reference.size() != m) {
        throw std::invalid_argument("hv_trace: reference dimension mismatch");
    }
    auto [x, y] = ds.training_matrices();
    auto [y_norm, bounds] = normalize_objectives(y);

    std::vector<double> trace;
    trace.reserve(ds.size());
    std::vector<std::vector<double>> prefix;
    prefix.reserve(ds.size());
    for (std::size_t row = 0; row < ds.size(); ++row) {
        std::vector<double> point(m);
        for (std::size_t j = 0; j < m; ++j) {
            point[j] = y_norm(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j));
        }
        prefix.push_back(std::move(point));
        const std::vector<std::size_t> front_idx = pareto_front_indices(prefix);
        if (m == 2) {
            std::vector<std::array<double, 2>> front;
            front.reserve(front_idx.size());
            for (std::size_t idx : front_idx) {
                front.push_back({prefix[idx][0], prefix[idx][1]});
            }
            trace.push_back(hypervolume_2d(std::move(front), {reference[0], reference[1]}));
        } else {
            std::vector<std::vector<double>> front;
            front.reserve(front_idx.size());
            for (std::size_t idx : front_idx) {
                front.push_back(prefix[idx]);
            }
            trace.push_back(hypervolume_mc(front, reference, mc_samples, mc_seed));
        }
    }
    return trace;
}

namespace {

/// Shared state of one tuning run.
class TunerRun {
public:
    TunerRun(const ParameterSpace& space, const EvaluatorSpec& evaluator,
             const TunerConfig& config, const ObservationSink& sink)
        : space_(space), evaluator_(evaluator), config_(config), sink_(sink),
          master_(config.seed) {}

    TunerResult run(const ObservationDataset* resume) {
        if (config_.init_samples < 2) {
            throw std::invalid_argument("tuner: init_samples must be >= 2");
        }
        if (config_.max_iterations <= config_.init_samples) {
            throw std::invalid_argument("tuner: max_iterations must exceed init_samples");
        }
        if (config_.dedup_epsilon < 0.0) {
            throw std::invalid_argument("tuner: dedup_epsilon must be >= 0");
        }
        if (resume != nullptr && !resume->empty()) {
            if (resume->space() != space_) {
                throw std::invalid_argument("tuner: resume dataset space mismatch");
            }
            dataset_.emplace(*resume);
            for (const Observation& obs : dataset_->rows()) {
                encoded_rows_.push_back(encode(space_, obs.config));
                archive_.insert(obs.config, obs.objectives);
            }
        }

        const auto budget = static_cast<std::size_t>(config_.max_iterations);
        if (config_.algorithm == Algorithm::random_search) {
            while (row_count() < budget) {
                evaluate_and_append(random_config(kStreamSample, row_count()));
            }
        } else {
            while (row_count() < std::min<std::size_t>(budget,
                                                       static_cast<std::size_t>(config_.init_samples))) {
                evaluate_and_append(random_config(kStreamSample, row_count()));
            }
            while (row_count() < budget) {
                model_based_iteration();
            }
        }

        TunerResult result{std::move(*dataset_), std::move(archive_), {}, {}, std::move(iterations_), fallbacks_};
        for (const IterationRecord& rec : result.iterations) {
            result.chosen_metric_trace.push_back(rec.chosen_score);
        }
        result.hv_trace = hv_trace(result.dataset);
        return result;
    }

private:
    std::size_t row_count() const { return dataset_ ? dataset_->size() : 0; }

    Configuration random_config(std::uint64_t stream, std::size_t index) {
        Rng rng = master_.stream(stream, index);
        return sample_random(space_, rng);
    }

    void evaluate_and_append(const Configuration& config) {
        const EvaluationResult eval = evaluate(evaluator_, space_, config);
        if (eval.status != EvalStatus::ok) {
            throw TunerAbort("evaluator failed at iteration " + std::to_string(row_count()) +
                             ": " + eval.diagnostic);
        }
        if (!dataset_) {
            dataset_.emplace(space_, default_objective_names(eval.objectives.size()));
        }
        Observation obs;
        obs.config = config;
        obs.objectives = eval.objectives;
        obs.repetitions = evaluator_.repetitions;
        obs.iteration = static_cast<std::int64_t>(dataset_->size());
        obs.algorithm = algorithm_name(config_.algorithm);
        obs.wall_time_s = eval.wall_time_s;
        dataset_->append(obs);
        encoded_rows_.push_back(encode(space_, obs.config));
        archive_.insert(obs.config, obs.objectives);
        if (sink_) {
            sink_(obs);
        }
    }

    bool near_evaluated(const UnitVector& u) const {
        for (const UnitVector& row : encoded_rows_) {
            if (linf_distance(u, row) <= config_.dedup_epsilon) {
                return true;
            }
        }
        return false;
    }

    void model_based_iteration() {
        const auto t = static_cast<std::int64_t>(row_count()) - config_.init_samples + 1;
        auto [x, y] = dataset_->training_matrices();
        const std::size_t m = dataset_->objective_count();
        const bool single = config_.algorithm == Algorithm::bo_single;
        if (single && (config_.bo_objective_index < 0 ||
                       static_cast<std::size_t>(config_.bo_objective_index) >= m)) {
            throw std::invalid_argument("tuner: bo_objective_index out of range");
        }

        // Surrogates and incumbents for the acquisition problem.
        std::vector<GpModel> models;
        std::vector<double> incumbents;
        std::vector<std::size_t> fitted; // objective index per model
        if (single) {
            fitted.push_back(static_cast<std::size_t>(config_.bo_objective_index));
        } else {
            for (std::size_t j = 0; j < m; ++j) {
                fitted.push_back(j);
            }
        }
        Eigen::MatrixXd y_fit(y.rows(), static_cast<Eigen::Index>(fitted.size()));
        for (std::size_t jj = 0; jj < fitted.size(); ++jj) {
            y_fit.col(static_cast<Eigen::Index>(jj)) = y.col(static_cast<Eigen::Index>(fitted[jj]));
            incumbents.push_back(y.col(static_cast<Eigen::Index>(fitted[jj])).minCoeff());
        }
        models = fit_per_objective(x, y_fit, FitGrid{}, config_.kernel, config_.parallel_fits);

        const auto dim = static_cast<int>(space_.dimension());
        const VectorObjectiveFn acquisition = [&](std::span<const double> u) {
            std::vector<double> values(models.size());
            for (std::size_t jj = 0; jj < models.size(); ++jj) {
                values[jj] = expected_improvement(models[jj], u, incumbents[jj]);
            }
            return values;
        };
        Rng inner_rng = master_.stream(kStreamInner, static_cast<std::uint64_t>(t));
        const std::vector<Individual> pareto_set =
            nsga2(acquisition, dim, config_.inner, inner_rng);

        const BetaSchedule schedule{log_cardinality(space_, config_.cardinality_resolution),
                                    config_.delta};
        const double beta = beta_t(schedule, t);
        std::vector<std::pair<double, double>> bounds;
        for (std::size_t jj = 0; jj < fitted.size(); ++jj) {
            const auto col = y.col(static_cast<Eigen::Index>(fitted[jj]));
            bounds.emplace_back(col.minCoeff(), col.maxCoeff());
        }

        // Candidates are scored at the configuration that would actually be
        // evaluated (grid-snapped encoding), which also drives dedup.
        IterationRecord record;
        double best_score = -std::numeric_limits<double>::infinity();
        std::optional<Configuration> chosen;
        for (const Individual& member : pareto_set) {
            Configuration candidate = decode(space_, member.genome);
            const UnitVector u = encode(space_, candidate);
            if (near_evaluated(u)) {
                continue;
            }
            std::vector<double> means(models.size());
            std::vector<double> stddevs(models.size());
            for (std::size_t jj = 0; jj < models.size(); ++jj) {
                const Prediction p = models[jj].predict(u);
                means[jj] = p.mean;
                stddevs[jj] = p.stddev;
            }
            double score = 0.0;
            switch (config_.algorithm) {
            case Algorithm::adumbo:
                score = compute_adu(means, stddevs, beta, bounds, config_.adu_mean_direction);
                break;
            case Algorithm::usemo:
                score = compute_usemo_u(stddevs, beta, bounds);
                break;
            case Algorithm::bo_single:
                score = expected_improvement(means[0], stddevs[0], incumbents[0]);
                break;
            default:
                throw std::logic_error("model iteration with non-model algorithm");
            }
            record.candidate_scores.push_back(score);
            if (score > best_score) {
                best_score = score;
                chosen = std::move(candidate);
            }
        }

        if (!chosen) {
            // Every candidate duplicated an evaluated configuration.
            record.random_fallback = true;
            ++fallbacks_;
            chosen = random_config(kStreamFallback, static_cast<std::uint64_t>(t));
        } else {
            record.chosen_score = best_score;
        }
        iterations_.push_back(std::move(record));
        evaluate_and_append(*chosen);
    }

    const ParameterSpace& space_;
    const EvaluatorSpec& evaluator_;
    const TunerConfig& config_;
    const ObservationSink& sink_;
    Rng master_;

    std::optional<ObservationDataset> dataset_;
    std::vector<UnitVector> encoded_rows_;
    ParetoArchive archive_;
    std::vector<IterationRecord> iterations_;
    int fallbacks_ = 0;
};

} // namespace

TunerResult run_tuner(const ParameterSpace& space, const EvaluatorSpec& evaluator,
                      const TunerConfig& config, const ObservationSink& sink,
                      const ObservationDataset* resume) {
    TunerRun run(space, evaluator, config, sink);
    return run.run(resume);
}

} // namespace motune
