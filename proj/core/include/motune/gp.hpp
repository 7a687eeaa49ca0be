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

#ifndef MOTUNE_GP_HPP
#define MOTUNE_GP_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

namespace motune {

enum class KernelFamily { matern52, squared_exponential };

struct KernelConfig {
    KernelFamily family = KernelFamily::matern52;
    double lengthscale = 0.5;      // isotropic, unit-cube units
    double signal_variance = 1.0;
    double noise_variance = 1e-6;
};

/// Hyperparameter candidates for fit(); the Cartesian product is scored by
/// log marginal likelihood and the best point wins (first one on ties).
struct FitGrid {
    std::vector<double> lengthscales{0.05, 0.1, 0.2, 0.5, 1.0, 2.0};
    std::vector<double> signal_variances{0.25, 1.0, 4.0};
    std::vector<double> noise_variances{1e-6, 1e-4, 1e-2};
};

struct Prediction {
    double mean = 0.0;
    double stddev = 0.0; // >= 0
};

/// Exact Gaussian-process regression on unit-cube inputs.
///
/// Targets are standardized internally (zero mean, unit variance; a constant
/// target gets std 1), so the same kernel grid works for objectives of any
/// unit. Predictions are de-standardized. Fitted models are immutable and
/// predict() is safe to call concurrently.
class GpModel {
public:
    /// Grid-searched hyperparameters; requires N >= 2 rows.
    static GpModel fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const FitGrid& grid = {}, KernelFamily family = KernelFamily::matern52);

    /// Fixed hyperparameters; requires N >= 1.
    static GpModel fit_fixed(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                             const KernelConfig& kernel);

    /// Latent (noise-free) predictive mean and stddev in original target
    /// units. Tiny negative variances (>= -1e-10 standardized) clamp to 0;
    /// anything more negative throws.
    Prediction predict(std::span<const double> x) const;

    /// Exact LML of the standardized targets under the fitted kernel.
    double log_marginal_likelihood() const { return lml_; }

    const KernelConfig& kernel() const { return kernel_; }
    double target_mean() const { return y_mean_; }
    double target_std() const { return y_std_; }
    double jitter() const { return jitter_; }
    Eigen::Index training_size() const { return x_train_.rows(); }

private:
    GpModel() = default;

    KernelConfig kernel_;
    Eigen::MatrixXd x_train_;
    Eigen::VectorXd alpha_;      // (K + noise I)^-1 y_standardized
    Eigen::MatrixXd chol_lower_; // L with L L^T = K + noise I + jitter I
    double y_mean_ = 0.0;
    double y_std_ = 1.0;
    double lml_ = 0.0;
    double jitter_ = 0.0;
};

/// Fits one GP per column of y (std::async per objective). Output order
/// follows column order regardless of completion order.
std::vector<GpModel> fit_per_objective(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                       const FitGrid& grid = {},
                                       KernelFamily family = KernelFamily::matern52,
                                       bool parallel = true);

} // namespace motune

#endif
