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

#include "motune/gp.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace motune {

namespace {

constexpr double kJitterLadder[] = {1e-10, 1e-8, 1e-6, 1e-4};

double kernel_value(const KernelConfig& k, double sq_dist) {
    if (k.family == KernelFamily::squared_exponential) {
        return k.signal_variance * std::exp(-0.5 * sq_dist / (k.lengthscale * k.lengthscale));
    }
    const double r = std::sqrt(sq_dist);
    const double s = std::sqrt(5.0) * r / k.lengthscale;
    return k.signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

Eigen::MatrixXd pairwise_sq_dist(const Eigen::MatrixXd& x) {
    const Eigen::VectorXd sq = x.rowwise().squaredNorm();
    Eigen::MatrixXd d = sq.replicate(1, x.rows()) + sq.transpose().replicate(x.rows(), 1) -
                        2.0 * (x * x.transpose());
    return d.cwiseMax(0.0);
}

Eigen::MatrixXd kernel_matrix(const KernelConfig& k, const Eigen::MatrixXd& sq_dist) {
    Eigen::MatrixXd out(sq_dist.rows(), sq_dist.cols());
    for (Eigen::Index j = 0; j < sq_dist.cols(); ++j) {
        for (Eigen::Index i = 0; i < sq_dist.rows(); ++i) {
            out(i, j) = kernel_value(k, sq_dist(i, j));
        }
    }
    return out;
}

struct Factorization {
    Eigen::MatrixXd lower;
    double jitter = 0.0;
};

/// Cholesky of K + noise I, escalating jitter until it succeeds.
Factorization factorize(const Eigen::MatrixXd& k, double noise_variance) {
    Eigen::MatrixXd a = k;
    a.diagonal().array() += noise_variance;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
        return {llt.matrixL(), 0.0};
    }
    for (double jitter : kJitterLadder) {
        Eigen::MatrixXd b = a;
        b.diagonal().array() += jitter;
        llt.compute(b);
        if (llt.info() == Eigen::Success) {
            return {llt.matrixL(), jitter};
        }
    }
    throw std::runtime_error("gp: Cholesky failed at maximum jitter 1e-4");
}

double lml_from_parts(const Eigen::VectorXd& y, const Eigen::VectorXd& alpha,
                      const Eigen::MatrixXd& lower) {
    const auto n = static_cast<double>(y.size());
    return -0.5 * y.dot(alpha) - lower.diagonal().array().log().sum() -
           0.5 * n * std::log(2.0 * std::numbers::pi);
}

} // namespace

GpModel GpModel::fit_fixed(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const KernelConfig& kernel) {
    if (x.rows() < 1 || x.rows() != y.size()) {
        throw std::invalid_argument("gp: need N >= 1 rows with matching targets");
    }
    if (!x.allFinite() || !y.allFinite()) {
        throw std::invalid_argument("gp: non-finite training data");
    }
    GpModel model;
    model.kernel_ = kernel;
    model.x_train_ = x;
    model.y_mean_ = y.mean();
    const double var = (y.array() - model.y_mean_).square().sum() / static_cast<double>(y.size());
    const double sd = std::sqrt(var);
    model.y_std_ = sd > 0.0 ? sd : 1.0;
    const Eigen::VectorXd ys = (y.array() - model.y_mean_) / model.y_std_;

    const Eigen::MatrixXd sq_dist = pairwise_sq_dist(x);
    const Eigen::MatrixXd k = kernel_matrix(kernel, sq_dist);
    Factorization fac = factorize(k, kernel.noise_variance);
    model.chol_lower_ = std::move(fac.lower);
    model.jitter_ = fac.jitter;
    model.alpha_ = model.chol_lower_.triangularView<Eigen::Lower>().solve(ys);
    model.chol_lower_.triangularView<Eigen::Lower>().transpose().solveInPlace(model.alpha_);
    model.lml_ = lml_from_parts(ys, model.alpha_, model.chol_lower_);
    return model;
}

GpModel GpModel::fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     const FitGrid& grid, KernelFamily family) {
    if (x.rows() < 2) {
        throw std::invalid_argument("gp: grid fit needs N >= 2 rows");
    }
    if (grid.lengthscales.empty() || grid.signal_variances.empty() || grid.noise_variances.empty()) {
        throw std::invalid_argument("gp: empty hyperparameter grid");
    }

    // Score every grid point cheaply on a shared distance matrix, then
    // refit once with the winner.
    const double mean = y.mean();
    const double var = (y.array() - mean).square().sum() / static_cast<double>(y.size());
    const double sd = std::sqrt(var);
    const double y_std = sd > 0.0 ? sd : 1.0;
    const Eigen::VectorXd ys = (y.array() - mean) / y_std;
    const Eigen::MatrixXd sq_dist = pairwise_sq_dist(x);

    KernelConfig best;
    double best_lml = -std::numeric_limits<double>::infinity();
    for (double ls : grid.lengthscales) {
        for (double sv : grid.signal_variances) {
            const KernelConfig base{family, ls, sv, 0.0};
            const Eigen::MatrixXd k = kernel_matrix(base, sq_dist);
            for (double nv : grid.noise_variances) {
                KernelConfig cand = base;
                cand.noise_variance = nv;
                try {
                    const Factorization fac = factorize(k, nv);
                    Eigen::VectorXd alpha = fac.lower.triangularView<Eigen::Lower>().solve(ys);
                    fac.lower.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha);
                    const double lml = lml_from_parts(ys, alpha, fac.lower);
                    if (lml > best_lml) {
                        best_lml = lml;
                        best = cand;
                    }
                } catch (const std::runtime_error&) {
                    // unfactorizable grid point: skip
                }
            }
        }
    }
    if (!std::isfinite(best_lml)) {
        throw std::runtime_error("gp: no grid point factorized");
    }
    return fit_fixed(x, y, best);
}

Prediction GpModel::predict(std::span<const double> x) const {
    if (static_cast<Eigen::Index>(x.size()) != x_train_.cols()) {
        throw std::invalid_argument("gp: query dimension mismatch");
    }
    const Eigen::Map<const Eigen::VectorXd> q(x.data(), static_cast<Eigen::Index>(x.size()));
    const auto n = x_train_.rows();
    Eigen::VectorXd k_star(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double sq = (x_train_.row(i).transpose() - q).squaredNorm();
        k_star(i) = kernel_value(kernel_, sq);
    }
    const double mean_std_units = k_star.dot(alpha_);
    const Eigen::VectorXd v = chol_lower_.triangularView<Eigen::Lower>().solve(k_star);
    double variance = kernel_.signal_variance - v.squaredNorm();
    if (variance < 0.0) {
        if (variance < -1e-10) {
            throw std::runtime_error("gp: negative predictive variance " + std::to_string(variance));
        }
        variance = 0.0;
    }
    Prediction pred;
    pred.mean = y_mean_ + y_std_ * mean_std_units;
    pred.stddev = y_std_ * std::sqrt(variance);
    return pred;
}

std::vector<GpModel> fit_per_objective(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                       const FitGrid& grid, KernelFamily family, bool parallel) {
    const auto m = y.cols();
    std::vector<GpModel> models;
    models.reserve(static_cast<std::size_t>(m));
    if (!parallel || m <= 1) {
        for (Eigen::Index j = 0; j < m; ++j) {
            models.push_back(GpModel::fit(x, y.col(j), grid, family));
        }
        return models;
    }
    std::vector<std::future<GpModel>> futures;
    futures.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) {
        futures.push_back(std::async(std::launch::async, [&, j] {
            return GpModel::fit(x, y.col(j), grid, family);
        }));
    }
    for (auto& f : futures) {
        models.push_back(f.get());
    }
    return models;
}

} // namespace motune
