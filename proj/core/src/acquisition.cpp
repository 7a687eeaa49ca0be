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

#include "motune/acquisition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace motune {

double beta_t(const BetaSchedule& schedule, std::int64_t t) {
    if (t < 1) {
        throw std::invalid_argument("beta_t: t must be >= 1");
    }
    if (!(schedule.delta > 0.0 && schedule.delta < 1.0)) {
        throw std::invalid_argument("beta_t: delta must lie in (0, 1)");
    }
    const double pi = std::numbers::pi;
    return 2.0 * (schedule.log_cardinality + 2.0 * std::log(static_cast<double>(t)) +
                  std::log(pi * pi / (6.0 * schedule.delta)));
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double expected_improvement(double mean, double stddev, double best_y) {
    const double improvement = best_y - mean;
    if (stddev < 1e-12) {
        return std::max(improvement, 0.0);
    }
    const double z = improvement / stddev;
    const double ei = improvement * normal_cdf(z) + stddev * normal_pdf(z);
    return std::max(ei, 0.0);
}

double expected_improvement(const GpModel& model, std::span<const double> x, double best_y) {
    const Prediction p = model.predict(x);
    return expected_improvement(p.mean, p.stddev, best_y);
}

double lcb(double mean, double stddev, double beta) {
    if (beta < 0.0) {
        throw std::invalid_argument("lcb: beta must be >= 0");
    }
    return mean - std::sqrt(beta) * stddev;
}

double ucb(double mean, double stddev, double beta) {
    if (beta < 0.0) {
        throw std::invalid_argument("ucb: beta must be >= 0");
    }
    return mean + std::sqrt(beta) * stddev;
}

} // namespace motune
