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

#ifndef MOTUNE_ACQUISITION_HPP
#define MOTUNE_ACQUISITION_HPP

#include <cstdint>
#include <span>

#include "motune/gp.hpp"

namespace motune {

/// Exploration coefficient schedule beta_t = 2 log(|X| pi^2 t^2 / (6 delta)),
/// held in log form so huge spaces cannot overflow.
struct BetaSchedule {
    double log_cardinality = 0.0; // natural log of |X| (or its proxy)
    double delta = 0.1;           // in (0,1)
};

/// beta_t for iteration t >= 1; monotone nondecreasing in t.
double beta_t(const BetaSchedule& schedule, std::int64_t t);

/// Expected improvement under the minimization convention: best_y is the
/// smallest observed value; EI is the expected drop below it. Degenerate
/// stddev (< 1e-12) reduces to max(best_y - mean, 0).
double expected_improvement(double mean, double stddev, double best_y);
double expected_improvement(const GpModel& model, std::span<const double> x, double best_y);

/// Confidence bounds mean -/+ sqrt(beta) * stddev.
double lcb(double mean, double stddev, double beta);
double ucb(double mean, double stddev, double beta);

/// Standard normal cdf/pdf used by EI; exposed for reuse in tests.
double normal_cdf(double z);
double normal_pdf(double z);

} // namespace motune

#endif
