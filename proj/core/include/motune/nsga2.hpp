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

#ifndef MOTUNE_NSGA2_HPP
#define MOTUNE_NSGA2_HPP

#include <functional>
#include <span>
#include <vector>

#include "motune/rng.hpp"

namespace motune {

enum class Sense { minimize, maximize };

struct Individual {
    std::vector<double> genome; // in [0,1]^D
    std::vector<double> values; // objective values (maximization sense)
    int rank = 0;               // 1-based front index
    double crowding = 0.0;      // +inf on front boundaries
};

struct Nsga2Config {
    int population = 100; // even, >= 4
    int generations = 50;
    double crossover_prob = 0.9;
    double sbx_eta = 15.0;
    double mutation_prob = -1.0; // < 0 selects 1/D
    double pm_eta = 20.0;
};

/// Deb's fast non-dominated sort; returns 1-based front ranks. Rank 1 is the
/// non-dominated set, rank r the non-dominated set once ranks < r are removed.
std::vector<int> fast_non_dominated_sort(const std::vector<std::vector<double>>& values,
                                         Sense sense);

/// Crowding distance of one front: boundary points per objective get +inf,
/// interior points the sum of normalized neighbor gaps; K <= 2 is all +inf.
std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front_values);

using VectorObjectiveFn = std::function<std::vector<double>(std::span<const double>)>;

/// NSGA-II over [0,1]^dim, maximizing every component of `evaluate`.
/// Binary tournament on (rank, crowding), SBX crossover with per-gene
/// reflection into [0,1], polynomial mutation, elitist (mu+lambda) selection.
/// Returns the final population's rank-1 individuals, deduplicated at genome
/// tolerance 1e-9 (L-inf). Deterministic given the rng state. Throws if
/// `evaluate` returns a non-finite value, naming the genome.
std::vector<Individual> nsga2(const VectorObjectiveFn& evaluate, int dim,
                              const Nsga2Config& config, Rng& rng);

} // namespace motune

#endif
