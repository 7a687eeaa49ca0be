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

#include "motune/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace motune {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGenomeDedupTol = 1e-9;

/// a dominates b: no worse everywhere, strictly better somewhere.
bool dominates_sense(const std::vector<double>& a, const std::vector<double>& b, Sense sense) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = sense == Sense::maximize ? -a[i] : a[i];
        const double bi = sense == Sense::maximize ? -b[i] : b[i];
        if (ai > bi) {
            return false;
        }
        if (ai < bi) {
            strict = true;
        }
    }
    return strict;
}

double reflect_into_unit(double x) {
    while (x < 0.0 || x > 1.0) {
        if (x < 0.0) {
            x = -x;
        }
        if (x > 1.0) {
            x = 2.0 - x;
        }
    }
    return x;
}

void sbx_crossover(std::vector<double>& a, std::vector<double>& b, double eta, Rng& rng) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (rng.uniform01() > 0.5) {
            continue;
        }
        const double u = rng.uniform01();
        const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                     : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        const double c1 = 0.5 * ((1.0 + beta) * a[i] + (1.0 - beta) * b[i]);
        const double c2 = 0.5 * ((1.0 - beta) * a[i] + (1.0 + beta) * b[i]);
        a[i] = reflect_into_unit(c1);
        b[i] = reflect_into_unit(c2);
    }
}

void polynomial_mutation(std::vector<double>& genome, double prob, double eta, Rng& rng) {
    for (double& gene : genome) {
        if (rng.uniform01() >= prob) {
            continue;
        }
        const double u = rng.uniform01();
        const double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                                     : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
        gene = reflect_into_unit(gene + delta);
    }
}

std::vector<double> checked_evaluate(const VectorObjectiveFn& evaluate,
                                     const std::vector<double>& genome) {
    std::vector<double> values = evaluate(genome);
    for (double v : values) {
        if (!std::isfinite(v)) {
            std::ostringstream oss;
            oss << "nsga2: non-finite objective at genome (";
            for (std::size_t i = 0; i < genome.size(); ++i) {
                oss << (i ? ", " : "") << genome[i];
            }
            oss << ")";
            throw std::runtime_error(oss.str());
        }
    }
    return values;
}

void assign_ranks_and_crowding(std::vector<Individual>& pop) {
    std::vector<std::vector<double>> values(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        values[i] = pop[i].values;
    }
    const std::vector<int> ranks = fast_non_dominated_sort(values, Sense::maximize);
    int max_rank = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        pop[i].rank = ranks[i];
        max_rank = std::max(max_rank, ranks[i]);
    }
    for (int r = 1; r <= max_rank; ++r) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (pop[i].rank == r) {
                members.push_back(i);
            }
        }
        std::vector<std::vector<double>> front;
        front.reserve(members.size());
        for (std::size_t i : members) {
            front.push_back(pop[i].values);
        }
        const std::vector<double> crowd = crowding_distance(front);
        for (std::size_t i = 0; i < members.size(); ++i) {
            pop[members[i]].crowding = crowd[i];
        }
    }
}

/// (rank asc, crowding desc); index breaks exact ties deterministically.
bool better(const Individual& a, const Individual& b) {
    if (a.rank != b.rank) {
        return a.rank < b.rank;
    }
    return a.crowding > b.crowding;
}

std::size_t tournament(const std::vector<Individual>& pop, Rng& rng) {
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pop.size()) - 1));
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pop.size()) - 1));
    return better(pop[j], pop[i]) ? j : i;
}

} // namespace

std::vector<int> fast_non_dominated_sort(const std::vector<std::vector<double>>& values,
                                         Sense sense) {
    const std::size_t n = values.size();
    std::vector<int> ranks(n, 0);
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) {
                continue;
            }
            if (dominates_sense(values[p], values[q], sense)) {
                dominated_by[p].push_back(q);
            } else if (dominates_sense(values[q], values[p], sense)) {
                ++domination_count[p];
            }
        }
        if (domination_count[p] == 0) {
            ranks[p] = 1;
            current.push_back(p);
        }
    }
    int rank = 1;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated_by[p]) {
                if (--domination_count[q] == 0) {
                    ranks[q] = rank + 1;
                    next.push_back(q);
                }
            }
        }
        ++rank;
        current = std::move(next);
    }
    return ranks;
}

std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front_values) {
    const std::size_t k = front_values.size();
    if (k == 0) {
        return {};
    }
    if (k <= 2) {
        return std::vector<double>(k, kInf);
    }
    const std::size_t m = front_values.front().size();
    std::vector<double> distance(k, 0.0);
    std::vector<std::size_t> order(k);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (front_values[a][obj] != front_values[b][obj]) {
                return front_values[a][obj] < front_values[b][obj];
            }
            return a < b;
        });
        distance[order.front()] = kInf;
        distance[order.back()] = kInf;
        const double span = front_values[order.back()][obj] - front_values[order.front()][obj];
        if (span <= 0.0) {
            continue;
        }
        for (std::size_t i = 1; i + 1 < k; ++i) {
            if (std::isinf(distance[order[i]])) {
                continue;
            }
            distance[order[i]] +=
                (front_values[order[i + 1]][obj] - front_values[order[i - 1]][obj]) / span;
        }
    }
    return distance;
}

std::vector<Individual> nsga2(const VectorObjectiveFn& evaluate, int dim,
                              const Nsga2Config& config, Rng& rng) {
    if (dim < 1) {
        throw std::invalid_argument("nsga2: dim must be >= 1");
    }
    if (config.population < 4 || config.population % 2 != 0) {
        throw std::invalid_argument("nsga2: population must be even and >= 4");
    }
    const double pm = config.mutation_prob < 0.0 ? 1.0 / static_cast<double>(dim)
                                                 : config.mutation_prob;

    std::vector<Individual> pop(static_cast<std::size_t>(config.population));
    for (Individual& ind : pop) {
        ind.genome.resize(static_cast<std::size_t>(dim));
        for (double& gene : ind.genome) {
            gene = rng.uniform01();
        }
        ind.values = checked_evaluate(evaluate, ind.genome);
    }
    assign_ranks_and_crowding(pop);

    for (int gen = 0; gen < config.generations; ++gen) {
        std::vector<Individual> offspring;
        offspring.reserve(pop.size());
        while (offspring.size() < pop.size()) {
            Individual child_a = pop[tournament(pop, rng)];
            Individual child_b = pop[tournament(pop, rng)];
            if (rng.uniform01() < config.crossover_prob) {
                sbx_crossover(child_a.genome, child_b.genome, config.sbx_eta, rng);
            }
            polynomial_mutation(child_a.genome, pm, config.pm_eta, rng);
            polynomial_mutation(child_b.genome, pm, config.pm_eta, rng);
            child_a.values = checked_evaluate(evaluate, child_a.genome);
            child_b.values = checked_evaluate(evaluate, child_b.genome);
            offspring.push_back(std::move(child_a));
            offspring.push_back(std::move(child_b));
        }

        std::vector<Individual> combined = std::move(pop);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        assign_ranks_and_crowding(combined);

        std::vector<std::size_t> order(combined.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return better(combined[a], combined[b]);
        });
        pop.clear();
        pop.reserve(static_cast<std::size_t>(config.population));
        for (std::size_t i = 0; i < static_cast<std::size_t>(config.population); ++i) {
            pop.push_back(std::move(combined[order[i]]));
        }
    }

    assign_ranks_and_crowding(pop);
    std::vector<Individual> result;
    for (Individual& ind : pop) {
        if (ind.rank != 1) {
            continue;
        }
        const bool duplicate = std::any_of(result.begin(), result.end(), [&](const Individual& seen) {
            for (std::size_t i = 0; i < seen.genome.size(); ++i) {
                if (std::abs(seen.genome[i] - ind.genome[i]) > kGenomeDedupTol) {
                    return false;
                }
            }
            return true;
        });
        if (!duplicate) {
            result.push_back(std::move(ind));
        }
    }
    return result;
}

} // namespace motune
