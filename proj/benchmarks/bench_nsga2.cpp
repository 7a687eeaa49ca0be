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

#include <benchmark/benchmark.h>

#include "motune/evaluator.hpp"
#include "motune/nsga2.hpp"

namespace {

using namespace motune;

void BM_Nsga2Zdt1(benchmark::State& state) {
    Nsga2Config config;
    config.population = 100;
    config.generations = static_cast<int>(state.range(0));
    const auto evaluate = [](std::span<const double> u) {
        const std::vector<double> f = evaluate_builtin_unit("zdt1", u, 0, std::nullopt);
        return std::vector<double>{-f[0], -f[1]};
    };
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng(seed++);
        benchmark::DoNotOptimize(nsga2(evaluate, 8, config, rng));
    }
}
BENCHMARK(BM_Nsga2Zdt1)->Arg(10)->Arg(50);

void BM_FastNonDominatedSort(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(7);
    std::vector<std::vector<double>> values(n, std::vector<double>(2));
    for (auto& row : values) {
        row = {rng.uniform01(), rng.uniform01()};
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fast_non_dominated_sort(values, Sense::maximize));
    }
}
BENCHMARK(BM_FastNonDominatedSort)->Arg(100)->Arg(200);

} // namespace
