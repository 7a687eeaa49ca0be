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

#include "motune/pareto.hpp"
#include "motune/rng.hpp"

namespace {

using namespace motune;

void BM_Hypervolume2d(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    std::vector<std::array<double, 2>> front(k);
    for (auto& p : front) {
        p = {rng.uniform01(), rng.uniform01()};
    }
    for (auto _ : state) {
        auto copy = front;
        benchmark::DoNotOptimize(hypervolume_2d(std::move(copy), {1.2, 1.2}));
    }
}
BENCHMARK(BM_Hypervolume2d)->Arg(20)->Arg(200);

void BM_HypervolumeMc(benchmark::State& state) {
    Rng rng(5);
    std::vector<std::vector<double>> front(10, std::vector<double>(3));
    for (auto& p : front) {
        p = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
    }
    const std::vector<double> ref{1.2, 1.2, 1.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            hypervolume_mc(front, ref, static_cast<int>(state.range(0)), 11));
    }
}
BENCHMARK(BM_HypervolumeMc)->Arg(10000)->Arg(100000);

void BM_ArchiveInsert(benchmark::State& state) {
    Rng rng(9);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<double>> points(n, std::vector<double>(2));
    for (auto& p : points) {
        p = {rng.uniform01(), rng.uniform01()};
    }
    for (auto _ : state) {
        ParetoArchive archive;
        for (std::size_t i = 0; i < n; ++i) {
            archive.insert(Configuration{{static_cast<double>(i)}}, points[i]);
        }
        benchmark::DoNotOptimize(archive.size());
    }
}
BENCHMARK(BM_ArchiveInsert)->Arg(70)->Arg(500);

} // namespace
