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
#include "motune/importance.hpp"

namespace {

using namespace motune;

ObservationDataset mixed_stack_dataset(std::size_t rows) {
    const ParameterSpace space = builtin_space("mixed-stack");
    ObservationDataset ds(space, {"f1", "f2"});
    Rng rng(17);
    for (std::size_t i = 0; i < rows; ++i) {
        Observation obs;
        obs.config = sample_random(space, rng);
        obs.objectives = evaluate_builtin_unit("mixed-stack", encode(space, obs.config), 0, 5);
        obs.iteration = static_cast<std::int64_t>(i);
        obs.algorithm = "random";
        ds.append(obs);
    }
    return ds;
}

void BM_GiniImportance(benchmark::State& state) {
    const ObservationDataset ds = mixed_stack_dataset(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gini_importance(ds, 0, ForestConfig{100, 8, 2, 0}));
    }
}
BENCHMARK(BM_GiniImportance)->Arg(100)->Arg(500);

} // namespace
