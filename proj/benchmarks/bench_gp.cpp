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

#include <cmath>

#include "motune/gp.hpp"
#include "motune/rng.hpp"

namespace {

using namespace motune;

std::pair<Eigen::MatrixXd, Eigen::VectorXd> training_data(int n, int d) {
    Rng rng(1);
    Eigen::MatrixXd x(n, d);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < d; ++j) {
            x(i, j) = rng.uniform01();
            sum += x(i, j);
        }
        y(i) = std::sin(3.0 * x(i, 0)) + 0.1 * sum;
    }
    return {x, y};
}

void BM_GpGridFit(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    auto [x, y] = training_data(n, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(GpModel::fit(x, y));
    }
}
BENCHMARK(BM_GpGridFit)->Arg(20)->Arg(70);

void BM_GpPredict(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    auto [x, y] = training_data(n, 8);
    const GpModel model = GpModel::fit(x, y);
    Rng rng(2);
    std::vector<double> q(8);
    for (auto _ : state) {
        for (double& v : q) {
            v = rng.uniform01();
        }
        benchmark::DoNotOptimize(model.predict(q));
    }
}
BENCHMARK(BM_GpPredict)->Arg(20)->Arg(70);

} // namespace
