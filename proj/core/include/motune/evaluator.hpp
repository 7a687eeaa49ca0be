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

#ifndef MOTUNE_EVALUATOR_HPP
#define MOTUNE_EVALUATOR_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "motune/space.hpp"

namespace motune {

/// Built-in synthetic benchmark backend; the problem is a pure function of
/// the encoded configuration (plus repetition and noise seed where noisy).
struct BuiltinEvaluator {
    std::string problem; // zdt1 | zdt2 | dtlz2 | mixed-stack
};

/// External-command backend. Each repetition spawns one process, writes
/// {"config":{...},"repetition":i} on its stdin and reads
/// {"objectives":[...]} from its stdout; exit code 0 means success.
/// TUNER_REPETITION carries the repetition index in the environment.
struct CommandEvaluator {
    std::vector<std::string> argv;
    double timeout_s = 300.0;
    int retries = 1; // extra attempts after the first failure
};

struct EvaluatorSpec {
    std::variant<BuiltinEvaluator, CommandEvaluator> backend;
    int repetitions = 1;
    std::optional<std::uint64_t> noise_seed; // builtin noise off when unset
};

enum class EvalStatus { ok, failed };

struct EvaluationResult {
    std::vector<double> objectives;          // column means of per_rep when ok
    std::vector<std::vector<double>> per_rep;
    EvalStatus status = EvalStatus::ok;
    std::string diagnostic;
    double wall_time_s = 0.0; // measured for command runs; 0 for builtins
};

/// Runs the backend `repetitions` times and aggregates by arithmetic mean.
/// Command attempts are retried up to `retries` extra times per repetition;
/// persistent failure yields a failed result with a diagnostic rather than
/// an exception.
EvaluationResult evaluate(const EvaluatorSpec& spec, const ParameterSpace& space,
                          const Configuration& config);

bool is_builtin_problem(std::string_view name);
std::size_t builtin_objective_count(std::string_view name);

/// Canonical space for a builtin problem: `dim` continuous axes in [0,1] for
/// zdt1/zdt2/dtlz2; the fixed batch/freq/nuisance layout for mixed-stack.
ParameterSpace builtin_space(std::string_view name, int dim = 8);

/// The problem itself, over encoded unit-cube coordinates. Deterministic in
/// (u, repetition, noise_seed); zdt/dtlz problems ignore noise entirely.
std::vector<double> evaluate_builtin_unit(std::string_view name, std::span<const double> u,
                                          int repetition,
                                          std::optional<std::uint64_t> noise_seed);

/// Parses "builtin:NAME" or "cmd:ARGV..." into a spec (repetitions and
/// noise seed are set separately). Throws std::invalid_argument otherwise.
EvaluatorSpec parse_evaluator_spec(const std::string& text);

} // namespace motune

#endif
