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

#include "motune/evaluator.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json_util.hpp"
#include "motune/rng.hpp"
#include "subprocess.hpp"

namespace motune {

namespace {

using nlohmann::json;

constexpr std::uint64_t kNoiseStream = 0x6d78737461636bULL;

/// Standard cpu frequency levels used by the mixed-stack freq axis.
const std::vector<std::string> kFreqLevels = {
    "800MHz", "900MHz", "1.1GHz", "1.2GHz", "1.4GHz", "1.5GHz", "1.7GHz",
    "1.8GHz", "2GHz",   "2.2GHz", "2.4GHz", "2.6GHz", "2.7GHz", "2.9GHz"};

std::vector<double> zdt1(std::span<const double> u) {
    const double f1 = u[0];
    double g = 1.0;
    if (u.size() > 1) {
        double rest = 0.0;
        for (std::size_t i = 1; i < u.size(); ++i) {
            rest += u[i];
        }
        g += 9.0 * rest / static_cast<double>(u.size() - 1);
    }
    const double f2 = g * (1.0 - std::sqrt(f1 / g));
    return {f1, f2};
}

std::vector<double> zdt2(std::span<const double> u) {
    const double f1 = u[0];
    double g = 1.0;
    if (u.size() > 1) {
        double rest = 0.0;
        for (std::size_t i = 1; i < u.size(); ++i) {
            rest += u[i];
        }
        g += 9.0 * rest / static_cast<double>(u.size() - 1);
    }
    const double ratio = f1 / g;
    const double f2 = g * (1.0 - ratio * ratio);
    return {f1, f2};
}

std::vector<double> dtlz2(std::span<const double> u) {
    double g = 0.0;
    for (std::size_t i = 1; i < u.size(); ++i) {
        g += (u[i] - 0.5) * (u[i] - 0.5);
    }
    const double angle = u[0] * std::numbers::pi / 2.0;
    return {(1.0 + g) * std::cos(angle), (1.0 + g) * std::sin(angle)};
}

/// Synthetic tuning-shaped problem: only the first two axes (batch, freq)
/// matter; time and energy trade off along the freq axis. Noise, when
/// enabled, is 1% relative and keyed to (config, repetition, seed).
std::vector<double> mixed_stack(std::span<const double> u, int repetition,
                                std::optional<std::uint64_t> noise_seed) {
    if (u.size() < 2) {
        throw std::invalid_argument("mixed-stack: needs at least batch and freq axes");
    }
    const double u_b = u[0];
    const double u_f = u[1];
    const double time = 1.0 + 5.0 * (1.0 - u_f) + 2.0 * u_b;
    const double energy = time * (0.5 + 1.5 * u_f * u_f);
    if (!noise_seed.has_value()) {
        return {time, energy};
    }
    std::uint64_t h = mix_seed(*noise_seed, kNoiseStream);
    for (double coord : u) {
        h = mix_seed(h, std::bit_cast<std::uint64_t>(coord));
    }
    h = mix_seed(h, static_cast<std::uint64_t>(repetition));
    Rng rng(h);
    const double noisy_time = time + rng.normal() * 0.01 * time;
    const double noisy_energy = energy + rng.normal() * 0.01 * energy;
    return {noisy_time, noisy_energy};
}

EvaluationResult evaluate_command(const CommandEvaluator& cmd, const ParameterSpace& space,
                                  const Configuration& config, int repetitions) {
    EvaluationResult result;
    const auto start = std::chrono::steady_clock::now();
    std::size_t expected_m = 0;
    for (int rep = 0; rep < repetitions; ++rep) {
        json request;
        request["config"] = detail::config_to_json(space, config);
        request["repetition"] = rep;
        const std::string input = request.dump() + "\n";

        std::string failure;
        bool done = false;
        for (int attempt = 0; attempt <= cmd.retries && !done; ++attempt) {
            const detail::CommandOutcome outcome = detail::run_command(
                cmd.argv, input, cmd.timeout_s, {{"TUNER_REPETITION", std::to_string(rep)}});
            if (!outcome.ok()) {
                failure = outcome.error.empty()
                              ? "exit code " + std::to_string(outcome.exit_code)
                              : outcome.error;
                continue;
            }
            // First line of stdout must be the response object.
            const std::size_t nl = outcome.stdout_data.find('\n');
            const std::string line = nl == std::string::npos ? outcome.stdout_data
                                                             : outcome.stdout_data.substr(0, nl);
            json response;
            try {
                response = json::parse(line);
            } catch (const json::parse_error& e) {
                failure = std::string("unparsable response: ") + e.what();
                continue;
            }
            if (!response.is_object() || !response.contains("objectives") ||
                !response.at("objectives").is_array()) {
                failure = "response missing \"objectives\" array";
                continue;
            }
            std::vector<double> objectives;
            try {
                objectives = response.at("objectives").get<std::vector<double>>();
            } catch (const json::exception& e) {
                failure = std::string("bad objectives: ") + e.what();
                continue;
            }
            bool finite = !objectives.empty();
            for (double v : objectives) {
                finite = finite && std::isfinite(v);
            }
            if (!finite) {
                failure = "objectives empty or non-finite";
                continue;
            }
            if (expected_m == 0) {
                expected_m = objectives.size();
            } else if (objectives.size() != expected_m) {
                failure = "objective count changed between repetitions";
                continue;
            }
            result.per_rep.push_back(std::move(objectives));
            done = true;
        }
        if (!done) {
            result.status = EvalStatus::failed;
            result.diagnostic = "repetition " + std::to_string(rep) + ": " + failure;
            result.wall_time_s = std::chrono::duration<double>(
                                     std::chrono::steady_clock::now() - start).count();
            return result;
        }
    }
    result.objectives.assign(expected_m, 0.0);
    for (const auto& rep : result.per_rep) {
        for (std::size_t j = 0; j < expected_m; ++j) {
            result.objectives[j] += rep[j];
        }
    }
    for (double& v : result.objectives) {
        v /= static_cast<double>(repetitions);
    }
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace

bool is_builtin_problem(std::string_view name) {
    return name == "zdt1" || name == "zdt2" || name == "dtlz2" || name == "mixed-stack";
}

std::size_t builtin_objective_count(std::string_view name) {
    if (!is_builtin_problem(name)) {
        throw std::invalid_argument("unknown builtin problem '" + std::string(name) + "'");
    }
    return 2;
}

ParameterSpace builtin_space(std::string_view name, int dim) {
    if (!is_builtin_problem(name)) {
        throw std::invalid_argument("unknown builtin problem '" + std::string(name) + "'");
    }
    if (name == "mixed-stack") {
        std::vector<ParameterSpec> params;
        params.push_back({"batch", CategoricalSpec{{"32", "64", "96", "128"}}});
        params.push_back({"freq", CategoricalSpec{kFreqLevels}});
        for (int i = 1; i <= 6; ++i) {
            params.push_back({"nuisance" + std::to_string(i), ContinuousSpec{0.0, 1.0, Scale::linear}});
        }
        return ParameterSpace(std::move(params));
    }
    if (dim < 1) {
        throw std::invalid_argument("builtin_space: dim must be >= 1");
    }
    std::vector<ParameterSpec> params;
    params.reserve(static_cast<std::size_t>(dim));
    for (int i = 1; i <= dim; ++i) {
        params.push_back({"x" + std::to_string(i), ContinuousSpec{0.0, 1.0, Scale::linear}});
    }
    return ParameterSpace(std::move(params));
}

std::vector<double> evaluate_builtin_unit(std::string_view name, std::span<const double> u,
                                          int repetition,
                                          std::optional<std::uint64_t> noise_seed) {
    if (u.empty()) {
        throw std::invalid_argument("builtin: empty input");
    }
    if (name == "zdt1") {
        return zdt1(u);
    }
    if (name == "zdt2") {
        return zdt2(u);
    }
    if (name == "dtlz2") {
        return dtlz2(u);
    }
    if (name == "mixed-stack") {
        return mixed_stack(u, repetition, noise_seed);
    }
    throw std::invalid_argument("unknown builtin problem '" + std::string(name) + "'");
}

EvaluationResult evaluate(const EvaluatorSpec& spec, const ParameterSpace& space,
                          const Configuration& config) {
    if (spec.repetitions < 1) {
        throw std::invalid_argument("evaluator: repetitions must be >= 1");
    }
    if (const auto* builtin = std::get_if<BuiltinEvaluator>(&spec.backend)) {
        const UnitVector u = encode(space, config);
        EvaluationResult result;
        for (int rep = 0; rep < spec.repetitions; ++rep) {
            result.per_rep.push_back(
                evaluate_builtin_unit(builtin->problem, u, rep, spec.noise_seed));
        }
        const std::size_t m = result.per_rep.front().size();
        result.objectives.assign(m, 0.0);
        for (const auto& rep : result.per_rep) {
            for (std::size_t j = 0; j < m; ++j) {
                result.objectives[j] += rep[j];
            }
        }
        for (double& v : result.objectives) {
            v /= static_cast<double>(spec.repetitions);
        }
        return result;
    }
    const auto& cmd = std::get<CommandEvaluator>(spec.backend);
    if (cmd.timeout_s <= 0.0) {
        throw std::invalid_argument("evaluator: timeout must be positive");
    }
    return evaluate_command(cmd, space, config, spec.repetitions);
}

EvaluatorSpec parse_evaluator_spec(const std::string& text) {
    EvaluatorSpec spec;
    if (text.starts_with("builtin:")) {
        const std::string name = text.substr(8);
        if (!is_builtin_problem(name)) {
            throw std::invalid_argument("unknown builtin problem '" + name + "'");
        }
        spec.backend = BuiltinEvaluator{name};
        return spec;
    }
    if (text.starts_with("cmd:")) {
        CommandEvaluator cmd;
        cmd.argv = detail::split_command_line(text.substr(4));
        if (cmd.argv.empty()) {
            throw std::invalid_argument("evaluator: empty command line");
        }
        spec.backend = std::move(cmd);
        return spec;
    }
    throw std::invalid_argument("evaluator '" + text + "': expected builtin:NAME or cmd:ARGV");
}

} // namespace motune
