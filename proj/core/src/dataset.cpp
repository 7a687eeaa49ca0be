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

#include "motune/dataset.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json_util.hpp"

namespace motune {

using nlohmann::json;

namespace detail {

json config_to_json(const ParameterSpace& space, const Configuration& config) {
    if (config.values.size() != space.dimension()) {
        throw std::invalid_argument("config/space dimension mismatch");
    }
    json obj = json::object();
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        const ParamValue& v = config.values[i];
        if (const auto* s = std::get_if<std::string>(&v)) {
            obj[space.param(i).name] = *s;
        } else if (const auto* n = std::get_if<std::int64_t>(&v)) {
            obj[space.param(i).name] = *n;
        } else {
            obj[space.param(i).name] = std::get<double>(v);
        }
    }
    return obj;
}

Configuration config_from_json(const ParameterSpace& space, const json& obj) {
    if (!obj.is_object()) {
        throw std::invalid_argument("config: expected a JSON object");
    }
    Configuration config;
    config.values.reserve(space.dimension());
    for (const ParameterSpec& spec : space.params()) {
        if (!obj.contains(spec.name)) {
            throw std::invalid_argument("config: missing parameter '" + spec.name + "'");
        }
        const json& v = obj.at(spec.name);
        if (std::holds_alternative<CategoricalSpec>(spec.kind)) {
            if (!v.is_string()) {
                throw std::invalid_argument("config: parameter '" + spec.name + "' expects a category string");
            }
            config.values.emplace_back(v.get<std::string>());
        } else if (std::holds_alternative<IntegerSpec>(spec.kind)) {
            if (!v.is_number_integer()) {
                throw std::invalid_argument("config: parameter '" + spec.name + "' expects an integer");
            }
            config.values.emplace_back(v.get<std::int64_t>());
        } else {
            if (!v.is_number()) {
                throw std::invalid_argument("config: parameter '" + spec.name + "' expects a number");
            }
            config.values.emplace_back(v.get<double>());
        }
    }
    // Delegate domain checking (range membership, known category).
    encode(space, config);
    return config;
}

} // namespace detail

ObservationDataset::ObservationDataset(ParameterSpace space, std::vector<std::string> objective_names)
    : space_(std::move(space)), objective_names_(std::move(objective_names)) {
    if (objective_names_.empty()) {
        throw std::invalid_argument("dataset: at least one objective required");
    }
}

void ObservationDataset::append(Observation obs) {
    if (obs.objectives.size() != objective_count()) {
        throw std::invalid_argument("dataset: observation has " + std::to_string(obs.objectives.size()) +
                                    " objectives, dataset has " + std::to_string(objective_count()));
    }
    for (double v : obs.objectives) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("dataset: non-finite objective value");
        }
    }
    encode(space_, obs.config); // validates the configuration
    rows_.push_back(std::move(obs));
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ObservationDataset::training_matrices() const {
    const auto n = static_cast<Eigen::Index>(rows_.size());
    const auto d = static_cast<Eigen::Index>(space_.dimension());
    const auto m = static_cast<Eigen::Index>(objective_count());
    Eigen::MatrixXd x(n, d);
    Eigen::MatrixXd y(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        const UnitVector u = encode(space_, rows_[static_cast<std::size_t>(i)].config);
        for (Eigen::Index j = 0; j < d; ++j) {
            x(i, j) = u[static_cast<std::size_t>(j)];
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            y(i, j) = rows_[static_cast<std::size_t>(i)].objectives[static_cast<std::size_t>(j)];
        }
    }
    return {std::move(x), std::move(y)};
}

std::pair<Eigen::MatrixXd, std::vector<std::pair<double, double>>>
normalize_objectives(const Eigen::MatrixXd& y) {
    if (y.rows() < 1) {
        throw std::invalid_argument("normalize_objectives: empty input");
    }
    if (!y.allFinite()) {
        throw std::invalid_argument("normalize_objectives: non-finite input");
    }
    Eigen::MatrixXd out(y.rows(), y.cols());
    std::vector<std::pair<double, double>> bounds;
    bounds.reserve(static_cast<std::size_t>(y.cols()));
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
        const double lo = y.col(j).minCoeff();
        const double hi = y.col(j).maxCoeff();
        bounds.emplace_back(lo, hi);
        if (hi > lo) {
            out.col(j) = (y.col(j).array() - lo) / (hi - lo);
        } else {
            out.col(j).setConstant(0.5);
        }
    }
    return {std::move(out), std::move(bounds)};
}

std::string observation_to_jsonl(const ParameterSpace& space, const Observation& obs) {
    json rec;
    rec["iteration"] = obs.iteration;
    rec["algorithm"] = obs.algorithm;
    rec["config"] = detail::config_to_json(space, obs.config);
    rec["objectives"] = obs.objectives;
    rec["repetitions"] = obs.repetitions;
    rec["wall_time_s"] = obs.wall_time_s;
    return rec.dump();
}

Observation observation_from_jsonl(const ParameterSpace& space, const std::string& line,
                                   std::size_t line_number) {
    const auto fail = [line_number](const std::string& what) -> std::runtime_error {
        return std::runtime_error("line " + std::to_string(line_number) + ": " + what);
    };
    json rec;
    try {
        rec = json::parse(line);
    } catch (const json::parse_error& e) {
        throw fail(std::string("invalid JSON: ") + e.what());
    }
    try {
        Observation obs;
        obs.iteration = rec.at("iteration").get<std::int64_t>();
        obs.algorithm = rec.at("algorithm").get<std::string>();
        obs.config = detail::config_from_json(space, rec.at("config"));
        obs.objectives = rec.at("objectives").get<std::vector<double>>();
        obs.repetitions = rec.at("repetitions").get<int>();
        obs.wall_time_s = rec.at("wall_time_s").get<double>();
        return obs;
    } catch (const std::exception& e) {
        throw fail(e.what());
    }
}

void save_jsonl(const ObservationDataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("dataset: cannot write '" + path + "'");
    }
    for (const Observation& obs : ds.rows()) {
        out << observation_to_jsonl(ds.space(), obs) << '\n';
    }
    out.flush();
    if (!out) {
        throw std::runtime_error("dataset: write to '" + path + "' failed");
    }
}

std::vector<std::string> default_objective_names(std::size_t count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        names.push_back("f" + std::to_string(i + 1));
    }
    return names;
}

namespace {

ObservationDataset load_jsonl_impl(const std::string& path, const ParameterSpace& space,
                                   std::vector<std::string> objective_names, bool recover,
                                   std::uint64_t* valid_bytes) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("dataset: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::vector<Observation> parsed;
    std::size_t line_number = 0;
    std::uint64_t consumed = 0;
    std::size_t offset = 0;
    while (offset < text.size()) {
        const std::size_t nl = text.find('\n', offset);
        const bool has_newline = nl != std::string::npos;
        const std::size_t next = has_newline ? nl + 1 : text.size();
        const std::string line = text.substr(offset, (has_newline ? nl : text.size()) - offset);
        ++line_number;
        if (!line.empty()) {
            try {
                parsed.push_back(observation_from_jsonl(space, line, line_number));
            } catch (const std::exception& e) {
                // An interrupted writer can leave one partial final line
                // (no trailing newline); recovery drops exactly that case.
                if (recover && !has_newline) {
                    break;
                }
                throw std::runtime_error("dataset '" + path + "': " + e.what());
            }
        }
        consumed = next;
        offset = next;
    }
    std::size_t m = objective_names.size();
    if (m == 0) {
        m = parsed.empty() ? 1 : parsed.front().objectives.size();
        objective_names = default_objective_names(m);
    }
    ObservationDataset ds(space, std::move(objective_names));
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        try {
            ds.append(std::move(parsed[i]));
        } catch (const std::exception& e) {
            throw std::runtime_error("dataset '" + path + "': record " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    if (valid_bytes != nullptr) {
        *valid_bytes = consumed;
    }
    return ds;
}

} // namespace

ObservationDataset load_jsonl(const std::string& path, const ParameterSpace& space,
                              std::vector<std::string> objective_names) {
    return load_jsonl_impl(path, space, std::move(objective_names), false, nullptr);
}

std::pair<ObservationDataset, std::uint64_t>
load_jsonl_recover(const std::string& path, const ParameterSpace& space,
                   std::vector<std::string> objective_names) {
    std::uint64_t bytes = 0;
    ObservationDataset ds = load_jsonl_impl(path, space, std::move(objective_names), true, &bytes);
    return {std::move(ds), bytes};
}

} // namespace motune
