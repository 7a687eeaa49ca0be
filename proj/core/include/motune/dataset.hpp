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

#ifndef MOTUNE_DATASET_HPP
#define MOTUNE_DATASET_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "motune/space.hpp"

namespace motune {

/// One evaluated configuration with its aggregated objective vector.
struct Observation {
    Configuration config;
    std::vector<double> objectives;
    int repetitions = 1;
    std::int64_t iteration = 0;
    std::string algorithm;
    double wall_time_s = 0.0;

    bool operator==(const Observation&) const = default;
};

/// Append-only store of evaluated samples. Objectives are kept raw;
/// normalization is recomputed on demand because the running min/max
/// changes every iteration.
class ObservationDataset {
public:
    ObservationDataset(ParameterSpace space, std::vector<std::string> objective_names);

    const ParameterSpace& space() const { return space_; }
    const std::vector<std::string>& objective_names() const { return objective_names_; }
    std::size_t objective_count() const { return objective_names_.size(); }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    const Observation& row(std::size_t i) const { return rows_[i]; }
    const std::vector<Observation>& rows() const { return rows_; }

    /// Throws std::invalid_argument on dimension mismatch, invalid config
    /// values or non-finite objectives. Duplicates are permitted.
    void append(Observation obs);

    /// X: N x D encoded configs in the unit cube; Y: N x M raw objectives.
    /// Row order matches the dataset.
    std::pair<Eigen::MatrixXd, Eigen::MatrixXd> training_matrices() const;

    bool operator==(const ObservationDataset&) const = default;

private:
    ParameterSpace space_;
    std::vector<std::string> objective_names_;
    std::vector<Observation> rows_;
};

/// Column-wise min-max normalization into [0,1]^{N x M}. A degenerate
/// column (max == min) maps to all 0.5. Throws on non-finite input.
std::pair<Eigen::MatrixXd, std::vector<std::pair<double, double>>>
normalize_objectives(const Eigen::MatrixXd& y);

/// One JSON object per line:
/// {"iteration":int,"algorithm":str,"config":{...},"objectives":[...],
///  "repetitions":int,"wall_time_s":num}
/// Reals round-trip exactly (shortest representation that parses back
/// to the same double).
std::string observation_to_jsonl(const ParameterSpace& space, const Observation& obs);
Observation observation_from_jsonl(const ParameterSpace& space, const std::string& line,
                                   std::size_t line_number = 0);

void save_jsonl(const ObservationDataset& ds, const std::string& path);

/// Strict loader: any malformed line fails with its line number.
/// objective_names defaults to f1..fM when not given.
ObservationDataset load_jsonl(const std::string& path, const ParameterSpace& space,
                              std::vector<std::string> objective_names = {});

/// Crash-tolerant loader for resume: a malformed or truncated final line is
/// dropped (an interrupted writer may leave one); malformed interior lines
/// still fail. Returns the number of bytes holding the valid prefix so the
/// caller can truncate before appending.
std::pair<ObservationDataset, std::uint64_t>
load_jsonl_recover(const std::string& path, const ParameterSpace& space,
                   std::vector<std::string> objective_names = {});

std::vector<std::string> default_objective_names(std::size_t count);

} // namespace motune

#endif
