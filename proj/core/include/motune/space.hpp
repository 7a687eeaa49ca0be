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

#ifndef MOTUNE_SPACE_HPP
#define MOTUNE_SPACE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "motune/rng.hpp"

namespace motune {

enum class Scale { linear, log };

struct CategoricalSpec {
    std::vector<std::string> values; // ordered; index order defines the embedding

    bool operator==(const CategoricalSpec&) const = default;
};

struct IntegerSpec {
    std::int64_t min = 0;
    std::int64_t max = 0; // inclusive

    bool operator==(const IntegerSpec&) const = default;
};

struct ContinuousSpec {
    double min = 0.0;
    double max = 0.0;
    Scale scale = Scale::linear;

    bool operator==(const ContinuousSpec&) const = default;
};

struct ParameterSpec {
    std::string name;
    std::variant<CategoricalSpec, IntegerSpec, ContinuousSpec> kind;

    bool operator==(const ParameterSpec&) const = default;
};

/// A point value: category name, integer, or real, matching the spec kind.
using ParamValue = std::variant<std::string, std::int64_t, double>;

struct Configuration {
    std::vector<ParamValue> values; // aligned with ParameterSpace::params()

    bool operator==(const Configuration&) const = default;
};

/// Point in [0,1]^D; axis i corresponds to parameter i.
using UnitVector = std::vector<double>;

/// Ordered list of parameters. Ordering is stable and defines the unit-cube
/// axis order used by encode/decode and every consumer downstream.
class ParameterSpace {
public:
    ParameterSpace() = default;
    explicit ParameterSpace(std::vector<ParameterSpec> params) : params_(std::move(params)) {}

    std::size_t dimension() const { return params_.size(); }
    const ParameterSpec& param(std::size_t i) const { return params_[i]; }
    const std::vector<ParameterSpec>& params() const { return params_; }

    bool operator==(const ParameterSpace&) const = default;

private:
    std::vector<ParameterSpec> params_;
};

/// All invariant violations of the space; empty means well formed.
/// Violations are data, not exceptions: a loader reports them all at once.
std::vector<std::string> validate(const ParameterSpace& space);

/// Maps a configuration into [0,1]^D. Categorical index i of k values maps to
/// the bin midpoint (i + 0.5) / k; integers and reals map affinely (reals on
/// the log line when scale is log). Throws std::invalid_argument naming the
/// parameter when a value is outside its domain.
UnitVector encode(const ParameterSpace& space, const Configuration& config);

/// Inverse of encode, total on [0,1]^D (coordinates are clamped to [0,1]).
/// decode(encode(c)) == c exactly for categorical/integer values and within
/// 1e-12 relative error for continuous ones.
Configuration decode(const ParameterSpace& space, std::span<const double> unit);

/// Uniform sample: decode of a uniform unit vector.
Configuration sample_random(const ParameterSpace& space, Rng& rng);

/// Natural log of the (proxy) number of distinct configurations: log k per
/// categorical, log(max - min + 1) per integer and log(resolution) per
/// continuous dimension. Additive over concatenated spaces.
double log_cardinality(const ParameterSpace& space, int continuous_resolution = 100);

/// JSON space file support, schema:
/// {"params":[{"name":...,"kind":"categorical","values":[...]} |
///            {"name":...,"kind":"integer","min":...,"max":...} |
///            {"name":...,"kind":"continuous","min":...,"max":...,"scale":"linear"|"log"}]}
ParameterSpace parse_space_json(const std::string& json_text);
ParameterSpace load_space(const std::string& path);
std::string space_to_json(const ParameterSpace& space);

/// Human-readable rendering of a single value ("64", "0.001", "2.9GHz").
std::string param_value_to_string(const ParamValue& value);

} // namespace motune

#endif
