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

// Internal helpers shared by the JSONL/dataset code and the command
// evaluator wire protocol. Not installed.

#ifndef MOTUNE_SRC_JSON_UTIL_HPP
#define MOTUNE_SRC_JSON_UTIL_HPP

#include <json.hpp>

#include "motune/space.hpp"

namespace motune::detail {

/// {"name": value, ...} with categorical as string, integer as int,
/// continuous as double. Key order is alphabetical (nlohmann default),
/// which keeps serialized output byte-stable.
nlohmann::json config_to_json(const ParameterSpace& space, const Configuration& config);

/// Inverse of config_to_json; throws std::invalid_argument naming the
/// parameter on missing keys, type mismatches or out-of-domain values.
Configuration config_from_json(const ParameterSpace& space, const nlohmann::json& obj);

} // namespace motune::detail

#endif
