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

#include "motune/space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace motune {

namespace {

using nlohmann::json;

double clamp01(double u) {
    return std::clamp(u, 0.0, 1.0);
}

[[noreturn]] void domain_error(const std::string& param, const std::string& what) {
    throw std::invalid_argument("parameter '" + param + "': " + what);
}

} // namespace

std::vector<std::string> validate(const ParameterSpace& space) {
    std::vector<std::string> violations;
    std::set<std::string> seen;
    for (const ParameterSpec& spec : space.params()) {
        if (spec.name.empty()) {
            violations.push_back("empty parameter name");
        }
        if (!seen.insert(spec.name).second) {
            violations.push_back("duplicate name '" + spec.name + "'");
        }
        if (const auto* cat = std::get_if<CategoricalSpec>(&spec.kind)) {
            if (cat->values.size() < 2) {
                violations.push_back("parameter '" + spec.name + "': categorical needs >= 2 values");
            }
            std::set<std::string> cats(cat->values.begin(), cat->values.end());
            if (cats.size() != cat->values.size()) {
                violations.push_back("parameter '" + spec.name + "': duplicate category value");
            }
        } else if (const auto* iv = std::get_if<IntegerSpec>(&spec.kind)) {
            if (!(iv->min < iv->max)) {
                violations.push_back("parameter '" + spec.name + "': min < max required");
            }
        } else if (const auto* cv = std::get_if<ContinuousSpec>(&spec.kind)) {
            if (!std::isfinite(cv->min) || !std::isfinite(cv->max)) {
                violations.push_back("parameter '" + spec.name + "': bounds must be finite");
            } else if (!(cv->min < cv->max)) {
                violations.push_back("parameter '" + spec.name + "': min < max required");
            } else if (cv->scale == Scale::log && !(cv->min > 0.0)) {
                violations.push_back("parameter '" + spec.name + "': log scale requires min > 0");
            }
        }
    }
    return violations;
}

UnitVector encode(const ParameterSpace& space, const Configuration& config) {
    if (config.values.size() != space.dimension()) {
        throw std::invalid_argument("encode: configuration has " + std::to_string(config.values.size()) +
                                    " values, space has " + std::to_string(space.dimension()));
    }
    UnitVector u(space.dimension());
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        const ParameterSpec& spec = space.param(i);
        const ParamValue& value = config.values[i];
        if (const auto* cat = std::get_if<CategoricalSpec>(&spec.kind)) {
            const auto* s = std::get_if<std::string>(&value);
            if (s == nullptr) {
                domain_error(spec.name, "expected a category name");
            }
            const auto it = std::find(cat->values.begin(), cat->values.end(), *s);
            if (it == cat->values.end()) {
                domain_error(spec.name, "unknown category '" + *s + "'");
            }
            const double k = static_cast<double>(cat->values.size());
            const double index = static_cast<double>(it - cat->values.begin());
            u[i] = (index + 0.5) / k;
        } else if (const auto* iv = std::get_if<IntegerSpec>(&spec.kind)) {
            const auto* v = std::get_if<std::int64_t>(&value);
            if (v == nullptr) {
                domain_error(spec.name, "expected an integer");
            }
            if (*v < iv->min || *v > iv->max) {
                domain_error(spec.name, "value " + std::to_string(*v) + " outside [" +
                                            std::to_string(iv->min) + ", " + std::to_string(iv->max) + "]");
            }
            u[i] = static_cast<double>(*v - iv->min) / static_cast<double>(iv->max - iv->min);
        } else {
            const auto& cv = std::get<ContinuousSpec>(spec.kind);
            const auto* v = std::get_if<double>(&value);
            if (v == nullptr) {
                domain_error(spec.name, "expected a real");
            }
            if (!std::isfinite(*v) || *v < cv.min || *v > cv.max) {
                std::ostringstream oss;
                oss << "value " << *v << " outside [" << cv.min << ", " << cv.max << "]";
                domain_error(spec.name, oss.str());
            }
            if (cv.scale == Scale::log) {
                u[i] = (std::log(*v) - std::log(cv.min)) / (std::log(cv.max) - std::log(cv.min));
            } else {
                u[i] = (*v - cv.min) / (cv.max - cv.min);
            }
            u[i] = clamp01(u[i]);
        }
    }
    return u;
}

Configuration decode(const ParameterSpace& space, std::span<const double> unit) {
    if (unit.size() != space.dimension()) {
        throw std::invalid_argument("decode: unit vector has " + std::to_string(unit.size()) +
                                    " coords, space has " + std::to_string(space.dimension()));
    }
    Configuration config;
    config.values.reserve(space.dimension());
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        const ParameterSpec& spec = space.param(i);
        const double u = clamp01(unit[i]);
        if (const auto* cat = std::get_if<CategoricalSpec>(&spec.kind)) {
            const auto k = static_cast<std::int64_t>(cat->values.size());
            const auto index = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(u * static_cast<double>(k))), k - 1);
            config.values.emplace_back(cat->values[static_cast<std::size_t>(index)]);
        } else if (const auto* iv = std::get_if<IntegerSpec>(&spec.kind)) {
            const double raw = static_cast<double>(iv->min) + u * static_cast<double>(iv->max - iv->min);
            const auto v = std::clamp<std::int64_t>(std::llround(raw), iv->min, iv->max);
            config.values.emplace_back(v);
        } else {
            const auto& cv = std::get<ContinuousSpec>(spec.kind);
            double v;
            if (cv.scale == Scale::log) {
                v = std::exp(std::log(cv.min) + u * (std::log(cv.max) - std::log(cv.min)));
            } else {
                v = cv.min + u * (cv.max - cv.min);
            }
            config.values.emplace_back(std::clamp(v, cv.min, cv.max));
        }
    }
    return config;
}

Configuration sample_random(const ParameterSpace& space, Rng& rng) {
    UnitVector u(space.dimension());
    for (double& coord : u) {
        coord = rng.uniform01();
    }
    return decode(space, u);
}

double log_cardinality(const ParameterSpace& space, int continuous_resolution) {
    if (continuous_resolution < 1) {
        throw std::invalid_argument("log_cardinality: resolution must be positive");
    }
    double total = 0.0;
    for (const ParameterSpec& spec : space.params()) {
        if (const auto* cat = std::get_if<CategoricalSpec>(&spec.kind)) {
            total += std::log(static_cast<double>(cat->values.size()));
        } else if (const auto* iv = std::get_if<IntegerSpec>(&spec.kind)) {
            total += std::log(static_cast<double>(iv->max - iv->min + 1));
        } else {
            total += std::log(static_cast<double>(continuous_resolution));
        }
    }
    return total;
}

namespace {

ParameterSpec parse_param(const json& p) {
    if (!p.is_object() || !p.contains("name") || !p.contains("kind")) {
        throw std::invalid_argument("space: each param needs \"name\" and \"kind\"");
    }
    ParameterSpec spec;
    spec.name = p.at("name").get<std::string>();
    const std::string kind = p.at("kind").get<std::string>();
    if (kind == "categorical") {
        CategoricalSpec cat;
        for (const json& v : p.at("values")) {
            cat.values.push_back(v.get<std::string>());
        }
        spec.kind = cat;
    } else if (kind == "integer") {
        IntegerSpec iv;
        iv.min = p.at("min").get<std::int64_t>();
        iv.max = p.at("max").get<std::int64_t>();
        spec.kind = iv;
    } else if (kind == "continuous") {
        ContinuousSpec cv;
        cv.min = p.at("min").get<double>();
        cv.max = p.at("max").get<double>();
        const std::string scale = p.value("scale", "linear");
        if (scale == "linear") {
            cv.scale = Scale::linear;
        } else if (scale == "log") {
            cv.scale = Scale::log;
        } else {
            throw std::invalid_argument("parameter '" + spec.name + "': unknown scale '" + scale + "'");
        }
        spec.kind = cv;
    } else {
        throw std::invalid_argument("parameter '" + spec.name + "': unknown kind '" + kind + "'");
    }
    return spec;
}

} // namespace

ParameterSpace parse_space_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("space: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("params") || !doc.at("params").is_array()) {
        throw std::invalid_argument("space: expected an object with a \"params\" array");
    }
    std::vector<ParameterSpec> params;
    for (const json& p : doc.at("params")) {
        params.push_back(parse_param(p));
    }
    return ParameterSpace(std::move(params));
}

ParameterSpace load_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("space: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_space_json(buffer.str());
}

std::string space_to_json(const ParameterSpace& space) {
    json params = json::array();
    for (const ParameterSpec& spec : space.params()) {
        json p;
        p["name"] = spec.name;
        if (const auto* cat = std::get_if<CategoricalSpec>(&spec.kind)) {
            p["kind"] = "categorical";
            p["values"] = cat->values;
        } else if (const auto* iv = std::get_if<IntegerSpec>(&spec.kind)) {
            p["kind"] = "integer";
            p["min"] = iv->min;
            p["max"] = iv->max;
        } else {
            const auto& cv = std::get<ContinuousSpec>(spec.kind);
            p["kind"] = "continuous";
            p["min"] = cv.min;
            p["max"] = cv.max;
            p["scale"] = cv.scale == Scale::log ? "log" : "linear";
        }
        params.push_back(std::move(p));
    }
    json doc;
    doc["params"] = std::move(params);
    return doc.dump(2);
}

std::string param_value_to_string(const ParamValue& value) {
    if (const auto* s = std::get_if<std::string>(&value)) {
        return *s;
    }
    if (const auto* i = std::get_if<std::int64_t>(&value)) {
        return std::to_string(*i);
    }
    return json(std::get<double>(value)).dump();
}

} // namespace motune
