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

#include "motune/pareto.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "motune/rng.hpp"

namespace motune {

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dominates: length mismatch");
    }
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
        if (a[i] < b[i]) {
            strict = true;
        }
    }
    return strict;
}

std::vector<std::size_t> pareto_front_indices(const std::vector<std::vector<double>>& points) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            if (i != j && dominates(points[j], points[i])) {
                dominated = true;
            }
        }
        if (!dominated) {
            front.push_back(i);
        }
    }
    return front;
}

bool ParetoArchive::insert(Configuration config, std::vector<double> objectives) {
    for (const Entry& entry : entries_) {
        if (entry.objectives.size() != objectives.size()) {
            throw std::invalid_argument("archive: objective count mismatch");
        }
        if (entry.objectives == objectives || dominates(entry.objectives, objectives)) {
            return false;
        }
    }
    std::erase_if(entries_, [&](const Entry& entry) {
        return dominates(objectives, entry.objectives);
    });
    entries_.push_back(Entry{std::move(config), std::move(objectives)});
    return true;
}

double hypervolume_2d(std::vector<std::array<double, 2>> front, std::array<double, 2> ref) {
    std::erase_if(front, [&](const std::array<double, 2>& p) {
        return p[0] >= ref[0] || p[1] >= ref[1];
    });
    if (front.empty()) {
        return 0.0;
    }
    // Keep the non-dominated staircase corners only.
    std::sort(front.begin(), front.end());
    std::vector<std::array<double, 2>> corners;
    for (const auto& p : front) {
        if (corners.empty() || p[1] < corners.back()[1]) {
            corners.push_back(p);
        }
    }
    double hv = 0.0;
    for (std::size_t i = 0; i < corners.size(); ++i) {
        const double next_x = i + 1 < corners.size() ? corners[i + 1][0] : ref[0];
        hv += (next_x - corners[i][0]) * (ref[1] - corners[i][1]);
    }
    return hv;
}

double hypervolume_mc(const std::vector<std::vector<double>>& front,
                      const std::vector<double>& ref, int samples, std::uint64_t seed) {
    const std::size_t m = ref.size();
    if (m < 2) {
        throw std::invalid_argument("hypervolume_mc: need M >= 2 objectives");
    }
    if (samples < 1) {
        throw std::invalid_argument("hypervolume_mc: need >= 1 sample");
    }
    std::vector<std::vector<double>> kept;
    for (const auto& p : front) {
        if (p.size() != m) {
            throw std::invalid_argument("hypervolume_mc: point/reference length mismatch");
        }
        bool inside = true;
        for (std::size_t j = 0; j < m; ++j) {
            if (p[j] >= ref[j]) {
                inside = false;
                break;
            }
        }
        if (inside) {
            kept.push_back(p);
        }
    }
    if (kept.empty()) {
        return 0.0;
    }
    std::vector<double> corner(m);
    for (std::size_t j = 0; j < m; ++j) {
        corner[j] = kept.front()[j];
        for (const auto& p : kept) {
            corner[j] = std::min(corner[j], p[j]);
        }
    }
    double box_volume = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
        box_volume *= ref[j] - corner[j];
    }
    Rng rng(seed);
    std::vector<double> point(m);
    std::int64_t dominated = 0;
    for (int s = 0; s < samples; ++s) {
        for (std::size_t j = 0; j < m; ++j) {
            point[j] = corner[j] + rng.uniform01() * (ref[j] - corner[j]);
        }
        for (const auto& p : kept) {
            bool covers = true;
            for (std::size_t j = 0; j < m; ++j) {
                if (p[j] > point[j]) {
                    covers = false;
                    break;
                }
            }
            if (covers) {
                ++dominated;
                break;
            }
        }
    }
    return box_volume * static_cast<double>(dominated) / static_cast<double>(samples);
}

void write_front_csv(std::ostream& out, const ParameterSpace& space,
                     const std::vector<std::string>& objective_names,
                     const std::vector<ParetoArchive::Entry>& entries) {
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        out << space.param(i).name << ',';
    }
    for (std::size_t j = 0; j < objective_names.size(); ++j) {
        out << objective_names[j] << (j + 1 < objective_names.size() ? "," : "");
    }
    out << '\n';

    std::vector<std::size_t> order(entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return entries[a].objectives.front() < entries[b].objectives.front();
    });
    for (std::size_t idx : order) {
        const ParetoArchive::Entry& entry = entries[idx];
        for (const ParamValue& value : entry.config.values) {
            out << param_value_to_string(value) << ',';
        }
        for (std::size_t j = 0; j < entry.objectives.size(); ++j) {
            out << format_double(entry.objectives[j])
                << (j + 1 < entry.objectives.size() ? "," : "");
        }
        out << '\n';
    }
}

std::string format_double(double value) {
    return nlohmann::json(value).dump();
}

} // namespace motune
