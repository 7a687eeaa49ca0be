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

#ifndef MOTUNE_PARETO_HPP
#define MOTUNE_PARETO_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "motune/space.hpp"

namespace motune {

/// Minimization dominance: a is no worse in every objective and strictly
/// better in at least one. Throws on length mismatch.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Indices of the non-dominated points (minimization). Duplicated
/// non-dominated vectors are all kept.
std::vector<std::size_t> pareto_front_indices(const std::vector<std::vector<double>>& points);

/// Non-dominated set of evaluated configurations (minimization sense).
/// Inserting a point removes every entry it newly dominates; dominated or
/// exactly duplicated points are rejected.
class ParetoArchive {
public:
    struct Entry {
        Configuration config;
        std::vector<double> objectives;
    };

    /// Returns whether the point was accepted.
    bool insert(Configuration config, std::vector<double> objectives);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<Entry> entries_;
};

/// Exact staircase hypervolume for two minimized objectives. Points with any
/// coordinate at or beyond the reference are clipped out (contribute 0);
/// an empty surviving front yields 0.
double hypervolume_2d(std::vector<std::array<double, 2>> front, std::array<double, 2> ref);

/// Monte Carlo hypervolume for M >= 2: fraction of the box spanned by the
/// front's ideal corner and the reference that the front dominates, scaled
/// by the box volume. Deterministic given the seed.
double hypervolume_mc(const std::vector<std::vector<double>>& front,
                      const std::vector<double>& ref, int samples = 100000,
                      std::uint64_t seed = 0);

/// Front CSV: header "<param names...>,<objective names...>", one row per
/// entry, rows sorted by first objective ascending.
void write_front_csv(std::ostream& out, const ParameterSpace& space,
                     const std::vector<std::string>& objective_names,
                     const std::vector<ParetoArchive::Entry>& entries);

/// Shortest decimal rendering that parses back to the same double; shared by
/// the CSV writers so emitted numbers are byte-stable.
std::string format_double(double value);

} // namespace motune

#endif
