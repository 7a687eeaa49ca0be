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

#ifndef MOTUNE_RNG_HPP
#define MOTUNE_RNG_HPP

#include <cstdint>
#include <random>

namespace motune {

/// Mixes two seeds into one (splitmix64 finalizer applied twice).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Deterministic random generator.
///
/// Wraps std::mt19937_64 but maps bits to values by hand, so streams do not
/// depend on the standard library's distribution implementations. Substreams
/// derived via stream() are independent and reproducible, which lets callers
/// key randomness to loop positions (row index, iteration, tree index) and
/// keep results identical under parallel scheduling or crash/resume.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform on [0, 1).
    double uniform01();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);

    /// Uniform integer on [lo, hi], inclusive and unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Standard normal via Box-Muller.
    double normal();

    /// Independent generator keyed by (stream_id, index).
    Rng stream(std::uint64_t stream_id, std::uint64_t index = 0) const;

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace motune

#endif
