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

#include "motune/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace motune {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = a;
    std::uint64_t h = splitmix64(state);
    state = h ^ b;
    return splitmix64(state);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t state = seed;
    engine_.seed(splitmix64(state));
}

std::uint64_t Rng::next_u64() {
    return engine_();
}

double Rng::uniform01() {
    // 53 random bits scaled into [0, 1).
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + uniform01() * (hi - lo);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
        throw std::invalid_argument("uniform_int: lo > hi");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) { // full 64-bit range
        return static_cast<std::int64_t>(next_u64());
    }
    // Rejection sampling to stay unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % span);
    std::uint64_t x = next_u64();
    while (x >= limit) {
        x = next_u64();
    }
    return lo + static_cast<std::int64_t>(x % span);
}

double Rng::normal() {
    const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Rng Rng::stream(std::uint64_t stream_id, std::uint64_t index) const {
    return Rng(mix_seed(mix_seed(seed_, stream_id), index));
}

} // namespace motune
