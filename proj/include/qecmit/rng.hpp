// Copyright 2026 qecmit Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECMIT_RNG_HPP
#define QECMIT_RNG_HPP

#include <cstdint>
#include <random>

namespace qecmit {

using RandomStream = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for substream `index` of `seed`. Each extra key gives a further level of nesting.
inline uint64_t derive_seed(uint64_t seed, uint64_t index, uint64_t key = 0) {
    uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ (key * 0xD6E8FEB86659FD93ULL));
    return h;
}

/// Counter-based stream: the result only depends on (seed, index, key).
inline RandomStream stream(uint64_t seed, uint64_t index, uint64_t key = 0) {
    return RandomStream(derive_seed(seed, index, key));
}

inline bool coin(RandomStream &rng) {
    return (rng() >> 63) != 0;
}

inline double uniform01(RandomStream &rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace qecmit

#endif
