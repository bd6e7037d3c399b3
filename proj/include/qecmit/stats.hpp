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

#ifndef QECMIT_STATS_HPP
#define QECMIT_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qecmit {

struct RateEstimate {
    uint64_t successes = 0;
    uint64_t trials = 0;
    double rate = 0;
    double lo = 0;
    double hi = 0;

    double width() const {
        return hi - lo;
    }
    bool disjoint_from(const RateEstimate &other) const {
        return hi < other.lo || other.hi < lo;
    }
};

/// Wilson score interval at the given normal quantile (1.96 for 95%).
inline RateEstimate wilson(uint64_t successes, uint64_t trials, double z = 1.959963984540054) {
    if (trials == 0) {
        throw std::invalid_argument("wilson: trials must be positive");
    }
    if (successes > trials) {
        throw std::invalid_argument("wilson: successes exceed trials");
    }
    RateEstimate r;
    r.successes = successes;
    r.trials = trials;
    double n = (double)trials;
    double p = (double)successes / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    r.rate = p;
    r.lo = std::max(0.0, center - half);
    r.hi = std::min(1.0, center + half);
    if (successes == 0) {
        r.lo = 0;
    }
    if (successes == trials) {
        r.hi = 1;
    }
    return r;
}

}  // namespace qecmit

#endif
