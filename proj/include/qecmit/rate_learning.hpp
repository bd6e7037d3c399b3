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

#ifndef QECMIT_RATE_LEARNING_HPP
#define QECMIT_RATE_LEARNING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecmit/rng.hpp"

namespace qecmit {

/// f(p) = (1 + (1 - 2e)^p) / 2.
inline double decay_f(double eps_bar, uint64_t p) {
    return 0.5 * (1 + std::pow(1 - 2 * eps_bar, (double)p));
}

/// Fraction of +1 outcomes when |+> goes through p noisy T gates and is measured in the X basis.
/// Since T^p is the identity for p = 0 mod 8, each shot reduces to p independent Z flips with
/// probability e; the number of flips per shot is drawn from the matching binomial law.
inline double simulate_f(double eps_bar, uint64_t p, uint64_t shots, RandomStream &rng) {
    if (!(eps_bar >= 0 && eps_bar <= 1)) {
        throw std::invalid_argument("simulate_f: eps_bar must be in [0, 1]");
    }
    if (shots == 0) {
        throw std::invalid_argument("simulate_f: shots must be positive");
    }
    if (p == 0) {
        return 1.0;
    }
    std::binomial_distribution<uint64_t> flips(p, eps_bar);
    uint64_t plus = 0;
    for (uint64_t s = 0; s < shots; s++) {
        plus += (flips(rng) & 1) == 0;
    }
    return (double)plus / (double)shots;
}

struct DecayPoint {
    uint64_t p = 0;
    double f_hat = 1;
    uint64_t shots = 1;
};

struct DecayDataset {
    std::vector<DecayPoint> points;

    void validate() const {
        for (const DecayPoint &pt : points) {
            if (pt.p % 8 != 0) {
                throw std::invalid_argument("DecayDataset: p must be a multiple of 8");
            }
            if (pt.shots == 0) {
                throw std::invalid_argument("DecayDataset: shots must be positive");
            }
            if (!(pt.f_hat >= 0 && pt.f_hat <= 1)) {
                throw std::invalid_argument("DecayDataset: f_hat must be in [0, 1]");
            }
        }
    }
};

struct RateFit {
    double eps_bar = 0;
    double std_error = 0;
    double slope = 0;
    double intercept = 0;
    size_t points_used = 0;
    std::vector<std::string> warnings;
};

/// Weighted least squares of y = ln(2 f - 1) against p. The variance of each y uses the
/// binomial variance at f = (count + 1/2) / (shots + 1), propagated through the logarithm.
inline RateFit fit_error_rate(const DecayDataset &data) {
    data.validate();
    RateFit fit;
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    std::set<uint64_t> distinct;
    for (const DecayPoint &pt : data.points) {
        if (pt.f_hat <= 0.5) {
            fit.warnings.push_back("p=" + std::to_string(pt.p) + " excluded: f_hat <= 1/2");
            continue;
        }
        double n = (double)pt.shots;
        double f = (std::round(pt.f_hat * n) + 0.5) / (n + 1);
        double var_f = f * (1 - f) / n;
        double g = 2 * pt.f_hat - 1;
        double var_y = 4 * var_f / (g * g);
        double w = 1 / var_y;
        double x = (double)pt.p;
        double y = std::log(g);
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
        distinct.insert(pt.p);
        fit.points_used++;
    }
    if (fit.points_used == 0) {
        throw std::invalid_argument("fit_error_rate: no usable points (all f_hat <= 1/2)");
    }
    if (distinct.size() < 2) {
        throw std::invalid_argument("fit_error_rate: at least two distinct p values are required");
    }
    double det = sw * swxx - swx * swx;
    fit.slope = (sw * swxy - swx * swy) / det;
    fit.intercept = (swy - fit.slope * swx) / sw;
    double slope_se = std::sqrt(sw / det);
    fit.eps_bar = (1 - std::exp(fit.slope)) / 2;
    fit.std_error = slope_se * std::exp(fit.slope) / 2;
    return fit;
}

/// p = 8, 16, ..., 8 k_max with (1 - 2 e)^(8 k_max) close to 0.1.
inline std::vector<uint64_t> default_grid(double eps_prior, uint64_t max_k = 64) {
    uint64_t k_max = eps_prior >= 0.5 ? 2 : max_k;
    if (eps_prior > 0 && eps_prior < 0.5) {
        double k = std::log(0.1) / (8 * std::log(1 - 2 * eps_prior));
        k_max = (uint64_t)std::clamp(std::floor(k), 2.0, (double)max_k);
    }
    std::vector<uint64_t> grid;
    for (uint64_t k = 1; k <= k_max; k++) {
        grid.push_back(8 * k);
    }
    return grid;
}

inline DecayDataset simulate_dataset(double eps_bar, const std::vector<uint64_t> &grid, uint64_t shots, uint64_t seed,
                                     uint64_t key = 0) {
    DecayDataset d;
    for (size_t i = 0; i < grid.size(); i++) {
        RandomStream rng = stream(seed, i, 3 + key);
        d.points.push_back({grid[i], simulate_f(eps_bar, grid[i], shots, rng), shots});
    }
    return d;
}

struct LearningRun {
    RateFit pilot;
    DecayDataset data;
    RateFit fit;
};

/// Two-point pilot at p = 8, 16, then the default grid around the pilot estimate.
inline LearningRun learn_error_rate(double eps_bar, uint64_t shots, uint64_t seed) {
    LearningRun run;
    DecayDataset pilot = simulate_dataset(eps_bar, {8, 16}, shots, seed, 0);
    double prior = 0;
    try {
        run.pilot = fit_error_rate(pilot);
        prior = run.pilot.eps_bar;
    } catch (const std::invalid_argument &) {
        prior = 0.5;
        run.pilot.warnings.push_back("pilot fit failed; using the shortest grid");
    }
    run.data = simulate_dataset(eps_bar, default_grid(prior), shots, seed, 1);
    run.fit = fit_error_rate(run.data);
    return run;
}

}  // namespace qecmit

#endif
