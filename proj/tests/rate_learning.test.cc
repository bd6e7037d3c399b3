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

#include "qecmit/rate_learning.hpp"

#include <gtest/gtest.h>

#include "qecmit/mitigation.hpp"

using namespace qecmit;

namespace {

// f(p) from p applications of the noisy T channel to |+>, measured in the X basis.
double dense_f(double eps_bar, int p) {
    Vector plus(2);
    plus << 1, 1;
    DensityMatrix rho = DensityMatrix::pure(plus);
    Channel t = noisy_t_channel(eps_bar);
    for (int k = 0; k < p; k++) {
        rho = t.apply(rho);
    }
    return 0.5 * (1 + rho.expectation_real(PauliString::from_str("X")));
}

DecayDataset exact_data(double eps_bar, uint64_t shots) {
    DecayDataset d;
    for (uint64_t p = 8; p <= 64; p += 8) {
        d.points.push_back({p, decay_f(eps_bar, p), shots});
    }
    return d;
}

}  // namespace

TEST(rate_learning, closed_form_matches_dense_channel) {
    for (double e : {0.0, 0.01, 0.05, 0.2, 0.5}) {
        for (int p : {0, 8, 16, 24}) {
            EXPECT_NEAR(decay_f(e, p), dense_f(e, p), 1e-12) << e << " " << p;
        }
    }
    EXPECT_NEAR(dense_f(0.05, 8), 0.7152336, 1e-7);
}

TEST(rate_learning, simulate_f_examples) {
    RandomStream rng(1);
    EXPECT_EQ(simulate_f(0.3, 0, 10, rng), 1.0);
    uint64_t shots = 100000;
    double sigma = std::sqrt(0.25 / shots);
    EXPECT_NEAR(simulate_f(0.5, 8, shots, rng), 0.5, 4 * sigma);
    double f = dense_f(0.05, 8);
    EXPECT_NEAR(simulate_f(0.05, 8, shots, rng), f, 4 * std::sqrt(f * (1 - f) / shots));
    EXPECT_THROW(simulate_f(0.1, 8, 0, rng), std::invalid_argument);
}

TEST(rate_learning, exact_data_recovers_rate) {
    RateFit fit = fit_error_rate(exact_data(0.02, 100000));
    EXPECT_NEAR(fit.eps_bar, 0.02, 1e-9);
    EXPECT_NEAR(fit.intercept, 0.0, 1e-9);
    EXPECT_EQ(fit.points_used, 8u);
    EXPECT_TRUE(fit.warnings.empty());
}

TEST(rate_learning, preconditions) {
    DecayDataset one;
    one.points.push_back({8, 0.9, 1000});
    one.points.push_back({8, 0.91, 1000});
    EXPECT_THROW(fit_error_rate(one), std::invalid_argument);
    DecayDataset bad_p;
    bad_p.points.push_back({12, 0.9, 1000});
    EXPECT_THROW(fit_error_rate(bad_p), std::invalid_argument);
    DecayDataset saturated;
    saturated.points.push_back({8, 0.5, 1000});
    saturated.points.push_back({16, 0.4, 1000});
    EXPECT_THROW(fit_error_rate(saturated), std::invalid_argument);
    DecayDataset partly = exact_data(0.02, 100000);
    partly.points.push_back({800, 0.49, 100000});
    RateFit fit = fit_error_rate(partly);
    EXPECT_EQ(fit.warnings.size(), 1u);
    EXPECT_EQ(fit.points_used, 8u);
    EXPECT_NEAR(fit.eps_bar, 0.02, 1e-9);
}

TEST(rate_learning, calibration_at_two_percent) {
    std::vector<uint64_t> grid;
    for (uint64_t p = 8; p <= 64; p += 8) {
        grid.push_back(p);
    }
    int good = 0;
    int covered = 0;
    for (uint64_t r = 0; r < 100; r++) {
        RateFit fit = fit_error_rate(simulate_dataset(0.02, grid, 100000, r));
        good += std::abs(fit.eps_bar - 0.02) / 0.02 < 0.1;
        covered += std::abs(fit.eps_bar - 0.02) < 2 * fit.std_error;
    }
    EXPECT_GE(good, 95);
    // The regression error bar is roughly calibrated.
    EXPECT_GE(covered, 85);
}

TEST(rate_learning, error_decreases_with_shots) {
    double previous = 1;
    for (uint64_t shots : {1000, 10000, 100000}) {
        double total = 0;
        for (uint64_t r = 0; r < 50; r++) {
            total += std::abs(learn_error_rate(0.02, shots, 1000 + r).fit.eps_bar - 0.02);
        }
        double mean = total / 50;
        EXPECT_LT(mean, previous) << shots;
        previous = mean;
    }
}

TEST(rate_learning, zero_rate) {
    RandomStream rng(2);
    DecayDataset d = simulate_dataset(0.0, {8, 16, 24, 32}, 10000, 3);
    for (const DecayPoint &pt : d.points) {
        EXPECT_EQ(pt.f_hat, 1.0);
    }
    RateFit fit = fit_error_rate(d);
    EXPECT_GT(fit.std_error, 0);
    EXPECT_LE(std::abs(fit.eps_bar), fit.std_error);
}

TEST(rate_learning, default_grid_keeps_signal) {
    std::vector<uint64_t> g = default_grid(0.02);
    ASSERT_GE(g.size(), 2u);
    EXPECT_EQ(g.front(), 8u);
    EXPECT_GE(std::pow(0.96, (double)g.back()), 0.1);
    EXPECT_LT(std::pow(0.96, (double)(g.back() + 8)), 0.1);
    EXPECT_EQ(default_grid(0.45).size(), 2u);
    EXPECT_EQ(default_grid(0.0).size(), 64u);
    LearningRun run = learn_error_rate(0.05, 100000, 7);
    EXPECT_NEAR(run.fit.eps_bar, 0.05, 4 * run.fit.std_error);
    EXPECT_EQ(run.data.points.size(), default_grid(run.pilot.eps_bar).size());
}
