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

#ifndef QECMIT_PLANNER_HPP
#define QECMIT_PLANNER_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qecmit {

/// exact: gamma = 1/(1 - 2 kappa eps). first_order: gamma = 1 + 2 kappa eps.
/// doubled_kappa: gamma = 1/(1 - 4 kappa eps), the convention behind the reference maximal
/// T-count curves (for example 214.136 at eps = 1e-2, total cost 1e3, kappa = 2/5).
enum class GammaMode { exact, first_order, doubled_kappa };

inline const char *mode_name(GammaMode m) {
    switch (m) {
        case GammaMode::exact:
            return "exact";
        case GammaMode::first_order:
            return "first_order";
        case GammaMode::doubled_kappa:
            return "doubled_kappa";
    }
    return "?";
}

inline GammaMode parse_mode(const std::string &s) {
    if (s == "exact") {
        return GammaMode::exact;
    }
    if (s == "first_order") {
        return GammaMode::first_order;
    }
    if (s == "doubled_kappa") {
        return GammaMode::doubled_kappa;
    }
    throw std::invalid_argument("unknown gamma mode '" + s + "'");
}

constexpr double kMagicStateKappa = 0.4;
constexpr double kCodeSwitchingKappa = 30;
constexpr double kClassicalBase = 1.3831;

struct OverheadModel {
    double kappa = kMagicStateKappa;
    GammaMode mode = GammaMode::exact;

    void validate(double epsilon) const {
        if (!(kappa > 0)) {
            throw std::invalid_argument("OverheadModel: kappa must be positive");
        }
        if (!(epsilon >= 0)) {
            throw std::invalid_argument("OverheadModel: epsilon must be non-negative");
        }
        if (mode == GammaMode::exact && 2 * kappa * epsilon >= 1) {
            throw std::invalid_argument("OverheadModel: exact mode needs 2 kappa eps < 1");
        }
        if (mode == GammaMode::doubled_kappa && 4 * kappa * epsilon >= 1) {
            throw std::invalid_argument("OverheadModel: doubled_kappa mode needs 4 kappa eps < 1");
        }
    }
};

/// Natural log of gamma, computed without cancellation for small eps.
inline double log_gamma(const OverheadModel &m, double epsilon) {
    m.validate(epsilon);
    double x = 2 * m.kappa * epsilon;
    switch (m.mode) {
        case GammaMode::exact:
            return -std::log1p(-x);
        case GammaMode::first_order:
            return std::log1p(x);
        case GammaMode::doubled_kappa:
            return -std::log1p(-2 * x);
    }
    return 0;
}

inline double gamma(const OverheadModel &m, double epsilon) {
    return std::exp(log_gamma(m, epsilon));
}

/// eta = ln(total cost) / (4 kappa).
inline double eta(double kappa, double total_cost) {
    return std::log(total_cost) / (4 * kappa);
}

/// ln(total cost) / (2 ln gamma); infinity when gamma = 1.
inline double max_t_count(const OverheadModel &m, double epsilon, double total_cost) {
    if (!(total_cost >= 1)) {
        throw std::invalid_argument("max_t_count: total cost must be at least 1");
    }
    double lg = log_gamma(m, epsilon);
    if (total_cost == 1) {
        return 0;
    }
    if (lg <= 0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::log(total_cost) / (2 * lg);
}

/// gamma_total^2 / delta^2, an order-of-magnitude figure with unit constant.
inline double shots_required(double gamma_total, double delta) {
    if (!(delta > 0)) {
        throw std::invalid_argument("shots_required: delta must be positive");
    }
    return gamma_total * gamma_total / (delta * delta);
}

struct ComparisonRow {
    uint64_t t = 0;
    std::string conventional;
    double qpd = 1;
    double classical = 1;
};

inline ComparisonRow comparison_row(const OverheadModel &m, double epsilon, uint64_t t) {
    ComparisonRow r;
    r.t = t;
    r.conventional = t == 0 ? "O(1)" : "O(" + std::to_string(t) + ")";
    r.qpd = std::exp(2 * (double)t * log_gamma(m, epsilon));
    r.classical = std::pow(kClassicalBase, (double)t);
    return r;
}

inline std::vector<ComparisonRow> comparison_table(const OverheadModel &m, double epsilon, const std::vector<uint64_t> &ts) {
    std::vector<ComparisonRow> rows;
    for (uint64_t t : ts) {
        rows.push_back(comparison_row(m, epsilon, t));
    }
    return rows;
}

/// Smallest t <= t_max where the QPD overhead exceeds the classical one.
inline std::optional<uint64_t> crossover(const OverheadModel &m, double epsilon, uint64_t t_max) {
    double lq = 2 * log_gamma(m, epsilon);
    double lc = std::log(kClassicalBase);
    for (uint64_t t = 1; t <= t_max; t++) {
        if ((double)t * lq > (double)t * lc) {
            return t;
        }
    }
    return std::nullopt;
}

struct CurvePoint {
    double epsilon = 0;
    double total_cost = 1;
    double gamma = 1;
    double max_t = 0;
    double eta_over_eps = 0;
};

/// Maximal T-count over an epsilon grid, for each total cost.
inline std::vector<CurvePoint> t_count_curve(const OverheadModel &m, const std::vector<double> &epsilons,
                                             const std::vector<double> &total_costs) {
    std::vector<CurvePoint> pts;
    for (double c : total_costs) {
        for (double e : epsilons) {
            CurvePoint p;
            p.epsilon = e;
            p.total_cost = c;
            p.gamma = gamma(m, e);
            p.max_t = max_t_count(m, e, c);
            p.eta_over_eps = e > 0 ? eta(m.kappa, c) / e : std::numeric_limits<double>::infinity();
            pts.push_back(p);
        }
    }
    return pts;
}

/// eps = 0.001, 0.0011, ..., 0.01 as in the reference curves.
inline std::vector<double> default_epsilon_grid() {
    std::vector<double> g;
    for (int k = 10; k <= 100; k++) {
        g.push_back(k * 1e-4);
    }
    return g;
}

}  // namespace qecmit

#endif
