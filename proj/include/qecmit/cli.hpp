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

#ifndef QECMIT_CLI_HPP
#define QECMIT_CLI_HPP

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qecmit/code_switching.hpp"
#include "qecmit/mitigation.hpp"
#include "qecmit/planner.hpp"
#include "qecmit/rate_learning.hpp"

#ifndef QECMIT_VERSION
#define QECMIT_VERSION "0.0.0"
#endif

namespace qecmit::cli {

inline std::string num(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string num(uint64_t v) {
    return std::to_string(v);
}

inline std::string num(int v) {
    return std::to_string(v);
}

/// A CSV table with a fixed header; rows are kept as formatted strings.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(const std::string &path) const {
        std::filesystem::path p(path);
        if (p.has_parent_path()) {
            std::filesystem::create_directories(p.parent_path());
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write '" + path + "'");
        }
        auto line = [&](const std::vector<std::string> &cells) {
            for (size_t i = 0; i < cells.size(); i++) {
                out << (i ? "," : "") << cells[i];
            }
            out << "\n";
        };
        line(header);
        for (const auto &r : rows) {
            line(r);
        }
    }
};

inline std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

/// Rows of an existing CSV keyed by their first `key_columns` cells; empty if the header differs.
inline std::map<std::string, std::vector<std::string>> read_existing(const std::string &path,
                                                                     const std::vector<std::string> &header,
                                                                     size_t key_columns) {
    std::map<std::string, std::vector<std::string>> out;
    std::ifstream in(path);
    if (!in) {
        return out;
    }
    std::string line;
    if (!std::getline(in, line) || split(line, ',') != header) {
        return out;
    }
    while (std::getline(in, line)) {
        auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            continue;
        }
        std::string key;
        for (size_t i = 0; i < key_columns; i++) {
            key += cells[i] + ",";
        }
        out[key] = cells;
    }
    return out;
}

inline std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r\"");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r\"");
    return s.substr(a, b - a + 1);
}

/// key=value lines; '#' starts a comment. Keys may use '-' or '_'.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot read '" + path + "'");
    }
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    size_t no = 0;
    while (std::getline(in, line)) {
        no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        if (trim(line).empty() || trim(line)[0] == '[') {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(no) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        for (char &c : key) {
            if (c == '_') {
                c = '-';
            }
        }
        kv.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return kv;
}

inline unsigned default_threads() {
    if (const char *env = std::getenv("QECMIT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) {
            return (unsigned)v;
        }
    }
    return 1;
}

struct Common {
    uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
    std::string config;
    bool resume = false;
};

struct SwitchingArgs {
    std::vector<int> d{3};
    std::vector<double> epsilon{0.0};
    int L = 3;
    int s1_cycles = 0;
    bool adaptive = false;
    uint64_t trials = 1000;
    std::string backend = "frame";
    bool unit_weights = false;
    bool cnot_identity = false;
};

struct QpdArgs {
    std::string circuit;
    std::string observable;
    std::vector<double> eps_bar{0.05};
    uint64_t shots = 100000;
};

struct LearnArgs {
    double eps_bar = 0.02;
    uint64_t shots = 100000;
    std::vector<uint64_t> p;
};

struct PlanArgs {
    std::vector<double> epsilon{0.01};
    double kappa = kMagicStateKappa;
    std::vector<double> total_cost{1000};
    double delta = 0.01;
    std::string mode = "exact";
    bool sweep = false;
    std::vector<uint64_t> table;
};

struct DumpArgs {
    int d = 3;
    std::string variant = "S2";
    bool graph = false;
    std::string experiment = "frame";
    double epsilon = 0.001;
    std::string detectors = "Z";
};

struct Args {
    Common common;
    SwitchingArgs sw;
    QpdArgs qpd;
    LearnArgs learn;
    PlanArgs plan;
    DumpArgs dump;
};

inline void add_common(CLI::App *sub, Common &c, bool needs_seed) {
    auto *seed = sub->add_option("--seed", c.seed, "64-bit master seed");
    if (needs_seed) {
        seed->required();
    }
    sub->add_option("--threads", c.threads, "worker threads (default: QECMIT_THREADS or 1)")->check(CLI::Range(1u, 4096u));
    sub->add_option("--out", c.out, "output CSV path");
    sub->add_option("--config", c.config, "key=value file; command-line flags win");
    sub->add_flag("--resume", c.resume, "reuse rows of an existing output CSV");
}

inline void add_switching(CLI::App *sub, SwitchingArgs &a) {
    sub->add_option("--d", a.d, "code distances (sweep)")->expected(1, 1000);
    sub->add_option("--epsilon", a.epsilon, "physical error rates (sweep)")->expected(1, 1000);
    sub->add_option("--L", a.L, "S2 cycles");
    sub->add_option("--s1-cycles", a.s1_cycles, "S1 cycles after the switch back (0: d)");
    sub->add_flag("--adaptive", a.adaptive, "choose L in {2,3} from the first G syndromes");
    sub->add_option("--trials", a.trials, "Monte Carlo trials per point");
    sub->add_option("--backend", a.backend, "frame or tableau")->check(CLI::IsMember({"frame", "tableau"}));
    sub->add_flag("--unit-weights", a.unit_weights, "unit matching weights");
    sub->add_flag("--cnot-identity", a.cnot_identity, "CNOT faults drawn from all 16 two-qubit Paulis");
}

inline std::unique_ptr<CLI::App> build_app(Args &a) {
    auto app = std::make_unique<CLI::App>("Code switching, QPD and overhead experiments", "qecmit");
    app->require_subcommand(1);
    app->option_defaults()->always_capture_default();
    app->set_version_flag("--version", QECMIT_VERSION);

    auto *sw = app->add_subcommand("switching", "frame and logical error rates of the switching protocol");
    add_common(sw, a.common, true);
    add_switching(sw, a.sw);

    auto *fr = app->add_subcommand("frame", "Pauli frame error rate only");
    add_common(fr, a.common, true);
    add_switching(fr, a.sw);

    auto *qp = app->add_subcommand("qpd", "QPD estimate of a Pauli expectation for a Clifford+T circuit");
    add_common(qp, a.common, true);
    qp->add_option("--circuit", a.qpd.circuit, "circuit text file")->required()->check(CLI::ExistingFile);
    qp->add_option("--observable", a.qpd.observable, "Pauli string such as XZ_")->required();
    qp->add_option("--eps-bar", a.qpd.eps_bar, "logical T error rates (sweep)")->expected(1, 1000);
    qp->add_option("--shots", a.qpd.shots, "shots per point")->check(CLI::PositiveNumber);

    auto *le = app->add_subcommand("learn", "estimate the T error rate from the decay of f(p)");
    add_common(le, a.common, true);
    le->add_option("--eps-bar", a.learn.eps_bar, "true error rate of the simulated gate")->check(CLI::Range(0.0, 0.5));
    le->add_option("--shots", a.learn.shots, "shots per point")->check(CLI::PositiveNumber);
    le->add_option("--p", a.learn.p, "repetition counts (multiples of 8); default: pilot plus grid")->expected(1, 1000);

    auto *pl = app->add_subcommand("plan", "sampling overhead and maximal T-count");
    add_common(pl, a.common, false);
    pl->add_option("--epsilon", a.plan.epsilon, "physical error rates")->expected(1, 1000);
    pl->add_option("--kappa", a.plan.kappa, "conversion constant")->check(CLI::PositiveNumber);
    pl->add_option("--total-cost", a.plan.total_cost, "total sampling cost Gamma^2")->expected(1, 1000);
    pl->add_option("--delta", a.plan.delta, "target accuracy")->check(CLI::PositiveNumber);
    pl->add_option("--mode", a.plan.mode, "exact, first_order or doubled_kappa")
        ->check(CLI::IsMember({"exact", "first_order", "doubled_kappa"}));
    pl->add_flag("--sweep", a.plan.sweep, "epsilon grid 0.001..0.01 step 0.0001");
    pl->add_option("--table", a.plan.table, "T counts for the complexity comparison table")->expected(1, 1000);

    auto *du = app->add_subcommand("dump-code", "print a code or its matching graph");
    add_common(du, a.common, false);
    du->add_option("--d", a.dump.d, "code distance");
    du->add_option("--variant", a.dump.variant, "S1 or S2")->check(CLI::IsMember({"S1", "S2"}));
    du->add_flag("--graph", a.dump.graph, "dump the matching graph of a switching experiment");
    du->add_option("--experiment", a.dump.experiment, "frame or logical")->check(CLI::IsMember({"frame", "logical"}));
    du->add_option("--epsilon", a.dump.epsilon, "error rate for the graph weights");
    du->add_option("--detectors", a.dump.detectors, "Z (X errors) or X (Z errors)")->check(CLI::IsMember({"X", "Z"}));
    return app;
}

/// Appends config-file entries for options not given on the command line.
inline std::vector<std::string> merge_config(CLI::App &app, std::vector<std::string> args) {
    if (args.empty()) {
        return args;
    }
    std::string path;
    for (size_t i = 0; i < args.size(); i++) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    CLI::App *sub = nullptr;
    for (CLI::App *s : app.get_subcommands({})) {
        if (s->get_name() == args[0]) {
            sub = s;
        }
    }
    if (!sub) {
        return args;
    }
    for (const auto &[key, value] : read_config_file(path)) {
        std::string flag = "--" + key;
        bool given = false;
        for (const std::string &arg : args) {
            given = given || arg == flag || arg.rfind(flag + "=", 0) == 0;
        }
        if (given) {
            continue;
        }
        const CLI::Option *opt = nullptr;
        try {
            opt = sub->get_option(flag);
        } catch (const CLI::OptionNotFound &) {
            throw std::invalid_argument("config: unknown field '" + key + "' for " + args[0]);
        }
        if (opt->get_expected_min() == 0) {
            if (value == "true" || value == "1") {
                args.push_back(flag);
            } else if (value != "false" && value != "0") {
                throw std::invalid_argument("config: field '" + key + "' expects true or false");
            }
            continue;
        }
        args.push_back(flag);
        std::string v = value;
        for (char &c : v) {
            if (c == ',') {
                c = ' ';
            }
        }
        std::istringstream ss(v);
        std::string item;
        while (ss >> item) {
            args.push_back(item);
        }
    }
    return args;
}

inline nlohmann::json options_json(const CLI::App &sub) {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option *opt : sub.get_options()) {
        std::string name = opt->get_name(false, true);
        if (name.rfind("--", 0) != 0 || name == "--help" || name == "--config") {
            continue;
        }
        name = name.substr(2);
        std::vector<std::string> vals = opt->results();
        if (opt->get_expected_min() == 0) {
            j[name] = opt->count() > 0;
        } else if (vals.empty()) {
            j[name] = opt->get_default_str();
        } else if (vals.size() == 1) {
            j[name] = vals[0];
        } else {
            j[name] = vals;
        }
    }
    return j;
}

inline void write_sidecar(const std::string &csv, const CLI::App &sub, double wall, const nlohmann::json &extra) {
    nlohmann::json j;
    j["subcommand"] = sub.get_name();
    j["config"] = options_json(sub);
    j["version"] = QECMIT_VERSION;
    j["wall_time_seconds"] = wall;
    for (auto it = extra.begin(); it != extra.end(); ++it) {
        j[it.key()] = it.value();
    }
    std::ofstream out(csv + ".json");
    out << j.dump(2) << "\n";
}

inline const std::vector<std::string> &switching_header() {
    static const std::vector<std::string> h = {
        "experiment", "d",    "epsilon",      "L",         "s1_cycles", "adaptive", "backend", "unit_weights",
        "cnot_identity", "trials", "seed",      "frame_errors", "p_f",      "p_f_lo",   "p_f_hi",  "z_errors",
        "p_z",        "p_z_lo", "p_z_hi",     "x_errors",  "p_x",       "p_x_lo",   "p_x_hi",  "short_trials"};
    return h;
}
constexpr size_t kSwitchingKeyColumns = 11;

inline int run_switching(const Args &a, bool logical, const CLI::App &sub, std::ostream &log) {
    std::string out = a.common.out.empty() ? sub.get_name() + ".csv" : a.common.out;
    std::vector<SwitchingConfig> points;
    for (int d : a.sw.d) {
        for (double e : a.sw.epsilon) {
            SwitchingConfig c;
            c.d = d;
            c.epsilon = e;
            c.L = a.sw.L;
            c.s1_cycles = a.sw.s1_cycles;
            c.adaptive_L = a.sw.adaptive;
            c.trials = a.sw.trials;
            c.seed = a.common.seed;
            c.backend = a.sw.backend == "tableau" ? Backend::tableau : Backend::frame;
            c.unit_weights = a.sw.unit_weights;
            c.cnot_includes_identity = a.sw.cnot_identity;
            c.validate();
            points.push_back(c);
        }
    }
    Table t;
    t.header = switching_header();
    auto existing = a.common.resume ? read_existing(out, t.header, kSwitchingKeyColumns)
                                    : std::map<std::string, std::vector<std::string>>{};
    auto start = std::chrono::steady_clock::now();
    size_t reused = 0;
    for (const SwitchingConfig &c : points) {
        std::vector<std::string> row = {logical ? "switching" : "frame",
                                        num(c.d),
                                        num(c.epsilon),
                                        num(c.L),
                                        num(c.effective_s1_cycles()),
                                        c.adaptive_L ? "1" : "0",
                                        backend_name(c.backend),
                                        c.unit_weights ? "1" : "0",
                                        c.cnot_includes_identity ? "1" : "0",
                                        num(c.trials),
                                        num(c.seed)};
        std::string key;
        for (const auto &cell : row) {
            key += cell + ",";
        }
        auto it = existing.find(key);
        if (it != existing.end()) {
            t.rows.push_back(it->second);
            reused++;
            continue;
        }
        SwitchingRates r = estimate_rates(c, a.common.threads, true, logical);
        auto rate = [&](const RateEstimate &e, bool present) {
            if (!present) {
                for (int k = 0; k < 4; k++) {
                    row.push_back("nan");
                }
                return;
            }
            row.push_back(num(e.successes));
            row.push_back(num(e.rate));
            row.push_back(num(e.lo));
            row.push_back(num(e.hi));
        };
        rate(r.p_f, true);
        rate(r.p_z, logical);
        rate(r.p_x, logical);
        row.push_back(logical ? num(r.short_trials) : "nan");
        t.rows.push_back(row);
        log << sub.get_name() << " d=" << c.d << " eps=" << num(c.epsilon) << " p_f=" << num(r.p_f.rate);
        if (logical) {
            log << " p_z=" << num(r.p_z.rate) << " p_x=" << num(r.p_x.rate);
        }
        log << "\n";
    }
    t.write(out);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_sidecar(out, sub, wall, {{"rows_reused", reused}, {"outputs", {out}}});
    return 0;
}

inline int run_qpd(const Args &a, const CLI::App &sub, std::ostream &log) {
    std::string out = a.common.out.empty() ? "qpd.csv" : a.common.out;
    std::ifstream in(a.qpd.circuit);
    Circuit circuit = read_text(in);
    PauliString obs = PauliString::from_str(a.qpd.observable);
    if (obs.num_qubits() != circuit.num_qubits()) {
        throw std::invalid_argument("observable: length does not match the circuit's qubit count");
    }
    for (double e : a.qpd.eps_bar) {
        if (!(e >= 0 && e < 0.5)) {
            throw std::invalid_argument("eps-bar: must be in [0, 1/2)");
        }
    }
    Table t;
    t.header = {"circuit", "observable", "eps_bar", "shots", "seed", "t_count", "gamma_total", "mean", "std_error", "ideal"};
    auto existing = a.common.resume ? read_existing(out, t.header, 5) : std::map<std::string, std::vector<std::string>>{};
    auto start = std::chrono::steady_clock::now();
    std::string name = std::filesystem::path(a.qpd.circuit).filename().string();
    for (double e : a.qpd.eps_bar) {
        std::vector<std::string> row = {name, a.qpd.observable, num(e), num(a.qpd.shots), num(a.common.seed)};
        std::string key;
        for (const auto &cell : row) {
            key += cell + ",";
        }
        auto it = existing.find(key);
        if (it != existing.end()) {
            t.rows.push_back(it->second);
            continue;
        }
        QpdEstimator est(circuit, obs, e);
        QpdEstimate r = est.estimate(a.qpd.shots, a.common.seed, a.common.threads);
        row.push_back(num((uint64_t)est.t_count()));
        row.push_back(num(r.gamma_total));
        row.push_back(num(r.mean));
        row.push_back(num(r.std_error));
        row.push_back(num(est.ideal()));
        t.rows.push_back(row);
        log << "qpd eps_bar=" << num(e) << " mean=" << num(r.mean) << " +- " << num(r.std_error) << "\n";
    }
    t.write(out);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_sidecar(out, sub, wall, {{"outputs", {out}}});
    return 0;
}

inline std::string sibling(const std::string &csv, const std::string &suffix) {
    std::filesystem::path p(csv);
    return (p.parent_path() / (p.stem().string() + suffix)).string();
}

inline int run_learn(const Args &a, const CLI::App &sub, std::ostream &log) {
    std::string out = a.common.out.empty() ? "learn.csv" : a.common.out;
    auto start = std::chrono::steady_clock::now();
    DecayDataset data;
    if (a.learn.p.empty()) {
        data = learn_error_rate(a.learn.eps_bar, a.learn.shots, a.common.seed).data;
    } else {
        for (uint64_t p : a.learn.p) {
            if (p % 8 != 0) {
                throw std::invalid_argument("p: values must be multiples of 8");
            }
        }
        data = simulate_dataset(a.learn.eps_bar, a.learn.p, a.learn.shots, a.common.seed, 1);
    }
    RateFit fit = fit_error_rate(data);
    Table t;
    t.header = {"eps_bar", "p", "shots", "seed", "f_hat", "f_model"};
    for (const DecayPoint &pt : data.points) {
        t.rows.push_back({num(a.learn.eps_bar), num(pt.p), num(pt.shots), num(a.common.seed), num(pt.f_hat),
                          num(decay_f(a.learn.eps_bar, pt.p))});
    }
    Table f;
    f.header = {"eps_bar", "shots", "seed", "points_used", "eps_bar_hat", "std_error", "slope", "intercept"};
    f.rows.push_back({num(a.learn.eps_bar), num(a.learn.shots), num(a.common.seed), num((uint64_t)fit.points_used),
                      num(fit.eps_bar), num(fit.std_error), num(fit.slope), num(fit.intercept)});
    std::string fit_path = sibling(out, "_fit.csv");
    t.write(out);
    f.write(fit_path);
    for (const std::string &w : fit.warnings) {
        log << "warning: " << w << "\n";
    }
    log << "learn eps_bar_hat=" << num(fit.eps_bar) << " +- " << num(fit.std_error) << "\n";
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_sidecar(out, sub, wall,
                  {{"outputs", {out, fit_path}},
                   {"fit", {{"eps_bar_hat", fit.eps_bar}, {"std_error", fit.std_error}, {"warnings", fit.warnings}}}});
    return 0;
}

inline int run_plan(const Args &a, const CLI::App &sub, std::ostream &log) {
    std::string out = a.common.out.empty() ? "plan.csv" : a.common.out;
    auto start = std::chrono::steady_clock::now();
    OverheadModel m{a.plan.kappa, parse_mode(a.plan.mode)};
    std::vector<double> eps = a.plan.sweep ? default_epsilon_grid() : a.plan.epsilon;
    for (double c : a.plan.total_cost) {
        if (!(c >= 1)) {
            throw std::invalid_argument("total-cost: must be >= 1");
        }
    }
    for (double e : eps) {
        m.validate(e);
    }
    Table t;
    t.header = {"mode", "kappa", "epsilon", "total_cost", "gamma", "max_t", "eta_over_eps", "delta", "shots_required"};
    for (const CurvePoint &p : t_count_curve(m, eps, a.plan.total_cost)) {
        t.rows.push_back({mode_name(m.mode), num(m.kappa), num(p.epsilon), num(p.total_cost), num(p.gamma), num(p.max_t),
                          num(p.eta_over_eps), num(a.plan.delta),
                          num(shots_required(std::sqrt(p.total_cost), a.plan.delta))});
        if (!a.plan.sweep) {
            log << "plan eps=" << num(p.epsilon) << " gamma=" << num(p.gamma) << " max_t=" << num(p.max_t) << "\n";
        }
    }
    t.write(out);
    std::vector<std::string> outputs{out};
    if (!a.plan.table.empty()) {
        Table tab;
        tab.header = {"epsilon", "kappa", "mode", "t", "conventional", "qpd", "classical"};
        for (double e : eps) {
            for (const ComparisonRow &r : comparison_table(m, e, a.plan.table)) {
                tab.rows.push_back({num(e), num(m.kappa), mode_name(m.mode), num(r.t), r.conventional, num(r.qpd),
                                    num(r.classical)});
            }
        }
        std::string path = sibling(out, "_table.csv");
        tab.write(path);
        outputs.push_back(path);
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_sidecar(out, sub, wall, {{"outputs", outputs}});
    return 0;
}

inline int run_dump(const Args &a, std::ostream &stdout_stream) {
    std::string text;
    if (a.dump.graph) {
        SwitchingConfig c;
        c.d = a.dump.d;
        c.epsilon = a.dump.epsilon;
        c.validate();
        auto lat = std::make_shared<const Lattice>(c.d);
        ExperimentKind kind = a.dump.experiment == "frame" ? ExperimentKind::frame : ExperimentKind::logical;
        SwitchingExperiment exp(lat, kind, c.L, c.effective_s1_cycles(), c.noise());
        const MatchingGraph &g = a.dump.detectors == "Z" ? *exp.decoder().x_errors : *exp.decoder().z_errors;
        text = g.dump(exp.layout());
    } else {
        if (a.dump.d < 3 || a.dump.d % 2 == 0) {
            throw std::invalid_argument("d: must be odd and >= 3");
        }
        text = describe_code(build_code(a.dump.d, a.dump.variant == "S1" ? CodeVariant::S1 : CodeVariant::S2));
    }
    if (a.common.out.empty()) {
        stdout_stream << text;
    } else {
        std::ofstream out(a.common.out);
        out << text;
    }
    return 0;
}

/// Runs one command line (without the program name). Returns the process exit status.
inline int run(std::vector<std::string> args, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
    Args a;
    a.common.threads = default_threads();
    auto app = build_app(a);
    try {
        args = merge_config(*app, args);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app->parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app->exit(e, out, err);
    }
    try {
        for (CLI::App *sub : app->get_subcommands()) {
            const std::string &name = sub->get_name();
            if (name == "switching" || name == "frame") {
                return run_switching(a, name == "switching", *sub, err);
            }
            if (name == "qpd") {
                return run_qpd(a, *sub, err);
            }
            if (name == "learn") {
                return run_learn(a, *sub, err);
            }
            if (name == "plan") {
                return run_plan(a, *sub, err);
            }
            if (name == "dump-code") {
                return run_dump(a, out);
            }
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace qecmit::cli

#endif
