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

#include "qecmit/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qecmit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qecmit_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        fs::remove_all(path);
    }
    std::string operator/(const std::string &name) const {
        return (path / name).string();
    }
};

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(std::vector<std::string> args, std::string *err_text = nullptr) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    if (err_text) {
        *err_text = err.str();
    }
    return code;
}

std::vector<std::vector<std::string>> rows(const std::string &path) {
    std::vector<std::vector<std::string>> r;
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        r.push_back(cli::split(line, ','));
    }
    return r;
}

std::string cell(const std::vector<std::vector<std::string>> &t, size_t row, const std::string &column) {
    for (size_t c = 0; c < t[0].size(); c++) {
        if (t[0][c] == column) {
            return t.at(row)[c];
        }
    }
    throw std::logic_error("no column " + column);
}

}  // namespace

TEST(cli, frame_example_has_zero_rate) {
    TempDir dir;
    std::string out = dir / "frame.csv";
    ASSERT_EQ(run({"frame", "--d", "3", "--epsilon", "0", "--trials", "1000", "--seed", "1", "--out", out}), 0);
    auto t = rows(out);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(cell(t, 1, "p_f"), "0");
    EXPECT_EQ(cell(t, 1, "frame_errors"), "0");
    EXPECT_EQ(cell(t, 1, "p_z"), "nan");
    EXPECT_EQ(cell(t, 1, "trials"), "1000");
    auto j = nlohmann::json::parse(slurp(out + ".json"));
    EXPECT_EQ(j["subcommand"], "frame");
    EXPECT_EQ(j["config"]["seed"], "1");
    EXPECT_TRUE(j.contains("wall_time_seconds"));
    EXPECT_TRUE(j.contains("version"));
}

TEST(cli, plan_example_matches_planner) {
    TempDir dir;
    std::string out = dir / "plan.csv";
    ASSERT_EQ(run({"plan", "--epsilon", "0.01", "--kappa", "0.4", "--total-cost", "1000", "--out", out}), 0);
    auto t = rows(out);
    ASSERT_EQ(t.size(), 2u);
    OverheadModel m;
    EXPECT_NEAR(std::stod(cell(t, 1, "max_t")), max_t_count(m, 0.01, 1000), 1e-8);
    EXPECT_NEAR(std::stod(cell(t, 1, "gamma")), gamma(m, 0.01), 1e-11);
    EXPECT_EQ(cell(t, 1, "mode"), "exact");
    ASSERT_EQ(run({"plan", "--epsilon", "0.01", "--total-cost", "1000", "--mode", "doubled_kappa", "--out", out}), 0);
    EXPECT_NEAR(std::stod(cell(rows(out), 1, "max_t")), 214.136, 1e-3);
    ASSERT_EQ(run({"plan", "--sweep", "--total-cost", "100", "1000", "10000", "--table", "0", "50", "--out", out}), 0);
    EXPECT_EQ(rows(out).size(), 1u + 3 * 91);
    EXPECT_EQ(rows(dir / "plan_table.csv").size(), 1u + 2 * 91);
}

TEST(cli, identical_output_across_thread_counts) {
    TempDir dir;
    fs::path circuit = dir.path / "c.txt";
    std::ofstream(circuit) << "QUBITS 2\nSTEP\nH 0\nH 1\nSTEP\nT 0\nSTEP\nCNOT 0 1\nSTEP\nT 1\n";
    std::vector<std::vector<std::string>> commands = {
        {"switching", "--d", "3", "--epsilon", "0.005", "0.01", "--trials", "3000", "--seed", "7"},
        {"frame", "--d", "3", "5", "--epsilon", "0.01", "--trials", "1000", "--seed", "7", "--adaptive"},
        {"qpd", "--circuit", circuit.string(), "--observable", "XY", "--eps-bar", "0.01", "0.1", "--shots", "20000",
         "--seed", "7"},
        {"learn", "--eps-bar", "0.02", "--shots", "20000", "--seed", "7"},
    };
    for (const auto &cmd : commands) {
        std::string a = dir / "a.csv", b = dir / "b.csv";
        auto with = [&](const std::string &out, const std::string &threads) {
            auto c = cmd;
            c.insert(c.end(), {"--threads", threads, "--out", out});
            return c;
        };
        ASSERT_EQ(run(with(a, "1")), 0) << cmd[0];
        ASSERT_EQ(run(with(b, "3")), 0) << cmd[0];
        EXPECT_EQ(slurp(a), slurp(b)) << cmd[0];
        EXPECT_GT(rows(a).size(), 1u);
        if (cmd[0] == "learn") {
            EXPECT_EQ(slurp(dir / "a_fit.csv"), slurp(dir / "b_fit.csv"));
        }
    }
}

TEST(cli, invalid_config_names_the_field) {
    TempDir dir;
    std::string err;
    EXPECT_NE(run({"switching", "--d", "4", "--seed", "1", "--out", dir / "x.csv"}, &err), 0);
    EXPECT_NE(err.find("d must be odd"), std::string::npos) << err;
    EXPECT_NE(run({"switching", "--d", "3", "--epsilon", "2", "--seed", "1", "--out", dir / "x.csv"}, &err), 0);
    EXPECT_NE(err.find("epsilon"), std::string::npos) << err;
    EXPECT_NE(run({"switching", "--d", "3"}, &err), 0);
    EXPECT_NE(err.find("--seed"), std::string::npos) << err;
    EXPECT_NE(run({"learn", "--eps-bar", "0.02", "--p", "12", "--seed", "1", "--out", dir / "x.csv"}, &err), 0);
    EXPECT_NE(err.find("p:"), std::string::npos) << err;
    EXPECT_FALSE(fs::exists(dir / "x.csv"));
}

TEST(cli, config_file_and_flag_precedence) {
    TempDir dir;
    std::string cfg = dir / "run.cfg";
    std::ofstream(cfg) << "# switching settings\nd = 3\nepsilon = 0.01\ntrials = 500\nseed = 3\nunit_weights = true\n";
    std::string out = dir / "s.csv";
    ASSERT_EQ(run({"frame", "--config", cfg, "--trials", "200", "--out", out}), 0);
    auto t = rows(out);
    EXPECT_EQ(cell(t, 1, "trials"), "200");
    EXPECT_EQ(cell(t, 1, "seed"), "3");
    EXPECT_EQ(cell(t, 1, "epsilon"), "0.01");
    EXPECT_EQ(cell(t, 1, "unit_weights"), "1");
    std::ofstream(cfg) << "bogus = 1\n";
    std::string err;
    EXPECT_NE(run({"frame", "--config", cfg, "--seed", "1", "--out", out}, &err), 0);
    EXPECT_NE(err.find("bogus"), std::string::npos);
}

TEST(cli, resume_reuses_finished_points) {
    TempDir dir;
    std::string partial = dir / "p.csv", full = dir / "f.csv";
    ASSERT_EQ(run({"switching", "--d", "3", "--epsilon", "0.01", "--trials", "500", "--seed", "2", "--out", partial}), 0);
    std::string first = slurp(partial);
    ASSERT_EQ(run({"switching", "--d", "3", "--epsilon", "0.01", "0.02", "--trials", "500", "--seed", "2", "--out",
                   partial, "--resume"}),
              0);
    auto j = nlohmann::json::parse(slurp(partial + ".json"));
    EXPECT_EQ(j["rows_reused"], 1);
    ASSERT_EQ(run({"switching", "--d", "3", "--epsilon", "0.01", "0.02", "--trials", "500", "--seed", "2", "--out", full}), 0);
    EXPECT_EQ(slurp(partial), slurp(full));
    EXPECT_EQ(slurp(full).rfind(first, 0), 0u);
}

TEST(cli, dump_code_and_graph) {
    std::ostringstream out, err;
    ASSERT_EQ(cli::run({"dump-code", "--d", "3", "--variant", "S1"}, out, err), 0);
    EXPECT_NE(out.str().find("# code S1 d=3"), std::string::npos);
    EXPECT_NE(out.str().find("logical_x"), std::string::npos);
    std::ostringstream g;
    ASSERT_EQ(cli::run({"dump-code", "--d", "3", "--graph"}, g, err), 0);
    EXPECT_EQ(g.str().rfind("# nodes", 0), 0u);
    EXPECT_NE(g.str().find("boundary"), std::string::npos);
}
