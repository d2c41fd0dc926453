// Copyright 2026 The vqcf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks driving the installed binary through a shell.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(VQCF_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data_file(const std::string& name) {
    return std::string(VQCF_TEST_DATA_DIR) + "/" + name;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("vqcf_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

    // Samples of y = cos(theta*) cos(2 * 2 pi u) with u spread over [0, 1);
    // the affine feature fit maps them back onto the torus.
    std::string write_narrow_band_csv(std::size_t M, double theta_star,
                                      std::uint64_t seed) const {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::ofstream out(tmp("data.csv"));
        out.precision(17);
        out << "x1,y\n";
        // Pin the min and max so the fitted map is exactly u = x - 1/2.
        std::vector<double> xs{0.0, 1.0};
        for (std::size_t i = 2; i < M; ++i) xs.push_back(uni(rng));
        for (double x : xs)
            out << x << "," << std::cos(theta_star) * std::cos(2.0 * 2.0 * M_PI * (x - 0.5))
                << "\n";
        return tmp("data.csv");
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SpectrumReportContents) {
    auto out_path = tmp("spec.json");
    auto res = run_cli("spectrum --circuit " + data_file("double_encoding.json") +
                       " --out " + out_path);
    ASSERT_EQ(res.exit_code, 0) << res.output;
    auto j = nlohmann::ordered_json::parse(read_file(out_path));
    EXPECT_EQ(j["tool_version"], "0.1.0");
    EXPECT_EQ(j["report"]["spectrum_size"], 2);
    EXPECT_EQ(j["report"]["encoding_counts"], (std::vector<int>{2, 1}));
    const auto& coeffs = j["report"]["coefficients"];
    ASSERT_EQ(coeffs.size(), 2u);
    EXPECT_EQ(coeffs[0]["frequency"], (std::vector<int>{-2, 0}));
    EXPECT_EQ(coeffs[1]["frequency"], (std::vector<int>{2, 0}));
    EXPECT_DOUBLE_EQ(coeffs[0]["terms"][0]["amp_re"], 0.5);
    EXPECT_EQ(coeffs[0]["terms"][0]["amp_exact"], "1/2+0i");
}

TEST_F(CliTest, MalformedCircuitIsInputError) {
    auto res = run_cli("spectrum --circuit " + data_file("malformed.json") +
                       " --out " + tmp("spec.json"));
    EXPECT_EQ(res.exit_code, 2);
    EXPECT_NE(res.output.find("input error"), std::string::npos);
}

TEST_F(CliTest, UnknownKeyIsInputError) {
    auto res = run_cli("spectrum --circuit " + data_file("unknown_key.json") +
                       " --out " + tmp("spec.json"));
    EXPECT_EQ(res.exit_code, 2);
    EXPECT_NE(res.output.find("gadgets"), std::string::npos);
}

TEST_F(CliTest, MissingFileIsInputError) {
    auto res = run_cli("spectrum --circuit " + tmp("nope.json") + " --out " +
                       tmp("spec.json"));
    EXPECT_EQ(res.exit_code, 2);
}

TEST_F(CliTest, SimulatePrintsExpectation) {
    auto res = run_cli("simulate --circuit " + data_file("double_encoding.json") +
                       " --x 1.0471975511965976 0.3");
    ASSERT_EQ(res.exit_code, 0) << res.output;
    EXPECT_NEAR(std::stod(res.output), -0.5, 1e-12);
}

TEST_F(CliTest, SimulateRejectsWrongArity) {
    auto res = run_cli("simulate --circuit " + data_file("double_encoding.json") +
                       " --x 0.5");
    EXPECT_EQ(res.exit_code, 2);
}

TEST_F(CliTest, VerifyPasses) {
    auto res = run_cli("verify --circuit " + data_file("narrow_band.json") +
                       " --trials 25 --seed 4");
    ASSERT_EQ(res.exit_code, 0) << res.output;
    EXPECT_NE(res.output.find("PASS"), std::string::npos);
}

TEST_F(CliTest, VerifyZeroTrialsWarnsVacuous) {
    auto res = run_cli("verify --circuit " + data_file("narrow_band.json") +
                       " --trials 0");
    ASSERT_EQ(res.exit_code, 0) << res.output;
    EXPECT_NE(res.output.find("vacuous"), std::string::npos);
}

TEST_F(CliTest, RankOrdersAndReproducesByteForByte) {
    auto csv = write_narrow_band_csv(60, 0.7, 23);
    auto args = "rank --circuit " + data_file("narrow_band.json") + " --circuit " +
                data_file("off_cone.json") + " --data " + csv +
                " --header --seed 7 --out ";
    auto res1 = run_cli(args + tmp("rank1.json"));
    ASSERT_EQ(res1.exit_code, 0) << res1.output;
    auto res2 = run_cli(args + tmp("rank2.json"));
    ASSERT_EQ(res2.exit_code, 0) << res2.output;
    EXPECT_EQ(read_file(tmp("rank1.json")), read_file(tmp("rank2.json")));

    auto j = nlohmann::ordered_json::parse(read_file(tmp("rank1.json")));
    EXPECT_EQ(j["seed"], 7);
    const auto& entries = j["report"]["entries"];
    ASSERT_EQ(entries.size(), 2u);
    EXPECT_EQ(entries[0]["circuit_id"], "narrow_band");
    EXPECT_EQ(entries[0]["rank"], 1);
    EXPECT_EQ(entries[1]["circuit_id"], "off_cone");
    EXPECT_EQ(entries[1]["rank"], 2);
    // Table on stdout, best first.
    EXPECT_LT(res1.output.find("narrow_band"), res1.output.find("off_cone"));
}

TEST_F(CliTest, RankTableAndPlotOutputs) {
    auto csv = write_narrow_band_csv(40, 0.4, 29);
    auto res = run_cli("rank --circuit " + data_file("narrow_band.json") +
                       " --data " + csv + " --header --format table --out " +
                       tmp("rank.tsv") + " --plot " + tmp("rank.svg"));
    ASSERT_EQ(res.exit_code, 0) << res.output;
    auto table = read_file(tmp("rank.tsv"));
    EXPECT_NE(table.find("rank\tcircuit"), std::string::npos);
    EXPECT_NE(table.find("narrow_band"), std::string::npos);
    auto svg = read_file(tmp("rank.svg"));
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("narrow_band"), std::string::npos);
}

TEST_F(CliTest, RankRejectsDimensionMismatch) {
    auto csv = write_narrow_band_csv(20, 0.4, 31);
    auto res = run_cli("rank --circuit " + data_file("double_encoding.json") +
                       " --data " + csv + " --header --out " + tmp("rank.json"));
    EXPECT_EQ(res.exit_code, 2);
}

TEST_F(CliTest, DataSpectrumFindsHarmonic) {
    auto csv = write_narrow_band_csv(50, 0.0, 37);
    auto res = run_cli("data-spectrum --data " + csv + " --header --circuit " +
                       data_file("narrow_band.json") + " --out " + tmp("ds.json"));
    ASSERT_EQ(res.exit_code, 0) << res.output;
    auto j = nlohmann::ordered_json::parse(read_file(tmp("ds.json")));
    EXPECT_LT(j["spectrum"]["residual"].get<double>(), 1e-8);
    double best = 0;
    for (const auto& cj : j["spectrum"]["coefficients"]) {
        if (cj["frequency"] == std::vector<int>{2}) {
            best = cj["re"].get<double>();
            EXPECT_DOUBLE_EQ(cj["damping"], 1e3);
        }
    }
    EXPECT_NEAR(best, 0.5, 1e-6);
}

TEST_F(CliTest, FriedmanWritesCsv) {
    auto res = run_cli("friedman --samples 10 --seed 3 --out " + tmp("friedman.csv"));
    ASSERT_EQ(res.exit_code, 0) << res.output;
    std::ifstream in(tmp("friedman.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
    }
    EXPECT_EQ(rows, 10);
}

TEST_F(CliTest, TrainWritesLossCurve) {
    // Self-target data generated by the candidate circuit family itself.
    auto csv = write_narrow_band_csv(24, 0.9, 41);
    auto res = run_cli("train --circuit " + data_file("narrow_band.json") +
                       " --data " + csv +
                       " --header --epochs 3 --batch 8 --seed 5 --out " +
                       tmp("losses.csv"));
    ASSERT_EQ(res.exit_code, 0) << res.output;
    auto curve = read_file(tmp("losses.csv"));
    EXPECT_NE(curve.find("epoch,train_mse,test_mse"), std::string::npos);
    EXPECT_NE(curve.find("seed=5"), std::string::npos);
    EXPECT_EQ(std::count(curve.begin(), curve.end(), '\n'), 2 + 3);
}

TEST_F(CliTest, NoSubcommandFails) {
    auto res = run_cli("");
    EXPECT_NE(res.exit_code, 0);
}
