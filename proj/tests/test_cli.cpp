// Copyright 2026 The PEv Simulator Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "pev/cli.hpp"

namespace pev::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string> &args, const Environment &env = {}) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err, env);
    return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string &name) {
    return fs::temp_directory_path() / ("pev_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string outcome_line(const std::string &text) {
    std::smatch m;
    static const std::regex re("outcome=\\d classification=\\w+");
    return std::regex_search(text, m, re) ? m.str() : "";
}

TEST(Cli, RunPrettyOutput) {
    const auto r = invoke({"run", "--f", "f1"});
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("# pev run f=f1 seed=42"), std::string::npos);
    EXPECT_EQ(outcome_line(r.out), "outcome=0 classification=constant");
    EXPECT_EQ(outcome_line(invoke({"run", "--f", "f3"}).out), "outcome=1 classification=balanced");
}

TEST(Cli, RunJsonAndCsv) {
    const auto j = nlohmann::json::parse(invoke({"run", "--f", "f2", "--format", "json", "--dump-steps"}).out);
    EXPECT_EQ(j["outcome"], 1);
    EXPECT_EQ(j["steps"].size(), 5u);
    EXPECT_EQ(j["provenance"]["seed"], 42);
    const auto csv = invoke({"run", "--f", "f4", "--format", "csv"});
    EXPECT_EQ(csv.out, "oracle,outcome,classification\nf4,0,constant\n");
}

TEST(Cli, RunSecondQuantized) {
    for (const char *f : {"f1", "f2", "f3", "f4"}) {
        const auto plain = invoke({"run", "--f", f});
        const auto sq = invoke({"run", "--f", f, "--second-quantized", "--fock-dim", "4"});
        EXPECT_EQ(sq.code, kOk);
        EXPECT_EQ(outcome_line(sq.out), outcome_line(plain.out));
    }
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, kUsage);
    EXPECT_EQ(invoke({"run"}).code, kUsage);
    EXPECT_EQ(invoke({"run", "--f", "f5"}).code, kUsage);
    EXPECT_EQ(invoke({"run", "--f", "f1", "--format", "xml"}).code, kUsage);
    EXPECT_EQ(invoke({"sweep", "--from", "0.8", "--to", "0.2"}).code, kUsage);
    EXPECT_EQ(invoke({"mc", "--f", "f1", "--alpha2", "0.9", "--trials", "0"}).code, kUsage);
    EXPECT_EQ(invoke({"mc", "--f", "f1", "--alpha2", "1.5"}).code, kUsage);
    EXPECT_EQ(invoke({"bogus"}).code, kUsage);
}

TEST(Cli, Help) {
    const auto r = invoke({"--help"});
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("sweep"), std::string::npos);
}

TEST(Cli, SeedResolution) {
    EXPECT_NE(invoke({"run", "--f", "f1"}, {"7"}).out.find("seed=7"), std::string::npos);
    EXPECT_NE(invoke({"run", "--f", "f1", "--seed", "9"}, {"7"}).out.find("seed=9"), std::string::npos);
    EXPECT_EQ(invoke({"run", "--f", "f1"}, {"x1"}).code, kUsage);
    EXPECT_EQ(invoke({"run", "--f", "f1"}, {""}).code, kUsage);
}

TEST(Cli, SweepToFileRoundTrips) {
    const auto path = temp_path("sweep.csv");
    const auto r = invoke({"sweep", "--from", "0.5", "--to", "1.0", "--steps", "51", "--output", path.string()});
    EXPECT_EQ(r.code, kOk);
    std::ifstream in(path);
    const auto rows = report::read_sweep_csv(in);
    ASSERT_EQ(rows.size(), 51u);
    EXPECT_NEAR(rows[40].alpha2, 0.9, 1e-12);
    EXPECT_NEAR(rows[40].prob1, 1.0 / 37.0, 1e-12);
    const auto direct = noise::sweep(0.5, 1.0, 51);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        EXPECT_EQ(rows[k].prob0, direct[k].prob0);
        EXPECT_EQ(rows[k].ratio, direct[k].ratio);
    }
    fs::remove(path);
}

TEST(Cli, SweepFormats) {
    const auto pretty = invoke({"sweep", "--steps", "3"});
    EXPECT_NE(pretty.out.find("# pev sweep"), std::string::npos);
    const auto csv = invoke({"sweep", "--steps", "3", "--format", "csv"});
    EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), report::kSweepHeader);
    const auto path = temp_path("sweep.json");
    EXPECT_EQ(invoke({"sweep", "--steps", "3", "--output", path.string()}).code, kOk);
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["rows"].size(), 3u);
    fs::remove(path);
}

TEST(Cli, IoErrors) {
    EXPECT_EQ(invoke({"sweep", "--output", "/nonexistent-dir/x.csv"}).code, kIoError);
    EXPECT_EQ(invoke({"circuit", "/nonexistent-dir/x.circ"}).code, kIoError);
}

TEST(Cli, CircuitParseErrorReportsLine) {
    const auto path = temp_path("bad.circ");
    std::ofstream(path) << "t1: H(0)\nt2: UF(f9)\n";
    const auto r = invoke({"circuit", path.string()});
    EXPECT_EQ(r.code, kUsage);
    EXPECT_NE(r.err.find("unknown oracle f9, line 2"), std::string::npos);
    fs::remove(path);
}

TEST(Cli, CanonicalCircuitMatchesRun) {
    for (const auto &f : kAllOracles) {
        const auto path = temp_path(f.name() + ".circ");
        std::ofstream(path) << circuit::render(circuit::canonical_deutsch(f));
        const auto c = invoke({"circuit", path.string()});
        const auto r = invoke({"run", "--f", f.name()});
        EXPECT_EQ(c.code, kOk);
        EXPECT_EQ(outcome_line(c.out), outcome_line(r.out));
        EXPECT_FALSE(outcome_line(c.out).empty());
        fs::remove(path);
    }
}

TEST(Cli, SampleCircuit) {
    const auto r = invoke({"circuit", std::string(PEV_SAMPLES_DIR) + "/deutsch.circ", "--dump-steps"});
    EXPECT_EQ(r.code, kOk);
    EXPECT_EQ(outcome_line(r.out), "outcome=1 classification=balanced");
    EXPECT_NE(r.out.find("tau=3 (t2)"), std::string::npos);
}

TEST(Cli, VerifyExitCodes) {
    const auto ok = invoke({"verify", "--only", "tables"});
    EXPECT_EQ(ok.code, kOk);
    const auto bad = invoke({"verify", "--inject-fault", "table1", "--only", "tables"});
    EXPECT_EQ(bad.code, kCheckFailed);
    EXPECT_NE(bad.err.find("check failed: tables/table1"), std::string::npos);
}

TEST(Cli, MonteCarlo) {
    const auto r = invoke({"mc", "--f", "f1", "--alpha2", "0.9", "--trials", "20000", "--format", "json"});
    EXPECT_EQ(r.code, kOk);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["pass"], true);
    EXPECT_EQ(j["provenance"]["seed"], 42);
    const auto again = invoke({"mc", "--f", "f1", "--alpha2", "0.9", "--trials", "20000", "--format", "json"});
    EXPECT_EQ(r.out, again.out);
}

int system_exit(const std::string &cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliBinary, ExitCodes) {
    const std::string bin = PEV_CLI_PATH;
    EXPECT_EQ(system_exit(bin + " run --f f1"), 0);
    EXPECT_EQ(system_exit(bin + " run --f f5"), 2);
    EXPECT_EQ(system_exit(bin + " circuit /nonexistent-dir/x.circ"), 1);
    EXPECT_EQ(system_exit(bin + " verify --only tables --inject-fault table1"), 3);
    EXPECT_EQ(system_exit("PEV_SEED=abc " + bin + " run --f f1"), 2);
}

} // namespace
} // namespace pev::cli
