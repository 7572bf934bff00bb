#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qsearch/cli.hpp"
#include "qsearch/grover.hpp"
#include "qsearch/matrix.hpp"
#include "qsearch/qasm.hpp"
#include "qsearch/qmem.hpp"

using namespace qsearch;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qsearch_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir_);
        example_ = write("example.txt", "2 2\n11\n00\n01\n10\n");
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &contents) {
        const auto path = dir_ / name;
        std::ofstream(path) << contents;
        return path.string();
    }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }
    static std::string read(const std::string &p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
    std::string example_;
};

} // namespace

TEST_F(CliTest, RunExample) {
    const auto json_path = path("report.json");
    const auto r = invoke({"run", "--db", example_, "--target", "01", "--shots", "10000",
                           "--seed", "7", "--out", json_path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("measured address 2"), std::string::npos);
    const auto j = nlohmann::json::parse(read(json_path));
    EXPECT_EQ(j["multiplicity"], 1);
    EXPECT_EQ(j["iterations"], 1);
    EXPECT_EQ(j["query_count"], 2);
    EXPECT_NEAR(j["success_probabilities"][0].get<double>(), 1.0, 1e-9);
    EXPECT_EQ(j["reported_address"], 2);
    EXPECT_EQ(j["found"], true);
    EXPECT_EQ(j["s"], "01");
    EXPECT_EQ(j["histogram"].size(), 1u);
    EXPECT_EQ(j["histogram"][0]["count"], 10000);
}

TEST_F(CliTest, RunWidthMismatch) {
    const auto r = invoke({"run", "--db", example_, "--target", "0101"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("RecordWidthMismatch"), std::string::npos);
}

TEST_F(CliTest, RunOvershoot) {
    const auto json_path = path("over.json");
    const auto r =
        invoke({"run", "--db", example_, "--target", "01", "--iterations", "3", "--out", json_path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(read(json_path));
    EXPECT_EQ(j["iterations"], 3);
    EXPECT_EQ(j["query_count"], 6);
    EXPECT_EQ(j["auto_schedule"], false);
    EXPECT_NEAR(j["success_probabilities"][2].get<double>(), 0.25, 1e-9);
}

TEST_F(CliTest, UsageErrorsNameTheFlag) {
    auto r = invoke({"run", "--target", "01"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--db"), std::string::npos);
    r = invoke({"run", "--db", example_, "--target", "01", "--iterations", "many"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--iterations"), std::string::npos);
    r = invoke({"export", "--db", example_, "--target", "01", "--format", "qasm2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--format"), std::string::npos);
    EXPECT_EQ(invoke({}).code, 1);
    EXPECT_EQ(invoke({"frobnicate"}).code, 1);
    EXPECT_EQ(invoke({"run", "--db", path("missing.txt"), "--target", "01"}).code, 1);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, JsonIsDeterministicApartFromWallTime) {
    const auto a = path("a.json");
    const auto b = path("b.json");
    ASSERT_EQ(invoke({"run", "--db", example_, "--target", "11", "--seed", "5", "--out", a}).code, 0);
    ASSERT_EQ(invoke({"run", "--db", example_, "--target", "11", "--seed", "5", "--out", b}).code, 0);
    auto ja = nlohmann::json::parse(read(a));
    auto jb = nlohmann::json::parse(read(b));
    ASSERT_TRUE(ja.contains("wall_time_s"));
    ja.erase("wall_time_s");
    jb.erase("wall_time_s");
    EXPECT_EQ(ja.dump(), jb.dump());
}

TEST_F(CliTest, VerifyExample) {
    const auto r = invoke({"verify", "--db", example_, "--target", "01"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("PASS oracle_equivalence"), std::string::npos);
    EXPECT_NE(r.out.find("PASS restore"), std::string::npos);
}

TEST_F(CliTest, VerifySweepSmall) {
    const auto r = invoke({"verify", "--sweep", "small"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("+ 30 random"), std::string::npos);
}

TEST_F(CliTest, VerifyCorruptedBuildFails) {
    // Gate 4 of the double query is the first comparator CNOT; target bit 0 is 1.
    const auto r = invoke({"verify", "--db", example_, "--target", "01", "--corrupt-drop-gate", "4"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("worst offender"), std::string::npos);
    EXPECT_EQ(invoke({"verify", "--sweep", "small", "--corrupt-drop-gate", "0"}).code, 2);
}

TEST_F(CliTest, ExportHeaderRoundTripAndLineCount) {
    const auto single = write("single.txt", "1 1\n1\n0\n");
    const auto qasm_path = path("full.qasm");
    ASSERT_EQ(invoke({"export", "--db", single, "--target", "1", "--out", qasm_path}).code, 0);
    const std::string text = read(qasm_path);
    EXPECT_EQ(text.rfind("OPENQASM 3.0;\n", 0), 0u);

    const auto db = parse_database("1 1\n1\n0\n");
    const auto layout = QubitLayout::for_database(db);
    const Circuit reference = build_grover_circuit(db, 1, layout, iteration_count(2, 1));
    const Circuit imported = import_qasm(text);
    EXPECT_LE(max_abs_diff(to_unitary(imported), to_unitary(reference)), 1e-9);

    std::size_t gate_lines = 0;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
        if (!line.empty() && line.rfind("//", 0) != 0 && line.rfind("OPENQASM", 0) != 0 &&
            line.rfind("qubit", 0) != 0) {
            ++gate_lines;
        }
    }
    EXPECT_EQ(gate_lines, gate_stats(reference).target_lines);

    const auto stdout_run = invoke({"export", "--db", single, "--target", "1"});
    EXPECT_EQ(stdout_run.out, text);
}

TEST_F(CliTest, ExportFolded) {
    const auto r = invoke({"export", "--db", example_, "--target", "01", "--fold"});
    ASSERT_EQ(r.code, 0);
    const Circuit c = import_qasm(r.out);
    EXPECT_EQ(c.qubit_count(), 9u - 3u);
    EXPECT_EQ(c.count_markers(kQueryMarker), 2u);
}

TEST_F(CliTest, StatsExample) {
    const auto json_path = path("stats.json");
    const auto r = invoke({"stats", "--db", example_, "--out", json_path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("Q = n+2m+3 = 9"), std::string::npos);
    const auto j = nlohmann::json::parse(read(json_path));
    EXPECT_EQ(j["total_qubits"], 9);
    EXPECT_EQ(j["load_gates"], 3);
    EXPECT_EQ(j["load_max_arity"], 4);
}

TEST_F(CliTest, StatsArityBound) {
    std::mt19937_64 rng(44);
    std::ostringstream text;
    text << "4 4\n";
    for (int k = 0; k < 16; ++k) {
        text << format_bits(rng() % 16, 4) << "\n";
    }
    const auto db_path = write("random.txt", text.str());
    const auto json_path = path("random.json");
    ASSERT_EQ(invoke({"stats", "--db", db_path, "--out", json_path}).code, 0);
    const auto j = nlohmann::json::parse(read(json_path));
    EXPECT_LE(j["load_max_arity"].get<int>(), 8);
}

TEST_F(CliTest, StatsZeroDatabase) {
    const auto db_path = write("zero.txt", "2 3\n000\n000\n000\n000\n");
    const auto json_path = path("zero.json");
    ASSERT_EQ(invoke({"stats", "--db", db_path, "--out", json_path}).code, 0);
    EXPECT_EQ(nlohmann::json::parse(read(json_path))["load_gates"], 0);
}

TEST_F(CliTest, NoPartialFilesOnFailure) {
    const auto json_path = path("never.json");
    EXPECT_EQ(invoke({"run", "--db", example_, "--target", "0101", "--out", json_path}).code, 1);
    EXPECT_EQ(invoke({"export", "--db", example_, "--target", "0101", "--out", json_path}).code, 1);
    EXPECT_FALSE(fs::exists(json_path));
    for (const auto &entry : fs::directory_iterator(dir_)) {
        EXPECT_EQ(entry.path().filename().string().find(".tmp"), std::string::npos);
    }
}

TEST_F(CliTest, BinaryExitCodes) {
    const std::string exe = QSEARCH_CLI_PATH;
    const std::string quiet = " >/dev/null 2>&1";
    auto status = [&](const std::string &args) {
        const int raw = std::system((exe + " " + args + quiet).c_str());
        return WEXITSTATUS(raw);
    };
    EXPECT_EQ(status("run --db " + example_ + " --target 01 --shots 100"), 0);
    EXPECT_EQ(status("run --db " + example_ + " --target 0101"), 1);
    EXPECT_EQ(status("verify --db " + example_ + " --target 01 --corrupt-drop-gate 4"), 2);
}
