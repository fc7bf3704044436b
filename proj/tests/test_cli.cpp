#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "ggm/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "ggm");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    int code = ggm::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch()
{
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("ggm_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string model(const std::string& name, const std::string& text)
{
    auto p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// CSV body rows (lines not starting with '#'), header row excluded.
std::vector<std::vector<std::string>> rows(const std::string& csv)
{
    std::vector<std::vector<std::string>> out;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) {
            cells.push_back(c);
        }
        out.push_back(cells);
    }
    return out;
}

const std::string kSos2 = R"({"potential": {"kind": "sos", "beta": 2.0}, "q": 2, "d": 2})";

} // namespace

TEST(Cli, SweepShowsTheIsingTransition)
{
    auto r = run({"solve-bl", "--model", model("sos.json", kSos2), "--beta-min", "1.5", "--beta-max", "2.5", "--beta-step",
                  "0.05"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("# schema_version: 1"), std::string::npos);
    std::map<std::string, int> count;
    for (const auto& row : rows(r.out)) {
        ++count[row[0]];
    }
    EXPECT_EQ(count.size(), 21u);
    for (const auto& [beta, n] : count) {
        EXPECT_EQ(n, std::stod(beta) < std::acosh(3.0) ? 1 : 3) << beta;
    }
    EXPECT_EQ(count["1.75"], 1);
    EXPECT_EQ(count["1.8000000000000003"] + count["1.8"], 3);
}

TEST(Cli, PeriodOneGivesOneTrivialRow)
{
    auto r = run({"solve-bl", "--model", model("q1.json", R"({"potential": {"kind": "sos", "beta": 2.0}, "q": 1})"),
                  "--beta-min", "0.5", "--beta-max", "3", "--beta-step", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto body = rows(r.out);
    EXPECT_EQ(body.size(), 6u);
    for (const auto& row : body) {
        EXPECT_EQ(row[1], "trivial");
    }
}

TEST(Cli, MalformedModelIsAConfigError)
{
    auto r = run({"solve-bl", "--model", model("bad.json", "{\n  \"potential\": {\"kind\": \"sos\",\n  \"beta\": }\n}")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    auto missing = run({"solve-bl", "--model", model("nobeta.json", R"({"potential": {"kind": "sos"}})")});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("potential.beta"), std::string::npos);
    EXPECT_EQ(run({"solve-bl", "--model", (scratch() / "absent.json").string()}).code, 2);
    EXPECT_EQ(run({"solve-bl", "--bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, NumericalFailureExitCode)
{
    auto r = run({"marginal", "--model", model("sos.json", kSos2), "--depth", "3", "--window", "3", "--budget", "1000"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("VolumeTooLarge"), std::string::npos);
}

TEST(Cli, VerifyPassesOnTheSolvedLaw)
{
    auto r = run({"verify", "--model", model("sos.json", kSos2)});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    auto doc = json::parse(r.out);
    EXPECT_EQ(doc["schema_version"], 1);
    EXPECT_EQ(doc["config"]["window"], 3);
    EXPECT_EQ(doc["config"]["depth"], 2);
    EXPECT_TRUE(doc["passed"].get<bool>());
    EXPECT_GE(doc["checks"].size(), 7u);
}

// Reversibility and homogeneity hold for every positive law; the checks that
// need the boundary-law equation are the ones that fail.
TEST(Cli, VerifyFailsOffTheSolutionManifold)
{
    auto r = run({"verify", "--model", model("sos.json", kSos2), "--perturb", "0.1"});
    EXPECT_EQ(r.code, 1);
    auto doc = json::parse(r.out);
    std::map<std::string, bool> passed;
    for (const auto& c : doc["checks"]) {
        passed[c["name"]] = c["passed"];
    }
    EXPECT_FALSE(passed["boundary_law"]);
    EXPECT_FALSE(passed["consistency"]);
    EXPECT_FALSE(passed["restricted_dlr"]);
    EXPECT_TRUE(passed["reversibility"]);
    EXPECT_TRUE(passed["homogeneity"]);
}

TEST(Cli, VerifyTrivialLawAtTightTolerance)
{
    auto m = model("trivial.json", R"({"potential": {"kind": "sos", "beta": 2.0}, "boundary_law": [1, 1]})");
    auto r = run({"verify", "--model", m, "--tol", "1e-12", "--depth", "1"});
    EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, CriticalBeta)
{
    auto r = run({"critical-beta", "--q", "3", "--d", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_NEAR(doc["critical_beta"].get<double>(), std::acosh(1 + std::sqrt(2.0)), 1e-9);
    auto paired = json::parse(run({"critical-beta", "--q", "4", "--d", "3", "--ansatz", "q4_paired"}).out);
    EXPECT_NEAR(paired["critical_beta"].get<double>(), std::acosh(1.5), 1e-9);
    EXPECT_EQ(run({"critical-beta", "--q", "5"}).code, 2);
}

TEST(Cli, CounterexampleColumnIsMonotone)
{
    auto r = run({"counterexample", "--eps0", "0.1", "--eps1", "0.05", "--kmax", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto body = rows(r.out);
    ASSERT_EQ(body.size(), 12u);
    double prev = 0.0;
    for (const auto& row : body) {
        double closed = std::stod(row[1]);
        EXPECT_GT(closed, prev);
        EXPECT_NEAR(std::stod(row[2]), closed, 1e-10 * closed);
        prev = closed;
    }
    EXPECT_EQ(run({"counterexample", "--eps0", "0.1", "--eps1", "0.1"}).code, 2);
}

TEST(Cli, SampleWithZeroDrawsHasHeaderOnly)
{
    auto r = run({"sample", "--model", model("sos.json", kSos2), "--n", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(rows(r.out).empty());
    EXPECT_NE(r.out.find("sample,edge,increment\n"), std::string::npos);
    EXPECT_NE(r.out.find("# config: "), std::string::npos);
}

TEST(Cli, OutputsAreByteIdenticalForAFixedSeed)
{
    auto m = model("sos.json", kSos2);
    auto a = scratch() / "a.csv";
    auto b = scratch() / "b.csv";
    ASSERT_EQ(run({"sample", "--model", m, "--n", "5000", "--depth", "2", "--seed", "11", "--out", a.string()}).code, 0);
    ::setenv("GGM_WORKERS", "3", 1);
    ASSERT_EQ(run({"sample", "--model", m, "--n", "5000", "--depth", "2", "--seed", "11", "--out", b.string()}).code, 0);
    ::unsetenv("GGM_WORKERS");
    EXPECT_EQ(slurp(a), slurp(b));
    auto c = scratch() / "c.csv";
    run({"sample", "--model", m, "--n", "5000", "--depth", "2", "--seed", "12", "--out", c.string()});
    EXPECT_NE(slurp(a), slurp(c));

    auto s1 = scratch() / "s1.csv";
    auto s2 = scratch() / "s2.csv";
    run({"solve-bl", "--model", m, "--beta-min", "1", "--beta-max", "3", "--beta-step", "0.25", "--out", s1.string()});
    ::setenv("GGM_WORKERS", "4", 1);
    run({"solve-bl", "--model", m, "--beta-min", "1", "--beta-max", "3", "--beta-step", "0.25", "--out", s2.string()});
    ::unsetenv("GGM_WORKERS");
    EXPECT_EQ(slurp(s1), slurp(s2));
}

TEST(Cli, StructuredOutputsCarrySchemaAndConfig)
{
    auto m = model("sos.json", kSos2);
    auto marg = json::parse(run({"marginal", "--model", m, "--edges", "0,1", "--window", "2"}).out);
    EXPECT_EQ(marg["schema_version"], 1);
    EXPECT_EQ(marg["config"]["model"]["potential"]["beta"], 2.0);
    double total = 0.0;
    for (const auto& row : marg["table"]) {
        total += row["probability"].get<double>();
    }
    EXPECT_NEAR(total, 1.0, 1e-12);

    auto dump = json::parse(run({"chain", "dump", "--model", m}).out);
    EXPECT_EQ(dump["schema_version"], 1);
    EXPECT_EQ(dump["kernel_rows"].size(), 2u);
    EXPECT_NEAR(dump["alpha"][0].get<double>() + dump["alpha"][1].get<double>(), 1.0, 1e-14);

    auto corr = run({"correlation", "--model", m, "--nmax", "5"});
    ASSERT_EQ(corr.code, 0);
    auto body = rows(corr.out);
    ASSERT_EQ(body.size(), 5u);
    for (const auto& row : body) {
        EXPECT_LE(std::abs(std::stod(row[1])), std::stod(row[2]));
    }
    EXPECT_NE(corr.out.find("\"resolved\""), std::string::npos);
}
