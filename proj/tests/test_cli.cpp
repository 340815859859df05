#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "dmeq/cli.hpp"

using namespace dmeq;

namespace {

const std::filesystem::path kGolden = DMEQ_GOLDEN_DIR;
const std::filesystem::path kData = DMEQ_DATA_DIR;

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run_args(std::vector<std::string> args)
{
    args.insert(args.begin(), "dmeq");
    std::ostringstream out, err;
    const int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct GoldenCase {
    std::string file;
    std::vector<std::string> args;
};

const std::vector<GoldenCase> kGoldenCases{
    {"betti_p5.csv", {"betti", "--p", "5", "--format", "csv"}},
    {"betti_p7.json", {"betti", "--p", "7"}},
    {"betti_p7_trunc.ascii", {"betti", "--p", "7", "--max-degree", "4", "--format", "ascii"}},
    {"orbits_p3.json", {"orbits", "--p", "3", "--format", "json"}},
    {"orbits_p5.csv", {"orbits", "--p", "5", "--format", "csv"}},
    {"group_cohomology_p3_perm.csv", {"group-cohomology", "--p", "3", "--rep", "perm:(1 2 3)(4)", "--format", "csv"}},
    {"group_cohomology_p5_regular.json", {"group-cohomology", "--p", "5", "--rep", "regular", "--max-i", "4"}},
    {"e2_p3.json", {"e2", "--p", "3", "--max-i", "4"}},
    {"e2_p5.ascii", {"e2", "--p", "5", "--format", "ascii"}},
    {"collapse_p3.json", {"collapse", "--p", "3", "--window", "4", "--format", "json"}},
    {"inject_p5.json", {"inject", "--p", "5", "--window", "4", "--format", "json"}},
    {"fixed_points_p3.json", {"fixed-points", "--p", "3", "--format", "json"}},
    {"trees_p3.csv", {"trees", "--p", "3", "--format", "csv"}},
    {"moebius_p3.json", {"moebius-degree", "--p", "3"}},
    {"verify_all_p3.json", {"verify-all", "--p", "3"}},
};

} // namespace

TEST(CliGolden, OutputsMatchFrozenFiles)
{
    for (const auto& c : kGoldenCases) {
        const auto r = run_args(c.args);
        EXPECT_EQ(r.status, kExitOk) << c.file << ": " << r.err;
        EXPECT_EQ(r.out, slurp(kGolden / c.file)) << c.file;
    }
}

TEST(CliGolden, BorelFromFile)
{
    const auto r = run_args({"borel", "--input", (kData / "orbit_plus_point.json").string(), "--max-degree", "6"});
    EXPECT_EQ(r.status, kExitOk) << r.err;
    EXPECT_EQ(r.out, slurp(kGolden / "borel_orbit_plus_point.json"));
}

TEST(Cli, BettiCsvExample)
{
    const auto r = run_args({"betti", "--p", "5", "--format", "csv"});
    EXPECT_EQ(r.out, "degree,dim\n0,1\n2,16\n4,16\n6,1\n");
}

TEST(Cli, OrbitsJsonSchema)
{
    const auto j = nlohmann::json::parse(run_args({"orbits", "--p", "5"}).out);
    EXPECT_EQ(j["p"], 5);
    EXPECT_EQ(j["degrees"]["2"], 16);
    ASSERT_EQ(j["fixed"].size(), 4u);
    EXPECT_EQ(j["fixed"][0], nlohmann::json::array());
    EXPECT_EQ(j["fixed"][1][0]["set"], (std::vector<int>{1, 2, 3, 4, 5}));
    EXPECT_EQ(j["fixed"][1][0]["exp"], 1);
    ASSERT_EQ(j["cycles"].size(), 6u);
    for (const auto& c : j["cycles"])
        EXPECT_EQ(c.size(), 5u);
}

TEST(Cli, CertificateJsonSchema)
{
    const auto j = nlohmann::json::parse(run_args({"collapse", "--p", "5"}).out);
    EXPECT_EQ(j.size(), 3u);
    EXPECT_EQ(j["p"], 5);
    EXPECT_EQ(j["pass"], true);
    ASSERT_EQ(j["items"].size(), 5u);
    EXPECT_EQ(j["items"][0]["id"], "C1");
    EXPECT_TRUE(j["items"][0].contains("detail"));
}

TEST(Cli, VerifyAllCrossCounts)
{
    for (int p : {3, 5, 7}) {
        const auto r = run_args({"verify-all", "--p", std::to_string(p)});
        EXPECT_EQ(r.status, kExitOk) << r.out;
        const auto j = nlohmann::json::parse(r.out);
        EXPECT_EQ(j["pass"], true);
        EXPECT_EQ(j["cross_count"], p - 1);
        EXPECT_EQ(j["stages"].size(), 9u);
    }
}

TEST(Cli, VerifyAllStageOrder)
{
    const auto rep = verify_all(5, 4);
    std::vector<std::string> names;
    for (const auto& s : rep.stages)
        names.push_back(s.name);
    EXPECT_EQ(names, (std::vector<std::string>{"basis", "orbits", "group-cohomology", "e2", "collapse", "inject",
                                               "fixed-points", "cross-count", "localization"}));
    EXPECT_TRUE(rep.pass);
}

TEST(Cli, VerifyAllRecordsFailuresInsteadOfThrowing)
{
    const auto rep = verify_all(4, 4);
    EXPECT_FALSE(rep.pass);
    EXPECT_EQ(rep.cross_count, -1);
    EXPECT_FALSE(rep.stages.front().pass);
    EXPECT_NE(rep.stages.front().detail.find("p must be prime"), std::string::npos);
    EXPECT_EQ(rep.stages.size(), 9u);
    for (const auto& s : rep.stages)
        EXPECT_FALSE(s.pass) << s.name;
}

TEST(Cli, TimingsGoToStderrOnly)
{
    const auto plain = run_args({"verify-all", "--p", "3"});
    const auto timed = run_args({"verify-all", "--p", "3", "--timings"});
    EXPECT_EQ(plain.out, timed.out);
    EXPECT_TRUE(plain.err.empty());
    EXPECT_NE(timed.err.find("basis"), std::string::npos);
}

TEST(Cli, Deterministic)
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"e2", "--p", "7", "--format", "ascii"}, {"inject", "--p", "7"}, {"trees", "--p", "5"}}) {
        EXPECT_EQ(run_args(args).out, run_args(args).out);
    }
}

TEST(Cli, FormatsAgree)
{
    const auto json = nlohmann::ordered_json::parse(run_args({"betti", "--p", "7"}).out);
    const auto csv = run_args({"betti", "--p", "7", "--format", "csv"}).out;
    std::string expected = "degree,dim\n";
    for (const auto& [k, v] : json["degrees"].items())
        expected += k + "," + std::to_string(v.get<int>()) + "\n";
    EXPECT_EQ(csv, expected);
}

TEST(Cli, WritesToOutFile)
{
    const auto path = std::filesystem::temp_directory_path() / "dmeq_cli_out_test.csv";
    std::filesystem::remove(path);
    const auto r = run_args({"--out", path.string(), "betti", "--p", "3", "--format", "csv"});
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(path), "degree,dim\n0,1\n2,1\n");
    std::filesystem::remove(path);
}

TEST(CliExit, NonPrimeIsUsageError)
{
    const auto r = run_args({"e2", "--p", "4"});
    EXPECT_EQ(r.status, kExitUsage);
    EXPECT_NE(r.err.find("p must be prime"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(run_args({"betti", "--p", "1"}).status, kExitUsage);
    EXPECT_EQ(run_args({"verify-all"}).status, kExitUsage);
}

TEST(CliExit, UsageErrors)
{
    EXPECT_EQ(run_args({}).status, kExitUsage);
    EXPECT_EQ(run_args({"frobnicate", "--p", "3"}).status, kExitUsage);
    EXPECT_EQ(run_args({"betti", "--p", "3", "--format", "xml"}).status, kExitUsage);
    EXPECT_EQ(run_args({"betti", "--p", "three"}).status, kExitUsage);
    EXPECT_EQ(run_args({"collapse", "--p", "3", "--window", "0"}).status, kExitUsage);
    EXPECT_EQ(run_args({"group-cohomology", "--p", "3", "--rep", "sign"}).status, kExitUsage);
    EXPECT_EQ(run_args({"group-cohomology", "--p", "3", "--rep", "perm:(1 2)"}).status, kExitUsage);
    EXPECT_EQ(run_args({"fixed-points", "--p", "2"}).status, kExitUsage);
    EXPECT_EQ(run_args({"moebius-degree", "--p", "2"}).status, kExitUsage);
    EXPECT_EQ(run_args({"trees", "--p", "11"}).status, kExitUsage);
    EXPECT_EQ(run_args({"borel"}).status, kExitUsage);
    EXPECT_EQ(run_args({"borel", "--input", "/nonexistent/complex.json"}).status, kExitUsage);
    EXPECT_EQ(run_args({"borel", "--input", (kData / "not_equivariant.json").string()}).status, kExitUsage);
    EXPECT_EQ(run_args({"borel", "--p", "5", "--input", (kData / "circle.json").string()}).status, kExitUsage);
}

TEST(CliExit, HelpSucceeds)
{
    const auto r = run_args({"--help"});
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_NE(r.out.find("verify-all"), std::string::npos);
}

TEST(CliExit, CertificatesPass)
{
    for (const auto* sub : {"collapse", "inject"})
        for (const auto* p : {"2", "3", "5", "7"})
            EXPECT_EQ(run_args({sub, "--p", p}).status, kExitOk) << sub << " " << p;
}
