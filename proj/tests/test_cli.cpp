#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result {
    int code;
    std::string out;
};

Result cli(const std::string &args)
{
    const auto cmd = std::string(QSERIES_CLI_PATH) + " " + args + " 2>&1";
    FILE *p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST(Cli, ExpandFunction)
{
    const auto r = cli("expand --function b:2:4,5 --order 10");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n1  2\n"), std::string::npos) << r.out;
}

TEST(Cli, ExpandEtaStructured)
{
    const auto r = cli("expand --eta 1:-1 --order 4 --format structured");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("coefficients"), nlohmann::json({"1", "1", "2", "3", "5"}));
}

TEST(Cli, ExpandResidues)
{
    const auto r = cli("expand --eta 1:-1 --order 5 --mod 3 --format structured");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out).at("coefficients"), nlohmann::json({"1", "1", "2", "0", "2", "1"}));
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(cli("expand --eta 1:-1 --order -1").code, 2);
    EXPECT_EQ(cli("expand --eta 1:x --order 3").code, 2);
    EXPECT_EQ(cli("expand --order 3").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("verify --format yaml").code, 2);
}

TEST(Cli, VerifyFlagship)
{
    const auto r = cli("verify --claim C-16");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("C-16  pass"), std::string::npos);
}

TEST(Cli, VerifyIdentity)
{
    EXPECT_EQ(cli("verify --identity L16").code, 0);
}

TEST(Cli, UnknownIdExitsTwo)
{
    const auto r = cli("verify --claim NOPE");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("unknown"), std::string::npos);
    EXPECT_NE(r.out.find("id"), std::string::npos);
    EXPECT_EQ(cli("verify --identity L99").code, 2);
}

TEST(Cli, FailingClaimExitsOne)
{
    const auto r = cli("verify --claim C-18 --format structured --omit-timing");
    EXPECT_EQ(r.code, 1);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("entries").at(0).at("witness").at("n"), 2);
}

TEST(Cli, ReportSubsetIsStructured)
{
    const auto r = cli("report --tag flagship --omit-timing");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("tool"), "qseries-verify");
    EXPECT_EQ(j.at("entries").size(), 1u);
    EXPECT_TRUE(j.at("config").contains("seed"));
}

TEST(Cli, ClaimsFile)
{
    const std::string path = testing::TempDir() + "claims.json";
    std::ofstream(path) << R"({"claims": [{"id": "X-11", "function": "p", "step": 11, "offset": 6, "modulus": 11,
                                       "kind": {"type": "vanishing"}}]})";
    EXPECT_EQ(cli("verify --claims-file " + path).code, 0);
    EXPECT_EQ(cli("verify --claims-file /nonexistent/file.json").code, 2);
}

TEST(Cli, OracleCheck)
{
    const auto r = cli("oracle-check --function b:4:3,2 --n-max 60");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("pass"), std::string::npos);
}

TEST(Cli, ExportRoundTripsClaims)
{
    const auto r = cli("export --what claims");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_GT(j.at("claims").size(), 100u);
    const std::string path = testing::TempDir() + "exported.json";
    std::ofstream(path) << r.out;
    const auto v = cli("verify --claims-file " + path + " --claim C-16 --omit-timing");
    EXPECT_EQ(v.code, 0) << v.out;
}
