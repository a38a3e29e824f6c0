#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "qh/types.hpp"

using namespace qh;
using nlohmann::json;

namespace {
cli::RunConfig config(const std::string& command, const std::string& spec = "inf") {
    cli::RunConfig c;
    c.command = command;
    c.spec = spec;
    return c;
}
}  // namespace

TEST(Cli, ConfigHashIsStable) {
    auto a = config("coeffs"), b = config("coeffs");
    EXPECT_EQ(cli::config_hash(a), cli::config_hash(b));
    EXPECT_EQ(cli::config_hash(a).size(), 16u);
    b.kmax = 41;
    EXPECT_NE(cli::config_hash(a), cli::config_hash(b));
}

TEST(Cli, EvalJson) {
    auto c = config("eval");
    c.z = {"0.5", "0.5,3"};
    const auto j = json::parse(cli::cmd_eval(c).payload);
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["command"], "eval");
    EXPECT_EQ(j["config_hash"], cli::config_hash(c));
    ASSERT_EQ(j["values"].size(), 2u);
    EXPECT_NEAR(j["values"][0]["rho"][0].get<double>(), 1.0, 1e-14);
    const double re = j["values"][1]["rho"][0], im = j["values"][1]["rho"][1];
    EXPECT_NEAR(re * re + im * im, 1.0, 1e-12);
    c.z = {"1,2,3"};
    EXPECT_THROW(cli::cmd_eval(c), Error);
}

TEST(Cli, CoeffsBothAgree) {
    auto c = config("coeffs", "p:2");
    c.kmax = 12;
    const auto j = json::parse(cli::cmd_coeffs(c).payload);
    ASSERT_EQ(j["streams"].size(), 2u);
    EXPECT_LT(j["comparison"]["max_diff"].get<double>(), 1e-6);
    EXPECT_TRUE(j["comparison"]["within_bounds"].get<bool>());
    c.format = "csv";
    const auto csv = cli::cmd_coeffs(c).payload;
    std::istringstream is(csv);
    std::string banner, head;
    std::getline(is, banner);
    std::getline(is, head);
    EXPECT_EQ(banner, "# qh schema_version=1 command=coeffs config_hash=" + cli::config_hash(c));
    EXPECT_EQ(head, "method,k,re,im,err");
}

TEST(Cli, SpectrumLimitsAndKinds) {
    auto c = config("spectrum");
    c.n = 513;
    try {
        cli::cmd_spectrum(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "resource");
    }
    c.n = 16;
    for (const char* kind : {"hankel", "toeplitz", "pole-space"}) {
        c.kind = kind;
        const auto j = json::parse(cli::cmd_spectrum(c).payload);
        EXPECT_EQ(j["profile"]["truncation_size"], 16) << kind;
    }
    c.kind = "other";
    EXPECT_THROW(cli::cmd_spectrum(c), Error);
}

TEST(Cli, RunReportsErrorsWithExitCodes) {
    auto c = config("spectrum");
    c.n = 1000;
    testing::internal::CaptureStdout();
    EXPECT_EQ(cli::run(c), 2);
    const auto err = json::parse(testing::internal::GetCapturedStdout());
    EXPECT_EQ(err["error"]["code"], "resource");

    auto e = config("eval");
    e.z = {"-2"};
    testing::internal::CaptureStdout();
    EXPECT_EQ(cli::run(e), 1);
    const auto pole = json::parse(testing::internal::GetCapturedStdout());
    EXPECT_EQ(pole["error"]["code"], "pole");
    EXPECT_EQ(pole["error"]["location"][0], -2.0);

    testing::internal::CaptureStdout();
    EXPECT_EQ(cli::run(config("bogus")), 2);
    testing::internal::GetCapturedStdout();
}

TEST(Cli, OutputFileAndSidecar) {
    const auto dir = std::filesystem::temp_directory_path() / "qh_cli_test";
    std::filesystem::create_directories(dir);
    auto c = config("figure");
    c.grid = 64;
    c.format = "csv";
    c.output = (dir / "curve.csv").string();
    ASSERT_EQ(cli::run(c), 0);
    std::ifstream f(c.output), m(c.output + ".meta.json");
    ASSERT_TRUE(f && m);
    int lines = 0;
    for (std::string l; std::getline(f, l);) ++lines;
    EXPECT_EQ(lines, 2 + 64);
    const auto meta = json::parse(m);
    EXPECT_EQ(meta["config_hash"], cli::config_hash(c));
    EXPECT_TRUE(meta.contains("timestamp"));
    std::filesystem::remove_all(dir);
}

TEST(Cli, DeterministicPayload) {
    auto c = config("spectrum", "inf*p:2");
    c.n = 24;
    c.kind = "pole-space";
    EXPECT_EQ(cli::cmd_spectrum(c).payload, cli::cmd_spectrum(c).payload);
}
