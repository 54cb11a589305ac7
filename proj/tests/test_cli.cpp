#include "r0colloc/cli.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace r0colloc::cli;

namespace {

struct Outcome {
    int status;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "r0colloc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string s; std::getline(in, s);) v.push_back(s);
    return v;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("r0colloc_test_" + name);
}

}  // namespace

TEST(Cli, ComputeA2) {
    const Outcome o = invoke({"compute", "--preset", "A2", "--n", "40"});
    ASSERT_EQ(o.status, kExitOk) << o.err;
    const auto j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["preset"], "A2");
    EXPECT_EQ(j["N"], 40);
    EXPECT_NEAR(j["r0"].get<double>(), 1.2, 1e-10);
    EXPECT_EQ(j["method"], "ngo-product");
    EXPECT_TRUE(j["dominant_is_real"].get<bool>());
    EXPECT_FALSE(j.contains("upper_bound"));
    EXPECT_EQ(o.out.back(), '\n');
}

TEST(Cli, ComputeB22IncludesBound) {
    const Outcome o = invoke({"compute", "--preset", "b2.2", "--n", "50"});
    ASSERT_EQ(o.status, kExitOk) << o.err;
    const auto j = nlohmann::json::parse(o.out);
    EXPECT_NEAR(j["r0"].get<double>(), 1.59375, 1e-10);
    EXPECT_GE(j["upper_bound"].get<double>(), j["r0"].get<double>());
}

TEST(Cli, ModelANeedsDegreeTwo) {
    const Outcome o = invoke({"compute", "--preset", "A1", "--n", "1"});
    EXPECT_EQ(o.status, kExitInvalid);
    EXPECT_NE(o.err.find("N >= 2"), std::string::npos);
}

TEST(Cli, InvalidArguments) {
    EXPECT_EQ(invoke({}).status, kExitInvalid);
    EXPECT_EQ(invoke({"compute", "--n", "10"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"compute", "--preset", "A1"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"compute", "--preset", "Q7", "--n", "10"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"compute", "--preset", "A1", "--n", "x"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"compute", "--preset", "A1", "--n", "10", "--set", "nope=1"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"compute", "--preset", "A1", "--n", "10", "--set", "beta"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"compute", "--preset", "A1", "--n", "10", "--method", "qz"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"compute", "--preset", "A1", "--n", "10", "--format", "xml"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"converge", "--preset", "A1", "--n-list", "10:1:5"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"sweep", "--preset", "A1", "--n", "10", "--vary", "beta=0:1:1"}).status, kExitInvalid);
    EXPECT_EQ(invoke({"frobnicate", "--preset", "A1"}).status, kExitInvalid);
}

TEST(Cli, HelpExitsZero) {
    const Outcome o = invoke({"--help"});
    EXPECT_EQ(o.status, kExitOk);
    EXPECT_NE(o.out.find("--preset"), std::string::npos);
}

TEST(Cli, NumericalFailureExitsTwo) {
    // No removal and full vertical transmission: constants lie in the kernel of M.
    const Outcome o = invoke({"compute", "--preset", "B1", "--n", "100", "--set", "gamma=0",
                              "--set", "delta=0", "--set", "theta=1", "--set", "l=2"});
    EXPECT_EQ(o.status, kExitNumerical);
    EXPECT_NE(o.err.find("condition estimate"), std::string::npos) << o.err;
}

TEST(Cli, ConvergeCsv) {
    const Outcome o = invoke({"converge", "--preset", "A1", "--n-list", "4:4:20", "--points", "200"});
    ASSERT_EQ(o.status, kExitOk) << o.err;
    const auto v = lines(o.out);
    ASSERT_EQ(v.size(), 6u);
    EXPECT_EQ(v[0], "N,err_r0,err_phi");
    EXPECT_EQ(v[1].rfind("4,", 0), 0u);
}

TEST(Cli, ConvergeWithoutExactEigenfunctionLeavesColumnEmpty) {
    const Outcome o = invoke({"converge", "--preset", "A3.1", "--n-list", "10:10:30", "--nbar", "60"});
    ASSERT_EQ(o.status, kExitOk) << o.err;
    const auto v = lines(o.out);
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[1].back(), ',');
}

TEST(Cli, Sweep1DAnd2D) {
    const Outcome a = invoke({"sweep", "--preset", "A3.1", "--set", "mu=1", "--vary", "beta=1:20:5", "--n", "20"});
    ASSERT_EQ(a.status, kExitOk) << a.err;
    auto v = lines(a.out);
    ASSERT_EQ(v.size(), 6u);
    EXPECT_EQ(v[0], "beta,r0");

    const Outcome b = invoke({"sweep", "--preset", "B3", "--vary", "theta=0:1:3", "--vary", "k=10:30:2", "--n", "20"});
    ASSERT_EQ(b.status, kExitOk) << b.err;
    v = lines(b.out);
    ASSERT_EQ(v.size(), 7u);
    EXPECT_EQ(v[0], "theta,k,r0");
    EXPECT_EQ(v[1].rfind("0,10,", 0), 0u);
    EXPECT_EQ(v[2].rfind("0,30,", 0), 0u);
    EXPECT_EQ(v[3].rfind("0.5,10,", 0), 0u);
}

TEST(Cli, SweepFailuresAreNanRows) {
    const Outcome o = invoke({"sweep", "--preset", "A1", "--vary", "beta=-1:2:3", "--n", "10"});
    ASSERT_EQ(o.status, kExitOk) << o.err;
    const auto v = lines(o.out);
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[1], "-1,nan");
    EXPECT_FALSE(o.err.empty());
}

TEST(Cli, EigenfunctionCsv) {
    const Outcome o = invoke({"eigenfunction", "--preset", "B2.2", "--n", "6", "--points", "11"});
    ASSERT_EQ(o.status, kExitOk) << o.err;
    const auto v = lines(o.out);
    ASSERT_EQ(v.size(), 12u);
    EXPECT_EQ(v[0], "x,phi,psi");
    EXPECT_EQ(v[11].rfind("1,", 0), 0u);
}

TEST(Cli, Bound) {
    auto o = invoke({"bound", "--preset", "A3.2"});
    ASSERT_EQ(o.status, kExitOk);
    EXPECT_EQ(nlohmann::json::parse(o.out)["upper_bound"].get<double>(), 2.0);
    o = invoke({"bound", "--preset", "B1", "--set", "theta=0", "--n", "200"});
    ASSERT_EQ(o.status, kExitOk) << o.err;
    EXPECT_NEAR(nlohmann::json::parse(o.out)["upper_bound"].get<double>(), 52.0, 1e-8);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
    const auto cfg = temp_file("config.json");
    {
        std::ofstream f(cfg);
        f << R"({"command": "compute", "preset": "A2", "n": 10, "set": {"beta": 3}})";
    }
    const Outcome a = invoke({"--config", cfg.string(), "--n", "40"});
    ASSERT_EQ(a.status, kExitOk) << a.err;
    const auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["N"], 40);
    EXPECT_NEAR(j["r0"].get<double>(), 1.5, 1e-10);

    const Outcome b = invoke({"--config", cfg.string(), "--n", "40", "--set", "beta=1.5"});
    EXPECT_NEAR(nlohmann::json::parse(b.out)["r0"].get<double>(), 1.2, 1e-10);

    const Outcome c = invoke({"--config", cfg.string()});
    const Outcome d = invoke({"--config", cfg.string()});
    EXPECT_EQ(c.out, d.out);

    {
        std::ofstream f(cfg);
        f << R"({"command": "compute", "bogus": 1})";
    }
    EXPECT_EQ(invoke({"--config", cfg.string()}).status, kExitInvalid);
    EXPECT_EQ(invoke({"--config", "/nonexistent/file.json"}).status, kExitInvalid);
    std::filesystem::remove(cfg);
}

TEST(Cli, OutFile) {
    const auto path = temp_file("out.json");
    const Outcome o = invoke({"compute", "--preset", "A1", "--n", "20", "--out", path.string()});
    ASSERT_EQ(o.status, kExitOk) << o.err;
    EXPECT_TRUE(o.out.empty());
    std::ifstream f(path);
    const auto j = nlohmann::json::parse(f);
    EXPECT_NEAR(j["r0"].get<double>(), 2.0, 1e-10);
    std::filesystem::remove(path);
}

TEST(Cli, FormatNumberRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 1.59375, 6.02214076e23, -2.5e-300}) {
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
    EXPECT_EQ(format_number(2.0), "2");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
}

TEST(Cli, DegreeList) {
    EXPECT_EQ(parse_degree_list("5:5:20"), (std::vector<int>{5, 10, 15, 20}));
    EXPECT_EQ(parse_degree_list("3,7,9"), (std::vector<int>{3, 7, 9}));
    EXPECT_THROW(parse_degree_list("5:0:20"), std::invalid_argument);
    EXPECT_THROW(parse_degree_list("9,3"), std::invalid_argument);
    EXPECT_THROW(parse_degree_list("a:b:c"), std::invalid_argument);
}
