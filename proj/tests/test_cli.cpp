// Runs the built tvgap binary and checks exit codes and output shape.

#include "app/report.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + std::string(TVGAP_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("tvgap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) {
        const fs::path p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

const char* kEq2 = R"({"d":1,"mixture_a":{"mu0":[-0.1],"mu1":[0.1]},"mixture_b":{"mu0":[-0.2],"mu1":[0.2]},"sigma":1})";

}  // namespace

TEST_F(Cli, BoundOneDimensional) {
    const CliRun r = run("bound --input " + write("eq2.json", kEq2));
    ASSERT_EQ(r.code, 0);
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc["schema_version"], tvgap::app::kSchemaVersion);
    EXPECT_EQ(doc["closed_form_lower"]["source"], "case1_contained");
    EXPECT_TRUE(doc["sandwich"]["pass"].get<bool>());
    EXPECT_LE(doc["lower"]["value"].get<double>(), doc["oracle"]["value"].get<double>());
}

TEST_F(Cli, BoundIdenticalIsZero) {
    const CliRun r = run("bound --input " +
                      write("same.json", R"({"d":2,"mixture_a":{"mu0":[0,0],"mu1":[1,0]},
                          "mixture_b":{"mu0":[1,0],"mu1":[0,0]},"sigma":[[1,0],[0,1]]})"));
    ASSERT_EQ(r.code, 0);
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc["lower"]["value"].get<double>(), 0.0);
    EXPECT_EQ(doc["upper"]["value"].get<double>(), 0.0);
    EXPECT_EQ(doc["oracle"]["value"].get<double>(), 0.0);
}

TEST_F(Cli, BoundIsReproducible) {
    const std::string in = write("nd.json", R"({"d":2,"mixture_a":{"mu0":[0,0],"mu1":[1,0.5]},
        "mixture_b":{"mu0":[0.2,0],"mu1":[1,0.9]},"sigma":[[1,0.3],[0.3,2]]})");
    const CliRun a = run("bound --mc-samples 20000 --seed 5 --input " + in);
    const CliRun b = run("bound --mc-samples 20000 --seed 5 --input " + in, "OMP_NUM_THREADS=1");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, SeedFlagBeatsEnvironment) {
    const std::string in = write("eq2.json", kEq2);
    EXPECT_EQ(json::parse(run("bound --no-oracle --input " + in).out)["seed"], 0);
    EXPECT_EQ(json::parse(run("bound --no-oracle --input " + in, "TVGAP_SEED=17").out)["seed"], 17);
    EXPECT_EQ(json::parse(run("bound --no-oracle --seed 3 --input " + in, "TVGAP_SEED=17").out)["seed"], 3);
    EXPECT_EQ(run("bound --no-oracle --input " + in, "TVGAP_SEED=abc").code, 1);
}

TEST_F(Cli, InputErrorsExitOne) {
    EXPECT_EQ(run("bound --input " + (dir / "missing.json").string()).code, 1);
    EXPECT_EQ(run("bound --input " + write("bad.json", "{\"d\": 1,")).code, 1);
    EXPECT_EQ(run("bound --input " + write("npd.json", R"({"d":2,"mixture_a":{"mu0":[0,0],"mu1":[1,1]},
        "mixture_b":{"mu0":[0,0],"mu1":[1,1]},"sigma":[[1,2],[2,1]]})")).code, 1);
    EXPECT_EQ(run("bound --input " + write("eq2.json", kEq2) + " --mc-samples 5").code, 1);
    EXPECT_EQ(run("bound").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, NotPositiveDefiniteMessage) {
    const std::string in = write("npd.json", R"({"d":2,"mixture_a":{"mu0":[0,0],"mu1":[1,1]},
        "mixture_b":{"mu0":[0,0],"mu1":[1,1]},"sigma":[[1,2],[2,1]]})");
    const std::string cmd = std::string(TVGAP_CLI_PATH) + " bound --input " + in + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    ASSERT_NE(p, nullptr);
    std::string text;
    std::array<char, 1024> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) text.append(buf.data(), n);
    pclose(p);
    EXPECT_NE(text.find("sigma"), std::string::npos);
    EXPECT_NE(text.find("Cholesky pivot 1"), std::string::npos);
}

TEST_F(Cli, Scan) {
    const CliRun r = run("scan --family eq2 --grid 0.1,0.2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("family,param,", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);

    const CliRun empty = run("scan --family eq3 --grid ''");
    ASSERT_EQ(empty.code, 0);
    EXPECT_EQ(std::count(empty.out.begin(), empty.out.end(), '\n'), 1);

    EXPECT_EQ(run("scan --family eq4 --grid 0.1").code, 1);
    EXPECT_EQ(run("scan --family eq2 --grid 0.1,x").code, 1);
}

TEST_F(Cli, PaperExamplesAndSmallVerify) {
    const CliRun ex = run("paper-examples");
    ASSERT_EQ(ex.code, 0);
    EXPECT_TRUE(json::parse(ex.out)["pass"].get<bool>());

    const CliRun v = run("verify --n-1d 20 --n-nd 4 --seed 9");
    ASSERT_EQ(v.code, 0);
    const json doc = json::parse(v.out);
    EXPECT_EQ(doc["schema_version"], tvgap::app::kSchemaVersion);
    EXPECT_EQ(doc["seed"], 9);
    EXPECT_EQ(run("verify --n-1d 20 --n-nd 4 --seed 9", "OMP_NUM_THREADS=1").out, v.out);
}

TEST(Sandwich, Verdict) {
    using tvgap::app::check_sandwich;
    EXPECT_TRUE(check_sandwich(0.1, 0.2, 0.3, 0).pass());
    EXPECT_TRUE(check_sandwich(0.2 + 1e-11, 0.2, 0.3, 1e-10).pass());
    EXPECT_FALSE(check_sandwich(0.25, 0.2, 0.3, 1e-10).lower_ok);
    EXPECT_FALSE(check_sandwich(0.1, 0.4, 0.3, 1e-10).upper_ok);
    EXPECT_DOUBLE_EQ(check_sandwich(0.1, 0.2, 0.25, 0).slack, 0.05);
}
