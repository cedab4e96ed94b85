#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "cydegen/cydegen.hpp"

using namespace cydegen;

namespace {

struct Run {
    int status = -1;
    std::string output;  // stdout followed by stderr
    std::string out;     // stdout only
};

Run run(const std::string& args) {
    const auto err_path = std::filesystem::temp_directory_path() / ("cydegen_cli_err_" + std::to_string(::getpid()));
    const std::string command = std::string(CYDEGEN_CLI) + " " + args + " 2>" + err_path.string();
    Run r;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream err(err_path);
    std::string err_text((std::istreambuf_iterator<char>(err)), std::istreambuf_iterator<char>());
    std::filesystem::remove(err_path);
    r.output = r.out + err_text;
    return r;
}

std::string sample(const std::string& name) { return std::string(CYDEGEN_SAMPLES) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(CliMilnor, E8Curve) {
    auto r = run("milnor 'x^3+y^5' -v x,y");
    EXPECT_EQ(r.status, 0) << r.output;
    EXPECT_TRUE(contains(r.out, "mu = 8")) << r.out;
}

TEST(CliMilnor, ThreeSquares) {
    auto r = run("milnor 'x^2+y^2+z^2' -v x,y,z");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "mu = 1"));
}

TEST(CliMilnor, SyntaxErrorExitsTwo) {
    auto r = run("milnor 'x^^2'");
    EXPECT_EQ(r.status, 2);
    EXPECT_TRUE(contains(r.output, "offset 2")) << r.output;
}

TEST(CliMilnor, NonIsolatedExitsThree) {
    auto r = run("milnor 'x^2' -v x,y --cap 6");
    EXPECT_EQ(r.status, 3) << r.output;
}

TEST(CliMilnor, JsonRoundTrips) {
    auto r = run("--format json milnor 'x^3+y^5' -v x,y");
    ASSERT_EQ(r.status, 0);
    auto doc = json::parse(r.out);
    EXPECT_EQ(milnor_result_from_json(doc), milnor_number(parse_poly("x^3+y^5", {"x", "y"})));
    // The format flag is also accepted after the subcommand.
    auto late = run("milnor 'x^3+y^5' -v x,y --format json");
    EXPECT_EQ(late.out, r.out);
}

TEST(CliLct, QuadraticModel) {
    auto r = run("lct " + sample("quadratic_n2.json"));
    EXPECT_EQ(r.status, 0) << r.output;
    EXPECT_TRUE(contains(r.out, "alpha = 0\n"));
    EXPECT_TRUE(contains(r.out, "beta = 0\n"));
}

TEST(CliLct, SemistableTriplePoint) {
    auto r = run("--format json lct " + sample("semistable_3fold.json"));
    ASSERT_EQ(r.status, 0) << r.output;
    auto rep = asymptotic_report_from_json(json::parse(r.out));
    EXPECT_EQ(rep.beta, 2);
    EXPECT_EQ(rep.alpha, 0);
    EXPECT_EQ(rep, theorem_a_report(load_ncd_model(sample("semistable_3fold.json"))));
}

TEST(CliLct, FullFiberInBExitsTwo) {
    auto r = run("lct " + sample("full_fiber_in_b.json"));
    EXPECT_EQ(r.status, 2);
    EXPECT_TRUE(contains(r.output, "B contains the full fiber")) << r.output;
}

TEST(CliLct, MissingFileExitsTwo) { EXPECT_EQ(run("lct /nonexistent.json").status, 2); }

TEST(CliAlphaBcov, NodeOnK3) {
    auto r = run("alpha-bcov -n 2 --chi-general 24 --chi-special 23 --alpha 0 --beta 0 --b-correction 0");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "alpha_BCOV = 5/2"));
    EXPECT_TRUE(contains(r.out, "loglog coefficient = 0"));
    EXPECT_TRUE(contains(r.out, "log|log|s|^2|"));
}

TEST(CliAlphaBcov, OddDimensionWarns) {
    auto r = run("alpha-bcov -n 3 --chi-general -200 --chi-special -199");
    EXPECT_EQ(r.status, 0) << r.output;
    EXPECT_TRUE(contains(r.out, "alpha_BCOV = -29/6"));  // -116/24
    EXPECT_TRUE(contains(r.output, "warning: odd n"));
}

TEST(CliAlphaBcov, LogLogOnly) {
    auto r = run("--format json alpha-bcov -n 2 --chi-general 24 --chi-special 24 --beta 1");
    ASSERT_EQ(r.status, 0);
    auto rep = bcov_report_from_json(json::parse(r.out));
    EXPECT_EQ(rep.alpha_bcov, 0);
    EXPECT_EQ(rep.loglog_coefficient, 2);
    EXPECT_EQ(rep, alpha_bcov(2, 24, 24, 0, 1));
}

TEST(CliAlphaBcov, AlphaOutOfRangeExitsTwo) {
    EXPECT_EQ(run("alpha-bcov -n 2 --chi-general 24 --chi-special 23 --alpha 1").status, 2);
    EXPECT_EQ(run("alpha-bcov -n 2 --chi-general 24 --chi-special 23 --alpha 0.5").status, 2);
}

TEST(CliVerify, UpToThree) {
    auto r = run("verify --n-max 3");
    EXPECT_EQ(r.status, 0) << r.output;
    EXPECT_TRUE(contains(r.out, "verify_omega"));
    EXPECT_TRUE(contains(r.out, "total"));
}

TEST(CliVerify, DefaultIsFiveAndFast) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = run("--format json verify");
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ASSERT_EQ(r.status, 0) << r.output;
    auto doc = json::parse(r.out);
    EXPECT_EQ(doc["n_max"], 5);
    EXPECT_EQ(doc["checks"].size(), 15u);
    EXPECT_TRUE(doc["ok"].get<bool>());
    EXPECT_LT(dt, 60.0);
}

TEST(CliVerify, ParallelMatchesSequential) {
    auto r = run("verify --n-max 4 --parallel");
    EXPECT_EQ(r.status, 0) << r.output;
}

TEST(CliVerify, AboveCapExitsTwo) {
    auto r = run("verify --n-max 9");
    EXPECT_EQ(r.status, 2);
    EXPECT_TRUE(contains(r.output, "cap"));
    EXPECT_EQ(run("verify --n-max 0").status, 2);
}

TEST(CliFit, LegendrePasses) {
    auto r = run("fit legendre --s-min 1e-12 --s-max 1e-3 -n 40");
    EXPECT_EQ(r.status, 0) << r.output;
    EXPECT_TRUE(contains(r.out, "PASS"));
}

TEST(CliFit, BareBasisFailsRegression) {
    auto r = run("fit legendre --corrections 0");
    EXPECT_EQ(r.status, 1) << r.output;
    EXPECT_TRUE(contains(r.out, "FAIL"));
}

TEST(CliFit, BadRangeExitsTwo) {
    EXPECT_EQ(run("fit legendre --s-min 0.4 --s-max 0.1").status, 2);
    EXPECT_EQ(run("fit legendre --s-min 0.1 --s-max 0.6").status, 2);
}

TEST(CliFit, CsvEmitThenRefit) {
    const auto csv = std::filesystem::temp_directory_path() / ("cydegen_samples_" + std::to_string(::getpid()) + ".csv");
    auto emit = run("--format json fit legendre --csv " + csv.string());
    ASSERT_EQ(emit.status, 0) << emit.output;
    auto refit = run("--format json fit csv " + csv.string());
    ASSERT_EQ(refit.status, 0) << refit.output;
    auto a = fit_result_from_json(json::parse(emit.out)["fit"]);
    auto b = fit_result_from_json(json::parse(refit.out)["fit"]);
    EXPECT_EQ(a.alpha_hat, b.alpha_hat);
    EXPECT_EQ(a.beta_hat, b.beta_hat);
    EXPECT_EQ(json::parse(refit.out)["count"], 40);

    auto text = run("fit csv " + csv.string());
    EXPECT_EQ(text.status, 0);
    EXPECT_TRUE(contains(text.out, "alpha_hat"));
    EXPECT_EQ(run("fit csv " + csv.string() + " --expect-alpha 0 --expect-beta 1").status, 0);
    EXPECT_EQ(run("fit csv " + csv.string() + " --expect-beta 2").status, 1);
    std::filesystem::remove(csv);
}

TEST(CliEuler, QuinticThreefold) {
    auto r = run("euler --ambient 4 --degree 5");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "= -200"));
}

TEST(CliYoshikawa, RoutesPrinted) {
    auto r = run("--format json yoshikawa -n 2 --milnor 1");
    ASSERT_EQ(r.status, 0) << r.output;
    auto doc = json::parse(r.out);
    EXPECT_EQ(doc["isolated"], "-1/24");
    EXPECT_EQ(doc["hypersurface_family"], "-1/24");
    EXPECT_EQ(doc["kulikov_surface"], "-1/24");
    EXPECT_EQ(run("yoshikawa -n 3 --delta-chi -1").status, 0);
    EXPECT_EQ(run("yoshikawa -n 2").status, 2);
    EXPECT_EQ(run("yoshikawa -n 2 --milnor 1,-2").status, 2);
}

TEST(CliUsage, BadInvocationsExitTwo) {
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("--format yaml euler --ambient 3 --degree 4").status, 2);
    EXPECT_EQ(run("--help").status, 0);
}
