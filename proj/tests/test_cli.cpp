#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "approx.hpp"
#include "kappa/estimator.hpp"
#include "kappa/inference.hpp"
#include "kappa/regression.hpp"

using nlohmann::json;

namespace {

#ifndef KAPPA_CLI_PATH
#error "KAPPA_CLI_PATH must be defined by the build"
#endif

struct RunResult {
    int exitCode = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(KAPPA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "cli_" + name;  // cwd of the test binary
    std::ofstream f(path);
    f << content;
    REQUIRE(f.good());
    return path;
}

const char* kSmokeCsv = "a,b,c\n1,2,3\n2,1,4\n3,4,1\n4,3,2\n5,6,5\n6,5,6\n";

}  // namespace

TEST_CASE("cli corr json matches the in-process estimate") {
    std::string csv = write_temp("corr.csv", kSmokeCsv);
    RunResult r = run("--format json corr " + csv);
    REQUIRE(r.exitCode == 0);
    json parsed = json::parse(r.out);
    kappa::KappaEstimate e = kappa::kappa_corr({1, 2, 3, 4, 5, 6}, {2, 1, 4, 3, 6, 5});
    CHECK(parsed["tauCorr"].get<double>() == e.tauCorr);
    CHECK(parsed["tauCov"].get<double>() == e.tauCov);
    CHECK(parsed["n"] == 6);
    CHECK(parsed["colX"] == "a");
    CHECK(parsed["colY"] == "b");
}

TEST_CASE("cli corr handles explicit column selection") {
    std::string csv = write_temp("corr2.csv", kSmokeCsv);
    RunResult r = run("--format json corr " + csv + " --col-x b --col-y c");
    REQUIRE(r.exitCode == 0);
    json parsed = json::parse(r.out);
    CHECK(parsed["colX"] == "b");
    CHECK(parsed["colY"] == "c");
    kappa::KappaEstimate e = kappa::kappa_corr({2, 1, 4, 3, 6, 5}, {3, 4, 1, 2, 5, 6});
    CHECK(parsed["tauCorr"].get<double>() == e.tauCorr);
}

TEST_CASE("cli output is byte-identical across runs") {
    std::string csv = write_temp("det.csv", kSmokeCsv);
    RunResult a = run("--format json corr " + csv);
    RunResult b = run("--format json corr " + csv);
    CHECK(a.out == b.out);
    std::string conf = write_temp("det.conf",
                                  "study = calibrate\nnGrid = 10,15\nreplicates = 200\nseed = 8\n");
    RunResult s1 = run("--format json simulate " + conf);
    RunResult s2 = run("--format json simulate " + conf);
    REQUIRE(s1.exitCode == 0);
    CHECK(s1.out == s2.out);
}

TEST_CASE("cli table mode is human formatted") {
    std::string csv = write_temp("table.csv", kSmokeCsv);
    RunResult r = run("corr " + csv);
    REQUIRE(r.exitCode == 0);
    CHECK(r.out.find("tauCorr") != std::string::npos);
    CHECK(r.out.find("wald") != std::string::npos);
    CHECK(r.out.find('{') == std::string::npos);
}

TEST_CASE("cli exit codes distinguish input and numerical failures") {
    std::string csv = write_temp("bad.csv", kSmokeCsv);
    CHECK(run("corr /no/such/file.csv").exitCode == 2);
    CHECK(run("corr " + csv + " --col-x nope").exitCode == 2);
    CHECK(run("totally-bogus-subcommand").exitCode == 2);
    CHECK(run("corr").exitCode == 2);  // missing required positional
    std::string flat = write_temp("flat.csv", "a,b\n1,7\n2,7\n3,7\n");
    CHECK(run("corr " + flat).exitCode == 3);  // constant column, degenerate margin
    CHECK(run("--format json corr " + flat).exitCode == 3);
}

TEST_CASE("cli help exits zero") {
    CHECK(run("--help").exitCode == 0);
    CHECK(run("corr --help").exitCode == 0);
}

TEST_CASE("cli matrix json agrees with the library") {
    std::string csv = write_temp("matrix.csv", kSmokeCsv);
    RunResult r = run("--format json matrix " + csv);
    REQUIRE(r.exitCode == 0);
    json parsed = json::parse(r.out);
    CHECK(parsed["p"] == 3);
    kappa::KappaEstimate ab = kappa::kappa_corr({1, 2, 3, 4, 5, 6}, {2, 1, 4, 3, 6, 5});
    CHECK(parsed["tau"][0][1].get<double>() == ab.tauCorr);
    CHECK(parsed["tau"][1][0].get<double>() == ab.tauCorr);
    CHECK(parsed["tests"].size() == 3);
}

TEST_CASE("cli fit json matches an in-process fit") {
    std::string csv = write_temp("fit.csv", kSmokeCsv);
    RunResult r = run("--format json fit " + csv + " --response c --predictors a,b");
    REQUIRE(r.exitCode == 0);
    json parsed = json::parse(r.out);

    std::vector<double> X = {1, 2, 2, 1, 3, 4, 4, 3, 5, 6, 6, 5};
    kappa::ContrastDesign d = kappa::build_design(X, 6, 2, {3, 4, 1, 2, 5, 6});
    kappa::RegressionFit f = kappa::fit(d);
    REQUIRE(parsed["theta"].size() == 2);
    CHECK(parsed["theta"][0].get<double>() == f.theta[0]);
    CHECK(parsed["theta"][1].get<double>() == f.theta[1]);
    CHECK(parsed["converged"] == true);
    CHECK(parsed["fullRank"] == true);
}

TEST_CASE("cli fit reports and exits 3 when the iteration cap bites") {
    std::string csv = write_temp("fitcap.csv", kSmokeCsv);
    RunResult r = run("--format json fit " + csv +
                      " --response c --predictors a,b --max-iter 0");
    CHECK(r.exitCode == 3);
    json parsed = json::parse(r.out);  // the report is still printed
    CHECK(parsed["converged"] == false);
    CHECK(parsed["iterations"] == 0);
}

TEST_CASE("cli simulate runs a small study and honours --seed") {
    std::string conf = write_temp(
        "sim.conf", "study = calibrate\nnGrid = 10\nreplicates = 150\nseed = 4\n");
    RunResult a = run("--format json simulate " + conf);
    REQUIRE(a.exitCode == 0);
    json pa = json::parse(a.out);
    CHECK(pa["study"] == "calibrate");
    CHECK(pa["cHat"].get<double>() > 0.0);
    CHECK(pa["seed"] == 4);

    RunResult b = run("--format json --seed 4 simulate " + conf);
    CHECK(b.out == a.out);  // explicit seed equal to the config seed changes nothing
    RunResult c = run("--format json --seed 5 simulate " + conf);
    REQUIRE(c.exitCode == 0);
    CHECK(json::parse(c.out)["seed"] == 5);
    CHECK(c.out != a.out);
}

TEST_CASE("cli simulate rejects malformed configs") {
    std::string conf = write_temp("bad.conf", "study = calibrate\nnGrid = 10\nwhat = 1\n");
    CHECK(run("simulate " + conf).exitCode == 2);
    std::string conf2 = write_temp("bad2.conf", "study = calibrate\n");  // nGrid missing
    CHECK(run("simulate " + conf2).exitCode == 2);
    CHECK(run("simulate /missing.conf").exitCode == 2);
}

TEST_CASE("cli csv flags flow through to the parser") {
    std::string csv = write_temp("semi.csv", "1;2\n2;1\n3;4\n4;3\n5;6\n6;5\n");
    RunResult r = run("--format json --delimiter ';' --no-header corr " + csv);
    REQUIRE(r.exitCode == 0);
    json parsed = json::parse(r.out);
    CHECK(parsed["colX"] == "col1");
    CHECK(parsed["colY"] == "col2");

    std::string na = write_temp("na.csv", "a,b\n1,2\nna,3\n2,1\n3,4\n4,3\n5,6\n6,5\n");
    CHECK(run("corr " + na).exitCode == 2);
    RunResult dropped = run("--format json --na-policy drop-row corr " + na);
    REQUIRE(dropped.exitCode == 0);
    CHECK(json::parse(dropped.out)["n"] == 6);
}

TEST_CASE("cli variance flags change the reported model") {
    std::string csv = write_temp("vm.csv", kSmokeCsv);
    RunResult r = run("--format json --c 0.02 --variance-denominator n-2 corr " + csv);
    REQUIRE(r.exitCode == 0);
    json parsed = json::parse(r.out);
    CHECK(parsed["c"] == 0.02);
    CHECK(parsed["varianceDenominator"] == "n-2");
    kappa::KappaEstimate e = kappa::kappa_corr({1, 2, 3, 4, 5, 6}, {2, 1, 4, 3, 6, 5});
    kappa::VarianceModel vm{0.02, kappa::VarianceDenominator::N_minus_2};
    CHECK(parsed["se"].get<double>() == kappa::standard_error(e.tauCorr, 6, vm));
    CHECK(parsed["wald"]["statistic"].get<double>() ==
          kappa::wald_test(e.tauCorr, 6, vm).statistic);
}
