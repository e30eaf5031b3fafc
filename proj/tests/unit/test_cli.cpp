#include "helpers.hpp"

#include "nowcast/cli.hpp"
#include "nowcast/csv_io.hpp"
#include "nowcast/error.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace nowcast;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "nowcast");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and usage errors") {
    CHECK(run({"--help"}).code == cli::kExitOk);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"nowcast", "--quarter", "2019Q4"}).code == cli::kExitUsage);
}

TEST_CASE("nowcast command") {
    testing::TempDir dir("cli_nowcast");
    const auto data = dir.file("data.csv");
    write_csv(data, testing::synthetic());

    auto r = run({"nowcast", "--data", data, "--quarter", "2019Q4", "--day", "100", "--output", dir.file("n.json")});
    CHECK(r.code == cli::kExitOk);
    for (const char* s : {"median of simple forecasts", "Theta benchmark (theta_1p)"}) {
        CHECK(r.out.find(s) != std::string::npos);
    }
    int model_lines = 0;
    std::istringstream lines(r.out);
    for (std::string line; std::getline(lines, line);) {
        if (!line.empty() && line[0] >= '1' && line[0] <= '6') ++model_lines;
    }
    CHECK(model_lines == 6);
    CHECK(slurp(dir.file("n.json")).find("\"median_corrected\"") != std::string::npos);

    r = run({"nowcast", "--data", data, "--quarter", "2019Q4", "--day", "45"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("{0,30,60,90,100}") != std::string::npos);

    r = run({"nowcast", "--data", data, "--quarter", "2019Q4", "--day", "0", "--calendar", dir.file("missing.txt")});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find(dir.file("missing.txt")) != std::string::npos);
    CHECK(r.err.rfind("error: ", 0) == 0);

    r = run({"nowcast", "--data", dir.file("nope.csv"), "--quarter", "2019Q4", "--day", "0"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("nope.csv") != std::string::npos);
}

TEST_CASE("computation failures exit with 1") {
    testing::TempDir dir("cli_fail");
    auto data = testing::synthetic();
    data.monthly.erase("CAR");
    write_csv(dir.file("data.csv"), data);
    const auto r = run({"nowcast", "--data", dir.file("data.csv"), "--quarter", "2019Q4", "--day", "60"});
    CHECK(r.code == cli::kExitFailure);
    CHECK(r.err.find("model 3") != std::string::npos);
}

TEST_CASE("config parsing") {
    auto job = cli::parse_backtest_config(R"({
        // comment
        "data": ["a.csv", "/abs/b.csv"],
        "calendar": "cal.txt",
        "output_dir": "out",
        "eval_start": "2010Q1",
        "eval_end": "2012Q4",
        "days": [0, 100],
        "theta": {"input": "level", "error_correction": true},
        "parallel": false
    })", "/base");
    CHECK(job.data == std::vector<std::string>{"/base/a.csv", "/abs/b.csv"});
    CHECK(job.calendar == "/base/cal.txt");
    CHECK(job.schema.empty());
    CHECK(job.config.eval_start == QuarterIndex{2010, 1});
    CHECK(job.config.days == std::vector<int>{0, 100});
    CHECK(job.config.theta_input == theta::ThetaInput::level);
    CHECK(job.config.theta_error_correction);
    CHECK_FALSE(job.config.parallel);

    CHECK_THROWS_AS(cli::parse_backtest_config(R"({"data": "a.csv", "colour": 1})", ""), InputError);
    CHECK_THROWS_AS(cli::parse_backtest_config(R"({"eval_start": "2010Q1"})", ""), InputError);
    CHECK_THROWS_AS(cli::parse_backtest_config(R"({"data": 5})", ""), InputError);
    CHECK_THROWS_AS(cli::parse_backtest_config(R"({"data": "a", "theta": {"gamma": 1}})", ""), InputError);
    CHECK_THROWS_AS(cli::parse_backtest_config("[1]", ""), InputError);
}

TEST_CASE("backtest validation happens before any computation") {
    testing::TempDir dir("cli_validate");
    write(dir.file("c.json"), R"({"data": "missing.csv", "eval_start": "2015Q1", "eval_end": "2014Q1"})");
    const auto r = run({"backtest", "--config", dir.file("c.json")});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("eval_start 2015Q1 is after eval_end 2014Q1") != std::string::npos);
}

TEST_CASE("backtest, table and rerun determinism") {
    testing::TempDir dir("cli_backtest");
    write_csv(dir.file("data.csv"), testing::synthetic());
    write(dir.file("c.json"), R"({"data": "data.csv", "output_dir": "out",
                                  "eval_start": "2014Q1", "eval_end": "2015Q4", "subsample_end": "2014Q4"})");
    REQUIRE(run({"backtest", "--config", dir.file("c.json")}).code == cli::kExitOk);
    const auto out = dir.path() / "out";
    for (const char* f : {"ledger.csv", "report.json", "table4.csv", "table5.csv", "table6.csv", "cumulative.csv",
                          "model_mae.csv", "manifest.json"}) {
        CHECK_MESSAGE(std::filesystem::exists(out / f), f);
    }
    const auto ledger = slurp((out / "ledger.csv").string());
    const auto report = slurp((out / "report.json").string());
    REQUIRE(run({"backtest", "--config", dir.file("c.json")}).code == cli::kExitOk);
    CHECK(slurp((out / "ledger.csv").string()) == ledger);
    CHECK(slurp((out / "report.json").string()) == report);

    auto r = run({"table", "--report", (out / "report.json").string(), "--layout", "table6"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("TDI model") != std::string::npos);
    r = run({"table", "--report", (out / "report.json").string(), "--format", "csv"});
    CHECK(r.out == slurp((out / "table4.csv").string()));
    CHECK(run({"table", "--report", (out / "report.json").string(), "--layout", "x"}).code == cli::kExitUsage);

    write(dir.file("empty.json"), R"({"eval_start": "2014Q1", "eval_end": "2015Q4", "subsample_end": "2014Q4",
                                      "cells": [], "cumulative": []})");
    r = run({"table", "--report", dir.file("empty.json")});
    CHECK(r.code == cli::kExitFailure);
    CHECK(r.out.empty());
}

TEST_CASE("fit and synth") {
    testing::TempDir dir("cli_fit");
    REQUIRE(run({"synth", "--output", dir.file("s.csv"), "--last", "2012Q4"}).code == cli::kExitOk);
    const auto data = ingest_csv(dir.file("s.csv"), SeriesSchema::defaults());
    CHECK(data.quarterly_series("GDP_QOQ").last() == QuarterIndex{2012, 4});
    const auto r = run({"fit", "--data", dir.file("s.csv"), "--through", "2012Q4"});
    CHECK(r.code == cli::kExitOk);
    for (const char* s : {"(1)", "(6)", "Observations", "CEPR"}) CHECK(r.out.find(s) != std::string::npos);
}

}
