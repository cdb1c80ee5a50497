// End-to-end tests of the command-line tool. The binary path comes from the
// build system via XBICORR_CLI_PATH.

#include "xbicorr/simgen.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef XBICORR_CLI_PATH
#error "XBICORR_CLI_PATH must be defined by the build"
#endif

namespace fs = std::filesystem;

namespace {

const std::string kCli = XBICORR_CLI_PATH;

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "xbicorr_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args, const fs::path& stdout_to = {}) {
    std::string cmd = kCli + " " + args;
    if (!stdout_to.empty()) cmd += " > " + stdout_to.string();
    cmd += " 2> " + (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_prices(const fs::path& path, const std::vector<double>& returns,
                  double base = 100.0) {
    std::ofstream out(path);
    out << "date,close\n";
    double close = base;
    for (std::size_t i = 0; i <= returns.size(); ++i) {
        if (i > 0) close *= std::exp(returns[i - 1] / 100.0);
        const int day = static_cast<int>(i);
        char line[64];
        std::snprintf(line, sizeof(line), "%04d-%02d-%02d,%.17g\n", 2003 + day / 336,
                      1 + (day % 336) / 28, 1 + day % 28, close);
        out << line;
    }
}

}  // namespace

TEST_CASE("cli test command produces per-pair reports with paper defaults") {
    const auto dir = work_dir();
    const auto x = xbicorr::gen_gaussian_iid(3025, 70001);
    const auto y1 = xbicorr::gen_cross_bilinear(x, 0.5, 70002);
    const auto y2 = xbicorr::gen_gaussian_iid(3025, 70003);
    write_prices(dir / "BENCH.csv", x);
    write_prices(dir / "T1.csv", y1);
    write_prices(dir / "T2.csv", y2);
    const auto out = dir / "out";
    fs::remove_all(out);

    const int code = run("test --benchmark " + (dir / "BENCH.csv").string() +
                             " --targets " + (dir / "T1.csv").string() + " " +
                             (dir / "T2.csv").string() + " --format json --out " +
                             out.string(),
                         dir / "stdout.txt");
    REQUIRE(code == 0);

    // two targets -> two report files, plus plot/significant tables and summary
    for (const char* name : {"report_BENCH_T1.json", "report_BENCH_T2.json",
                             "plot_BENCH_T1.csv", "plot_BENCH_T2.csv",
                             "significant_BENCH_T1.csv", "summary.json"})
        CHECK(fs::exists(out / name));

    const auto j = nlohmann::json::parse(slurp(out / "report_BENCH_T1.json"));
    CHECK(j.at("n_windows").get<int>() == 121);
    CHECK(j.at("windows").size() == 121);
    // defaults reproduce the paper parameterization
    CHECK(j.at("window_spec").at("window_length").get<int>() == 25);
    CHECK(j.at("window_spec").at("exponent").get<double>() == 0.4);
    CHECK(j.at("window_spec").at("lag_depth").get<int>() == 3);
    CHECK(j.at("window_spec").at("alpha").get<double>() == 0.05);
    CHECK(j.at("prewhiten").at("mode").get<std::string>() == "fixed");
    CHECK(j.at("prewhiten").at("fixed_order").get<int>() == 2);

    const auto j2 = nlohmann::json::parse(slurp(out / "report_BENCH_T2.json"));
    CHECK(j2.at("target").get<std::string>() == "T2");
    CHECK(j.at("target").get<std::string>() == "T1");
}

TEST_CASE("cli rejects a benchmark tested against itself") {
    const auto dir = work_dir();
    const auto x = xbicorr::gen_gaussian_iid(200, 70004);
    write_prices(dir / "SELF.csv", x);
    const int code = run("test --benchmark " + (dir / "SELF.csv").string() +
                             " --targets " + (dir / "SELF.csv").string() + " --out " +
                             (dir / "out_self").string(),
                         dir / "stdout.txt");
    CHECK(code == 2);
    CHECK(slurp(work_dir() / "stderr.txt").find("degenerate pair") !=
          std::string::npos);
}

TEST_CASE("cli stats rejects constant prices as degenerate") {
    const auto dir = work_dir();
    {
        std::ofstream out(dir / "const.csv");
        out << "date,close\n";
        for (int i = 0; i < 10; ++i)
            out << "2020-01-" << (i + 10) << ",5.0\n";
    }
    const int code = run("stats " + (dir / "const.csv").string(), dir / "s.txt");
    CHECK(code == 2);
    CHECK(slurp(work_dir() / "stderr.txt").find("degenerate series") !=
          std::string::npos);
}

TEST_CASE("cli stats on a seeded Gaussian file reports near-zero skewness") {
    const auto dir = work_dir();
    write_prices(dir / "GAUSS.csv", xbicorr::gen_gaussian_iid(2999, 70012));
    REQUIRE(run("stats " + (dir / "GAUSS.csv").string() + " --format json",
                dir / "gauss.json") == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "gauss.json"));
    CHECK(std::fabs(j.at(0).at("skewness").get<double>()) < 0.1);
    CHECK(j.at(0).at("n").get<int>() == 2999);
}

TEST_CASE("cli simulate validates replications") {
    const int code = run("simulate --mode size --reps 0 --n 25",
                         work_dir() / "sim.txt");
    CHECK(code == 2);
}

TEST_CASE("cli simulate size and power rates are consistent") {
    const auto dir = work_dir();
    const int c1 = run("simulate --mode size --reps 400 --seed 7 --n 25 --format json",
                       dir / "size.json");
    REQUIRE(c1 == 0);
    const auto s = nlohmann::json::parse(slurp(dir / "size.json"));
    CHECK(s.at("mode").get<std::string>() == "size");
    CHECK(s.at("n").get<int>() == 25);
    CHECK(s.at("lag_depth").get<int>() == 3);
    const double size_rate = s.at("rejection_rate").get<double>();
    CHECK(size_rate >= 0.0);
    CHECK(size_rate <= 0.12);

    // power at theta 0 equals size within 3 binomial standard errors
    const int c2 = run(
        "simulate --mode power --theta 0 --reps 400 --seed 7 --n 25 --format json",
        dir / "p0.json");
    REQUIRE(c2 == 0);
    const auto p0 = nlohmann::json::parse(slurp(dir / "p0.json"));
    const double se = std::sqrt(std::max(size_rate, 0.01) * (1.0 - size_rate) / 400.0);
    CHECK(std::fabs(p0.at("rejection_rate").get<double>() - size_rate) <= 3.0 * se);
}

TEST_CASE("cli reads flag values from a config file") {
    const auto dir = work_dir();
    const auto x = xbicorr::gen_gaussian_iid(500, 70010);
    const auto y = xbicorr::gen_gaussian_iid(500, 70011);
    write_prices(dir / "CA.csv", x);
    write_prices(dir / "CB.csv", y);
    {
        std::ofstream out(dir / "run.ini");
        out << "[test]\nwindow=50\nalpha=0.1\n";
    }
    // --config belongs to the top-level app and precedes the subcommand
    const std::string args = "--config " + (dir / "run.ini").string() +
                             " test --benchmark " + (dir / "CA.csv").string() +
                             " --targets " + (dir / "CB.csv").string() +
                             " --format json --out " + (dir / "out_cfg").string();
    REQUIRE(run(args, dir / "cfg_stdout.txt") == 0);
    const auto j =
        nlohmann::json::parse(slurp(dir / "out_cfg" / "report_CA_CB.json"));
    CHECK(j.at("window_spec").at("window_length").get<int>() == 50);
    CHECK(j.at("window_spec").at("alpha").get<double>() == 0.1);
    CHECK(j.at("n_windows").get<int>() == 10);
}

TEST_CASE("cli handles missing input files") {
    const int code = run("stats /nonexistent/nope.csv", work_dir() / "x.txt");
    CHECK(code == 2);
}
