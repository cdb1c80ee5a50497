// Command-line front end: stats, test, and simulate subcommands.

#include "xbicorr/csvio.hpp"
#include "xbicorr/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace xbicorr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

struct TestOptions {
    std::string benchmark_file;
    std::vector<std::string> target_files;
    int window_length = 25;
    double exponent = 0.4;
    double alpha = 0.05;
    std::string prewhiten_mode = "fixed";
    int fixed_order = 2;
    int p_max = 10;
    std::string scope = "window";
    std::string format = "csv";
    std::string out_dir = ".";
    int threads = 1;
};

struct SimulateOptions {
    std::string mode;
    double theta = 0.8;
    std::uint64_t replications = 2000;
    std::uint64_t seed = 42;
    int n = 25;
    double exponent = 0.4;
    double alpha = 0.05;
    std::string format = "csv";
    int threads = 1;
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

PrewhitenConfig prewhiten_from(const TestOptions& opt) {
    PrewhitenConfig cfg;
    cfg.mode = opt.prewhiten_mode == "bic" ? PrewhitenMode::bic : PrewhitenMode::fixed;
    cfg.fixed_order = opt.fixed_order;
    cfg.p_max = opt.p_max;
    cfg.scope = opt.scope == "full" ? PrewhitenScope::full_sample
                                    : PrewhitenScope::per_window;
    return cfg;
}

int run_stats(const std::vector<std::string>& files, const std::string& format) {
    std::vector<StatsRow> rows;
    for (const auto& file : files) {
        const auto prices = ingest_csv(file);
        const auto returns = to_log_returns(prices);
        rows.push_back({returns.id, summary_stats(returns.values)});
    }
    if (format == "json")
        std::cout << stats_to_json(rows).dump(2) << '\n';
    else
        std::cout << stats_to_csv(rows);
    return kExitOk;
}

int run_test(const TestOptions& opt) {
    const auto spec = make_window_spec(opt.window_length, opt.exponent, opt.alpha);
    const auto cfg = prewhiten_from(opt);
    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);

    const auto bench_prices = ingest_csv(opt.benchmark_file);
    const auto bench_returns = to_log_returns(bench_prices);

    std::vector<PairSummary> summaries;
    for (const auto& target_file : opt.target_files) {
        const auto target_prices = ingest_csv(target_file);
        const auto target_returns = to_log_returns(target_prices);
        const auto pair_tag = bench_returns.id + "_" + target_returns.id;
        try {
            const auto aligned = align(bench_returns, target_returns);
            if (aligned.benchmark_returns == aligned.target_returns)
                throw std::invalid_argument(
                    "degenerate pair: target identical to benchmark");
            if (aligned.dropped_benchmark + aligned.dropped_target > 0)
                std::cerr << pair_tag << ": dropped " << aligned.dropped_benchmark
                          << " benchmark and " << aligned.dropped_target
                          << " target observations in date alignment\n";

            const ReturnSeries bench{bench_returns.id, aligned.dates,
                                     aligned.benchmark_returns};
            const ReturnSeries target{target_returns.id, aligned.dates,
                                      aligned.target_returns};
            const auto report = run_pair_test(bench, target, spec, cfg, opt.threads);
            const auto summary = summarize(report);

            if (opt.format == "json")
                write_file(out_dir / ("report_" + pair_tag + ".json"),
                           report_to_json(report).dump(2) + "\n");
            else
                write_file(out_dir / ("report_" + pair_tag + ".csv"),
                           report_to_csv(report));
            write_file(out_dir / ("significant_" + pair_tag + ".csv"),
                       significant_windows_csv(summary));
            write_file(out_dir / ("plot_" + pair_tag + ".csv"),
                       plot_series_csv(report));
            summaries.push_back(summary);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(pair_tag + ": " + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error(pair_tag + ": " + e.what());
        }
    }

    if (opt.format == "json") {
        const auto j = summaries_to_json(summaries);
        write_file(out_dir / "summary.json", j.dump(2) + "\n");
        std::cout << j.dump(2) << '\n';
    } else {
        const auto csv = summaries_to_csv(summaries);
        write_file(out_dir / "summary.csv", csv);
        std::cout << csv;
    }
    return kExitOk;
}

int run_simulate(const SimulateOptions& opt) {
    const auto spec = make_window_spec(opt.n, opt.exponent, opt.alpha);
    McResult result;
    double theta = 0.0;
    if (opt.mode == "size") {
        result = monte_carlo_size(spec, opt.replications, opt.seed, opt.threads);
    } else {
        theta = opt.theta;
        result = monte_carlo_power(theta, spec, static_cast<std::size_t>(opt.n),
                                   opt.replications, opt.seed, opt.threads);
    }
    if (opt.format == "json")
        std::cout << mc_to_json(opt.mode, theta, opt.n, spec.lag_depth, result).dump(2)
                  << '\n';
    else
        std::cout << mc_to_csv(opt.mode, theta, opt.n, spec.lag_depth, result);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Windowed cross-correlation and cross-bicorrelation tests for "
                 "episodic nonlinear dependence between financial time series"};
    app.require_subcommand(1);
    app.set_config("--config")
        ->description("key-value config file; keys mirror the flags, grouped "
                      "in a [stats]/[test]/[simulate] section (place --config "
                      "before the subcommand)");

    std::vector<std::string> stats_files;
    std::string stats_format = "csv";
    auto* stats = app.add_subcommand("stats", "Summary statistics for return series");
    stats->add_option("files", stats_files, "price CSV files (date,close)")
        ->required()
        ->expected(-1);
    stats->add_option("--format", stats_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    TestOptions topt;
    auto* test = app.add_subcommand(
        "test", "Windowed cross-bicorrelation test of targets against a benchmark");
    test->add_option("--benchmark", topt.benchmark_file, "benchmark price CSV")
        ->required();
    test->add_option("--targets", topt.target_files, "target price CSVs")
        ->required()
        ->expected(-1);
    test->add_option("--window", topt.window_length, "window length in trading days")
        ->check(CLI::PositiveNumber);
    test->add_option("--c", topt.exponent, "lag-depth exponent, L = floor(n^c)");
    test->add_option("--alpha", topt.alpha, "significance level");
    test->add_option("--prewhiten", topt.prewhiten_mode, "order selection")
        ->check(CLI::IsMember({"fixed", "bic"}));
    test->add_option("--order", topt.fixed_order, "fixed AR/VAR order")
        ->check(CLI::NonNegativeNumber);
    test->add_option("--pmax", topt.p_max, "maximum order for BIC selection")
        ->check(CLI::NonNegativeNumber);
    test->add_option("--scope", topt.scope, "pre-whitening scope")
        ->check(CLI::IsMember({"window", "full"}));
    test->add_option("--format", topt.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
    test->add_option("--out", topt.out_dir, "output directory");
    test->add_option("--threads", topt.threads, "worker threads")
        ->check(CLI::PositiveNumber);

    SimulateOptions sopt;
    auto* simulate =
        app.add_subcommand("simulate", "Monte Carlo size/power study of the tests");
    simulate->add_option("--mode", sopt.mode, "size or power")
        ->required()
        ->check(CLI::IsMember({"size", "power"}));
    simulate->add_option("--theta", sopt.theta, "cross-bilinear coupling strength");
    simulate->add_option("--reps", sopt.replications, "Monte Carlo replications");
    simulate->add_option("--seed", sopt.seed, "master seed");
    simulate->add_option("--n", sopt.n, "window length")->check(CLI::PositiveNumber);
    simulate->add_option("--c", sopt.exponent, "lag-depth exponent");
    simulate->add_option("--alpha", sopt.alpha, "significance level");
    simulate->add_option("--format", sopt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    simulate->add_option("--threads", sopt.threads, "worker threads")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (stats->parsed()) return run_stats(stats_files, stats_format);
        if (test->parsed()) return run_test(topt);
        return run_simulate(sopt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumericalError;
    }
}
