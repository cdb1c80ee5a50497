#include "xbicorr/csvio.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace xbicorr {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_close(const std::string& field, const std::string& path, std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE)
        throw std::invalid_argument(path + ":" + std::to_string(line) +
                                    ": malformed close '" + field + "'");
    return value;
}

}  // namespace

PriceSeries ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path.string());

    PriceSeries series;
    series.id = path.stem().string();

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<Date, double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (line_no == 1) continue;  // header
        const auto comma = text.find(',');
        if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                        ": expected exactly two columns (date,close)");
        const std::string date_field = trim(text.substr(0, comma));
        const std::string close_field = trim(text.substr(comma + 1));
        Date date;
        try {
            date = parse_iso_date(date_field);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                        ": " + e.what());
        }
        const double close = parse_close(close_field, path.string(), line_no);
        if (!(close > 0.0))
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                        ": non-positive close " + close_field);
        rows.emplace_back(date, close);
    }
    if (rows.size() < 2)
        throw std::invalid_argument(path.string() + ": insufficient data (need at least 2 rows)");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first)
            throw std::invalid_argument(path.string() + ": duplicate date " +
                                        to_string(rows[i].first));

    series.dates.reserve(rows.size());
    series.closes.reserve(rows.size());
    for (const auto& [date, close] : rows) {
        series.dates.push_back(date);
        series.closes.push_back(close);
    }
    validate(series);
    return series;
}

AlignedPair align(const ReturnSeries& benchmark, const ReturnSeries& target) {
    if (benchmark.values.empty() || target.values.empty())
        throw std::invalid_argument("cannot align an empty series");

    AlignedPair out;
    std::size_t i = 0, j = 0;
    while (i < benchmark.dates.size() && j < target.dates.size()) {
        if (benchmark.dates[i] < target.dates[j]) {
            ++i;
        } else if (target.dates[j] < benchmark.dates[i]) {
            ++j;
        } else {
            out.dates.push_back(benchmark.dates[i]);
            out.benchmark_returns.push_back(benchmark.values[i]);
            out.target_returns.push_back(target.values[j]);
            ++i;
            ++j;
        }
    }
    out.dropped_benchmark = benchmark.dates.size() - out.dates.size();
    out.dropped_target = target.dates.size() - out.dates.size();
    if (out.dates.empty()) throw std::invalid_argument("empty intersection");
    return out;
}

}  // namespace xbicorr
