#pragma once

#include "xbicorr/series.hpp"

#include <cstddef>
#include <filesystem>
#include <vector>

namespace xbicorr {

/// Date-aligned pair of return series (inner join on dates), with the
/// number of observations each side lost to the join.
struct AlignedPair {
    std::vector<Date> dates;
    std::vector<double> benchmark_returns;
    std::vector<double> target_returns;
    std::size_t dropped_benchmark = 0;
    std::size_t dropped_target = 0;
};

/// Reads a `date,close` CSV (one header line, ISO-8601 dates, positive
/// closes). Rows are sorted by date; duplicate dates and malformed rows are
/// rejected with the offending line number. The series id is the file stem.
[[nodiscard]] PriceSeries ingest_csv(const std::filesystem::path& path);

/// Inner join on dates. Throws on empty intersection.
[[nodiscard]] AlignedPair align(const ReturnSeries& benchmark,
                                const ReturnSeries& target);

}  // namespace xbicorr
