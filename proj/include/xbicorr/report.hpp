#pragma once

#include "xbicorr/crossbicorr.hpp"
#include "xbicorr/simgen.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace xbicorr {

// Emission helpers. CSV tables use fixed 6-significant-digit formatting so
// output is a stable byte stream; JSON keeps full double precision so a
// report round-trips exactly.

/// Formats with %.6g.
[[nodiscard]] std::string format_number(double value);

[[nodiscard]] nlohmann::json report_to_json(const PairReport& report);
[[nodiscard]] PairReport report_from_json(const nlohmann::json& j);

[[nodiscard]] std::string report_to_csv(const PairReport& report);

/// Table-shaped summary rows: one per pair.
[[nodiscard]] std::string summaries_to_csv(std::span<const PairSummary> rows);
[[nodiscard]] nlohmann::json summaries_to_json(std::span<const PairSummary> rows);

/// Dated significant-window table: window_index,start_date,end_date.
[[nodiscard]] std::string significant_windows_csv(const PairSummary& summary);

/// Plot data: window_index,start_date,one_minus_p (skipped windows omitted).
[[nodiscard]] std::string plot_series_csv(const PairReport& report);

struct StatsRow {
    std::string id;
    SummaryStats stats;
};

[[nodiscard]] std::string stats_to_csv(std::span<const StatsRow> rows);
[[nodiscard]] nlohmann::json stats_to_json(std::span<const StatsRow> rows);

[[nodiscard]] std::string mc_to_csv(const std::string& mode, double theta,
                                    int n, int lag_depth, const McResult& result);
[[nodiscard]] nlohmann::json mc_to_json(const std::string& mode, double theta,
                                        int n, int lag_depth, const McResult& result);

}  // namespace xbicorr
