#pragma once

#include <compare>
#include <string>

namespace xbicorr {

// Calendar date used for ordering and labeling only; no day arithmetic.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;
};

// Strict ISO-8601 (YYYY-MM-DD) parse with month/day range validation.
// Throws std::invalid_argument on malformed input.
[[nodiscard]] Date parse_iso_date(const std::string& text);

[[nodiscard]] std::string to_string(const Date& d);

}  // namespace xbicorr
