#include "xbicorr/date.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace xbicorr {

namespace {

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return kDays[month - 1];
}

}  // namespace

Date parse_iso_date(const std::string& text) {
    const auto fail = [&] {
        throw std::invalid_argument("invalid date (expected YYYY-MM-DD): '" + text + "'");
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') fail();
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();

    Date d;
    d.year = std::stoi(text.substr(0, 4));
    d.month = std::stoi(text.substr(5, 2));
    d.day = std::stoi(text.substr(8, 2));
    if (d.month < 1 || d.month > 12) fail();
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) fail();
    return d;
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace xbicorr
