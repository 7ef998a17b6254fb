#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "enerval/errors.hpp"

namespace enerval {

// Timestamps are naive local hours on a fixed grid: an HourStamp counts whole
// hours since 1970-01-01 00:00. No timezone or DST handling.
using HourStamp = std::int64_t;

struct CivilHour {
    int year = 1970;
    unsigned month = 1;  // 1..12
    unsigned day = 1;    // 1..31
    int hour = 0;        // 0..23
};

inline HourStamp to_hourstamp(const CivilHour& c) {
    const std::chrono::year_month_day ymd{std::chrono::year{c.year},
                                          std::chrono::month{c.month},
                                          std::chrono::day{c.day}};
    const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    return static_cast<HourStamp>(days) * 24 + c.hour;
}

inline CivilHour to_civil(HourStamp h) {
    auto days = h / 24;
    auto hour = h % 24;
    if (hour < 0) {
        hour += 24;
        days -= 1;
    }
    const std::chrono::sys_days sd{std::chrono::days{days}};
    const std::chrono::year_month_day ymd{sd};
    return CivilHour{int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                     static_cast<int>(hour)};
}

// Day serial (days since epoch) of a stamp; 0..6, Monday = 0.
inline std::int64_t day_of(HourStamp h) {
    return (h >= 0) ? h / 24 : (h - 23) / 24;
}

inline int weekday_of(HourStamp h) {
    const std::chrono::sys_days sd{std::chrono::days{day_of(h)}};
    const std::chrono::weekday wd{sd};
    return static_cast<int>(wd.iso_encoding()) - 1;
}

inline bool is_weekend(HourStamp h) { return weekday_of(h) >= 5; }

inline std::string format_hourstamp(HourStamp h) {
    const CivilHour c = to_civil(h);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:00:00", c.year, c.month,
                  c.day, c.hour);
    return std::string(buf);
}

// Accepts "YYYY-MM-DD[T ]HH[:MM[:SS]]". Non-zero minutes or seconds are a
// GridError: the measured grid is strictly hourly.
inline HourStamp parse_hourstamp(const std::string& s) {
    int year = 0, hour = 0, min = 0, sec = 0;
    unsigned month = 0, day = 0;
    char sep = 0;
    const int n = std::sscanf(s.c_str(), "%d-%u-%u%c%d:%d:%d", &year, &month, &day,
                              &sep, &hour, &min, &sec);
    if (n < 5 || (sep != 'T' && sep != ' '))
        throw GridError("unparseable timestamp: '" + s + "'");
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour < 0 || hour > 23)
        throw GridError("timestamp out of range: '" + s + "'");
    if (min != 0 || sec != 0)
        throw GridError("non-hourly timestamp (minutes/seconds must be zero): '" + s + "'");
    return to_hourstamp(CivilHour{year, month, day, hour});
}

// Heating-season removal window: [29 May, 13 Oct] inclusive, every year.
inline bool in_summer_window(HourStamp h) {
    const CivilHour c = to_civil(h);
    const unsigned md = c.month * 100 + c.day;
    return md >= 529 && md <= 1013;
}

// Calendar-day grouping of a (possibly non-contiguous) increasing hourly grid.
struct DayLayout {
    std::vector<std::size_t> start;         // first grid index of each day
    std::vector<std::size_t> length;        // hours of each day present on the grid
    std::vector<std::int64_t> day_serial;   // days since epoch
    std::vector<std::uint8_t> weekend;      // 1 = Sat/Sun
    std::vector<std::int32_t> day_of_index; // grid index -> day ordinal

    std::size_t n_days() const { return start.size(); }
};

inline DayLayout build_day_layout(const std::vector<HourStamp>& ts) {
    DayLayout layout;
    layout.day_of_index.resize(ts.size());
    std::int64_t current = INT64_MIN;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::int64_t d = day_of(ts[i]);
        if (d != current) {
            current = d;
            layout.start.push_back(i);
            layout.length.push_back(0);
            layout.day_serial.push_back(d);
            layout.weekend.push_back(is_weekend(ts[i]) ? 1 : 0);
        }
        layout.length.back() += 1;
        layout.day_of_index[i] = static_cast<std::int32_t>(layout.start.size() - 1);
    }
    return layout;
}

}  // namespace enerval
