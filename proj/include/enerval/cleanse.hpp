#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "enerval/csv.hpp"
#include "enerval/errors.hpp"
#include "enerval/series.hpp"
#include "enerval/timegrid.hpp"

namespace enerval {

enum class CleanseFlag : std::uint8_t {
    None = 0,
    Outlier = 1,
    Quantised = 2,
    Malfunction = 3,
    Manual = 4,
};

struct CleanseConfig {
    double sigma_k = 3.0;
    double min_distinct_ratio = 0.05;
    std::vector<HourStamp> manual_exclude;  // type-4 data has no algorithm
};

struct CleanseReport {
    std::vector<std::uint8_t> flags;  // CleanseFlag per grid index, first rule owns
    std::size_t n_outlier = 0;
    std::size_t n_quantised = 0;
    std::size_t n_malfunction = 0;
    std::size_t n_manual = 0;
    std::size_t n_already_missing = 0;  // flags at indices that were missing before
    std::size_t n_retained = 0;
    bool malfunction_applicable = false;
    double missingness = 0.0;  // resulting fraction
};

// 3-sigma rule over observed points; mean/std are population moments.
// A zero-spread series flags any deviating point.
inline std::vector<std::size_t> detect_sigma_outliers(std::span<const double> values,
                                                      const Mask& mask, double k = 3.0) {
    if (k <= 0.0) throw ConfigError("sigma multiplier must be positive");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (mask[i]) {
            sum += values[i];
            ++n;
        }
    if (n < 10) throw InsufficientData("need >= 10 observed points for outlier detection");
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (mask[i]) {
            const double d = values[i] - mean;
            ss += d * d;
        }
    const double sd = std::sqrt(ss / static_cast<double>(n));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!mask[i]) continue;
        if (sd == 0.0) {
            if (values[i] != mean) out.push_back(i);
        } else if (std::abs(values[i] - mean) > k * sd) {
            out.push_back(i);
        }
    }
    return out;
}

// Flag for one window: distinct-value count / window length strictly below
// the threshold.
inline bool quantisation_flag(std::span<const double> window, double min_distinct_ratio) {
    std::set<double> distinct(window.begin(), window.end());
    return static_cast<double>(distinct.size()) <
           min_distinct_ratio * static_cast<double>(window.size());
}

// Per-calendar-day quantisation flags. Days shorter than 24 grid hours are
// skipped; the ratio uses the day's grid length with distinct values counted
// over observed entries.
inline std::vector<std::uint8_t> detect_quantisation(std::span<const double> values,
                                                     const Mask& mask,
                                                     const DayLayout& layout,
                                                     double min_distinct_ratio = 0.05) {
    std::vector<std::uint8_t> flagged(layout.n_days(), 0);
    for (std::size_t d = 0; d < layout.n_days(); ++d) {
        if (layout.length[d] < 24) continue;
        std::set<double> distinct;
        for (std::size_t i = layout.start[d]; i < layout.start[d] + layout.length[d]; ++i)
            if (mask[i]) distinct.insert(values[i]);
        if (distinct.empty()) continue;
        if (static_cast<double>(distinct.size()) <
            min_distinct_ratio * static_cast<double>(layout.length[d]))
            flagged[d] = 1;
    }
    return flagged;
}

struct MalfunctionResult {
    bool applicable = false;  // false when temperature channels are absent
    std::vector<std::size_t> indices;
};

// Physical-consistency rule: return temperature above supply temperature.
// Runs of >= 6 consecutive flagged hours extend by one hour on each side.
inline MalfunctionResult detect_malfunction(const std::vector<HourlyRecord>& records,
                                            const Mask& mask) {
    MalfunctionResult res;
    bool any_temps = false;
    const std::size_t n = records.size();
    std::vector<std::uint8_t> base(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!records[i].supply_temp || !records[i].return_temp) continue;
        any_temps = true;
        if (mask[i] && *records[i].return_temp > *records[i].supply_temp) base[i] = 1;
    }
    res.applicable = any_temps;
    if (!any_temps) return res;

    std::vector<std::uint8_t> out = base;
    std::size_t i = 0;
    while (i < n) {
        if (!base[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && base[j]) ++j;
        if (j - i >= 6) {
            if (i > 0) out[i - 1] = 1;
            if (j < n) out[j] = 1;
        }
        i = j;
    }
    for (std::size_t k = 0; k < n; ++k)
        if (out[k]) res.indices.push_back(k);
    return res;
}

// Cleansing types 1..3 plus manual exclusions, in that order; the first rule
// to flag an index owns it in the report. Removal is monotone: the mask is
// only ever cleared.
inline std::pair<MeasuredSeries, CleanseReport> apply_cleansing(const MeasuredTable& table,
                                                                const CleanseConfig& cfg) {
    const MeasuredSeries& s = table.series;
    const std::size_t n = s.size();
    CleanseReport rep;
    rep.flags.assign(n, static_cast<std::uint8_t>(CleanseFlag::None));

    const auto layout = build_day_layout(s.timestamps);

    const auto outliers = detect_sigma_outliers(s.values, s.mask, cfg.sigma_k);
    for (const std::size_t i : outliers)
        rep.flags[i] = static_cast<std::uint8_t>(CleanseFlag::Outlier);

    const auto q_days = detect_quantisation(s.values, s.mask, layout, cfg.min_distinct_ratio);
    for (std::size_t d = 0; d < layout.n_days(); ++d) {
        if (!q_days[d]) continue;
        for (std::size_t i = layout.start[d]; i < layout.start[d] + layout.length[d]; ++i)
            if (rep.flags[i] == 0)
                rep.flags[i] = static_cast<std::uint8_t>(CleanseFlag::Quantised);
    }

    const auto mal = detect_malfunction(table.records, s.mask);
    rep.malfunction_applicable = mal.applicable;
    for (const std::size_t i : mal.indices)
        if (rep.flags[i] == 0)
            rep.flags[i] = static_cast<std::uint8_t>(CleanseFlag::Malfunction);

    for (const HourStamp ts : cfg.manual_exclude) {
        const auto it = std::lower_bound(s.timestamps.begin(), s.timestamps.end(), ts);
        if (it != s.timestamps.end() && *it == ts) {
            const std::size_t i = static_cast<std::size_t>(it - s.timestamps.begin());
            if (rep.flags[i] == 0)
                rep.flags[i] = static_cast<std::uint8_t>(CleanseFlag::Manual);
        }
    }

    MeasuredSeries out = s;
    for (std::size_t i = 0; i < n; ++i) {
        const auto f = static_cast<CleanseFlag>(rep.flags[i]);
        if (f == CleanseFlag::None) continue;
        if (!out.mask[i]) {
            ++rep.n_already_missing;
            continue;
        }
        out.mask[i] = 0;
        switch (f) {
            case CleanseFlag::Outlier: ++rep.n_outlier; break;
            case CleanseFlag::Quantised: ++rep.n_quantised; break;
            case CleanseFlag::Malfunction: ++rep.n_malfunction; break;
            case CleanseFlag::Manual: ++rep.n_manual; break;
            default: break;
        }
    }
    rep.n_retained = observed_count(out.mask);
    rep.missingness = missing_fraction(out.mask);
    return {std::move(out), std::move(rep)};
}

}  // namespace enerval
