#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "enerval/errors.hpp"
#include "enerval/params.hpp"
#include "enerval/timegrid.hpp"

namespace enerval {

// Observed/missing is tracked as an explicit mask, never as sentinel values.
using Mask = std::vector<std::uint8_t>;

inline std::size_t observed_count(const Mask& m) {
    std::size_t n = 0;
    for (auto v : m) n += (v != 0);
    return n;
}

inline std::vector<std::uint32_t> observed_indices(const Mask& m) {
    std::vector<std::uint32_t> idx;
    idx.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) idx.push_back(static_cast<std::uint32_t>(i));
    return idx;
}

inline double missing_fraction(const Mask& m) {
    if (m.empty()) return 0.0;
    return 1.0 - static_cast<double>(observed_count(m)) / static_cast<double>(m.size());
}

struct HourlyRecord {
    HourStamp timestamp = 0;
    double power = 0.0;  // MW
    std::optional<double> flow;         // m3/h
    std::optional<double> supply_temp;  // degC
    std::optional<double> return_temp;  // degC
};

struct MeasuredSeries {
    std::string substation_id;
    std::vector<HourStamp> timestamps;
    std::vector<double> values;  // MW; entries under mask=0 are carried, never read
    Mask mask;

    std::size_t size() const { return timestamps.size(); }
};

struct SubstationMeta {
    std::string substation_id;
    int year_built = 0;
    double floor_area = 0.0;  // m2
    double missingness = 0.0; // fraction 0..1
};

inline SubstationMeta derive_meta(const MeasuredSeries& s, int year_built = 0,
                                  double floor_area = 1.0) {
    SubstationMeta m;
    m.substation_id = s.substation_id;
    m.year_built = year_built;
    m.floor_area = floor_area;
    m.missingness = missing_fraction(s.mask);
    return m;
}

struct WeatherSeries {
    std::vector<HourStamp> timestamps;
    std::vector<double> outdoor_temp;  // degC
    std::vector<double> ghi;           // W/m2
    std::vector<double> wind;          // m/s

    std::size_t size() const { return timestamps.size(); }
};

struct SimulationEnsemble {
    std::vector<ParameterCombination> combinations;
    // loads[c][i]: simulated load (MW) of combination c at grid hour i
    std::vector<std::vector<double>> loads;
    // calibration GOF (%) per combination against the complete measured series
    std::vector<double> calibration_gof;

    std::size_t n_combinations() const { return loads.size(); }
    std::size_t n_hours() const { return loads.empty() ? 0 : loads[0].size(); }

    std::vector<double> mean_load() const {
        std::vector<double> mean(n_hours(), 0.0);
        if (loads.empty()) return mean;
        for (const auto& row : loads)
            for (std::size_t i = 0; i < row.size(); ++i) mean[i] += row[i];
        const double inv = 1.0 / static_cast<double>(loads.size());
        for (auto& v : mean) v *= inv;
        return mean;
    }
};

namespace detail {
template <typename T>
inline std::vector<T> select(const std::vector<T>& v, const std::vector<std::size_t>& keep) {
    std::vector<T> out;
    out.reserve(keep.size());
    for (auto i : keep) out.push_back(v[i]);
    return out;
}
}  // namespace detail

// Indices outside the summer removal window [29 May, 13 Oct].
inline std::vector<std::size_t> heating_season_indices(const std::vector<HourStamp>& ts) {
    std::vector<std::size_t> keep;
    keep.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (!in_summer_window(ts[i])) keep.push_back(i);
    return keep;
}

inline MeasuredSeries filter_heating_season(const MeasuredSeries& s) {
    const auto keep = heating_season_indices(s.timestamps);
    MeasuredSeries out;
    out.substation_id = s.substation_id;
    out.timestamps = detail::select(s.timestamps, keep);
    out.values = detail::select(s.values, keep);
    out.mask = detail::select(s.mask, keep);
    return out;
}

inline WeatherSeries filter_heating_season(const WeatherSeries& w) {
    const auto keep = heating_season_indices(w.timestamps);
    WeatherSeries out;
    out.timestamps = detail::select(w.timestamps, keep);
    out.outdoor_temp = detail::select(w.outdoor_temp, keep);
    out.ghi = detail::select(w.ghi, keep);
    out.wind = detail::select(w.wind, keep);
    return out;
}

inline SimulationEnsemble filter_heating_season(const SimulationEnsemble& e,
                                                const std::vector<HourStamp>& ts) {
    const auto keep = heating_season_indices(ts);
    SimulationEnsemble out;
    out.combinations = e.combinations;
    out.calibration_gof = e.calibration_gof;
    out.loads.reserve(e.loads.size());
    for (const auto& row : e.loads) out.loads.push_back(detail::select(row, keep));
    return out;
}

}  // namespace enerval
