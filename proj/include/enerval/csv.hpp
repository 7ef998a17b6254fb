#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "enerval/params.hpp"
#include "enerval/series.hpp"
#include "enerval/timegrid.hpp"

namespace enerval {

struct MeasuredSchema {
    std::string timestamp = "timestamp";
    std::string power = "power_mw";
    std::string flow = "flow_m3h";
    std::string supply = "supply_c";
    std::string ret = "return_c";
};

// Measured series plus the optional per-hour channels needed by cleansing.
struct MeasuredTable {
    MeasuredSeries series;
    std::vector<HourlyRecord> records;  // aligned to series grid
    bool has_flow = false;
    bool has_temps = false;
};

namespace csv_detail {

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
        out.back().pop_back();
    return out;
}

inline std::optional<double> parse_field(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && *b == ' ') ++b;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc())
        throw SchemaError("unparseable numeric field: '" + s + "'");
    return v;
}

inline double require_field(const std::string& s, const char* what) {
    const auto v = parse_field(s);
    if (!v) throw SchemaError(std::string("missing required field: ") + what);
    return *v;
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

inline int column_index(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

inline std::string fmt_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

}  // namespace csv_detail

// Loads a measured CSV and densifies it onto an hourly grid between the first
// and last timestamp. Missing rows and empty power fields become mask=0.
inline MeasuredTable load_measured_csv(const std::string& path,
                                       const std::string& substation_id = "",
                                       const MeasuredSchema& schema = {}) {
    using namespace csv_detail;
    const auto lines = read_lines(path);
    if (lines.size() <= 1) throw EmptyInputError("no data rows in " + path);

    const auto header = split_line(lines[0]);
    const int c_ts = column_index(header, schema.timestamp);
    const int c_pw = column_index(header, schema.power);
    if (c_ts < 0 || c_pw < 0)
        throw SchemaError("measured CSV needs columns '" + schema.timestamp + "' and '" +
                          schema.power + "' in " + path);
    const int c_fl = column_index(header, schema.flow);
    const int c_su = column_index(header, schema.supply);
    const int c_re = column_index(header, schema.ret);

    struct Row {
        HourStamp ts;
        std::optional<double> power, flow, supply, ret;
    };
    std::vector<Row> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split_line(lines[i]);
        if (static_cast<int>(f.size()) <= c_pw)
            throw SchemaError("short row " + std::to_string(i + 1) + " in " + path);
        Row r;
        r.ts = parse_hourstamp(f[c_ts]);
        r.power = parse_field(f[c_pw]);
        if (c_fl >= 0 && c_fl < static_cast<int>(f.size())) r.flow = parse_field(f[c_fl]);
        if (c_su >= 0 && c_su < static_cast<int>(f.size())) r.supply = parse_field(f[c_su]);
        if (c_re >= 0 && c_re < static_cast<int>(f.size())) r.ret = parse_field(f[c_re]);
        rows.push_back(r);
    }

    std::unordered_map<HourStamp, std::size_t> by_ts;
    by_ts.reserve(rows.size() * 2);
    HourStamp lo = rows[0].ts, hi = rows[0].ts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (by_ts.count(rows[i].ts))
            throw DuplicateError("duplicate timestamp " + format_hourstamp(rows[i].ts) +
                                 " in " + path);
        by_ts[rows[i].ts] = i;
        lo = std::min(lo, rows[i].ts);
        hi = std::max(hi, rows[i].ts);
    }

    MeasuredTable t;
    t.series.substation_id = substation_id;
    t.has_flow = c_fl >= 0;
    t.has_temps = c_su >= 0 && c_re >= 0;
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    t.series.timestamps.reserve(n);
    t.series.values.reserve(n);
    t.series.mask.reserve(n);
    t.records.reserve(n);
    for (HourStamp ts = lo; ts <= hi; ++ts) {
        HourlyRecord rec;
        rec.timestamp = ts;
        double value = 0.0;
        std::uint8_t obs = 0;
        const auto it = by_ts.find(ts);
        if (it != by_ts.end()) {
            const Row& r = rows[it->second];
            if (r.power) {
                value = *r.power;
                obs = 1;
                rec.power = *r.power;
            }
            rec.flow = r.flow;
            rec.supply_temp = r.supply;
            rec.return_temp = r.ret;
        }
        t.series.timestamps.push_back(ts);
        t.series.values.push_back(value);
        t.series.mask.push_back(obs);
        t.records.push_back(rec);
    }
    return t;
}

inline void write_measured_csv(const std::string& path, const MeasuredTable& t) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << "timestamp,power_mw";
    if (t.has_flow) out << ",flow_m3h";
    if (t.has_temps) out << ",supply_c,return_c";
    out << "\n";
    for (std::size_t i = 0; i < t.series.size(); ++i) {
        out << format_hourstamp(t.series.timestamps[i]) << ',';
        if (t.series.mask[i]) out << csv_detail::fmt_full(t.series.values[i]);
        if (t.has_flow) {
            out << ',';
            if (t.records[i].flow) out << csv_detail::fmt_full(*t.records[i].flow);
        }
        if (t.has_temps) {
            out << ',';
            if (t.records[i].supply_temp) out << csv_detail::fmt_full(*t.records[i].supply_temp);
            out << ',';
            if (t.records[i].return_temp) out << csv_detail::fmt_full(*t.records[i].return_temp);
        }
        out << '\n';
    }
}

inline void write_measured_csv(const std::string& path, const MeasuredSeries& s) {
    MeasuredTable t;
    t.series = s;
    t.records.resize(s.size());
    write_measured_csv(path, t);
}

// Weather is an auxiliary source assumed fully available: gaps are an error.
inline WeatherSeries load_weather_csv(const std::string& path) {
    using namespace csv_detail;
    const auto lines = read_lines(path);
    if (lines.size() <= 1) throw EmptyInputError("no data rows in " + path);
    const auto header = split_line(lines[0]);
    const int c_ts = column_index(header, "timestamp");
    const int c_t = column_index(header, "temp_c");
    const int c_g = column_index(header, "ghi_wm2");
    const int c_w = column_index(header, "wind_ms");
    if (c_ts < 0 || c_t < 0 || c_g < 0 || c_w < 0)
        throw SchemaError("weather CSV needs timestamp,temp_c,ghi_wm2,wind_ms in " + path);

    WeatherSeries w;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split_line(lines[i]);
        const HourStamp ts = parse_hourstamp(f[c_ts]);
        if (!w.timestamps.empty()) {
            if (ts == w.timestamps.back())
                throw DuplicateError("duplicate timestamp in " + path);
            if (ts != w.timestamps.back() + 1)
                throw GridError("gap in weather series at " + format_hourstamp(ts) +
                                " in " + path);
        }
        w.timestamps.push_back(ts);
        w.outdoor_temp.push_back(require_field(f[c_t], "temp_c"));
        w.ghi.push_back(require_field(f[c_g], "ghi_wm2"));
        w.wind.push_back(require_field(f[c_w], "wind_ms"));
    }
    return w;
}

inline void write_weather_csv(const std::string& path, const WeatherSeries& w) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << "timestamp,temp_c,ghi_wm2,wind_ms\n";
    for (std::size_t i = 0; i < w.size(); ++i) {
        out << format_hourstamp(w.timestamps[i]) << ',' << csv_detail::fmt_full(w.outdoor_temp[i])
            << ',' << csv_detail::fmt_full(w.ghi[i]) << ',' << csv_detail::fmt_full(w.wind[i])
            << '\n';
    }
}

// Wide ensemble matrix: timestamp,sim_000,...,sim_NNN. Column order defines
// combination order; the sidecar parameter file shares the same ids.
inline std::pair<SimulationEnsemble, std::vector<HourStamp>> load_ensemble_csv(
    const std::string& path) {
    using namespace csv_detail;
    const auto lines = read_lines(path);
    if (lines.size() <= 1) throw EmptyInputError("no data rows in " + path);
    const auto header = split_line(lines[0]);
    if (header.empty() || header[0] != "timestamp")
        throw SchemaError("ensemble CSV must start with 'timestamp' in " + path);
    const std::size_t n_combo = header.size() - 1;
    if (n_combo == 0) throw SchemaError("ensemble CSV has no sim_* columns in " + path);

    SimulationEnsemble e;
    e.loads.assign(n_combo, {});
    std::vector<HourStamp> ts;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split_line(lines[i]);
        if (f.size() != header.size())
            throw SchemaError("ragged row " + std::to_string(i + 1) + " in " + path);
        const HourStamp t = parse_hourstamp(f[0]);
        if (!ts.empty() && t <= ts.back())
            throw GridError("non-increasing ensemble timestamps in " + path);
        ts.push_back(t);
        for (std::size_t c = 0; c < n_combo; ++c)
            e.loads[c].push_back(require_field(f[c + 1], "sim value"));
    }
    e.combinations.resize(n_combo);
    e.calibration_gof.assign(n_combo, 0.0);
    return {std::move(e), std::move(ts)};
}

inline void write_ensemble_csv(const std::string& path, const SimulationEnsemble& e,
                               const std::vector<HourStamp>& ts) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << "timestamp";
    char name[16];
    for (std::size_t c = 0; c < e.n_combinations(); ++c) {
        std::snprintf(name, sizeof(name), ",sim_%03zu", c);
        out << name;
    }
    out << "\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out << format_hourstamp(ts[i]);
        for (std::size_t c = 0; c < e.n_combinations(); ++c)
            out << ',' << csv_detail::fmt_full(e.loads[c][i]);
        out << '\n';
    }
}

// Sidecar parameter file: combo_id,param_name,value.
inline void write_params_csv(const std::string& path, const SimulationEnsemble& e,
                             const ParameterSpace& space) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << "combo_id,param_name,value\n";
    char id[16];
    for (std::size_t c = 0; c < e.combinations.size(); ++c) {
        std::snprintf(id, sizeof(id), "sim_%03zu", c);
        for (std::size_t p = 0; p < space.size(); ++p)
            out << id << ',' << space.ranges[p].name << ','
                << csv_detail::fmt_full(e.combinations[c][p]) << '\n';
    }
}

inline void load_params_csv(const std::string& path, SimulationEnsemble& e,
                            const ParameterSpace& space) {
    using namespace csv_detail;
    const auto lines = read_lines(path);
    if (lines.size() <= 1) throw EmptyInputError("no data rows in " + path);
    for (auto& combo : e.combinations) combo.assign(space.size(), 0.0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split_line(lines[i]);
        if (f.size() != 3) throw SchemaError("bad parameter row in " + path);
        if (f[0].size() < 5 || f[0].substr(0, 4) != "sim_")
            throw SchemaError("bad combo_id '" + f[0] + "' in " + path);
        const std::size_t c = static_cast<std::size_t>(std::stoul(f[0].substr(4)));
        if (c >= e.combinations.size())
            throw SchemaError("combo_id out of range in " + path);
        const int p = space.index_of(f[1]);
        if (p < 0) throw SchemaError("unknown parameter '" + f[1] + "' in " + path);
        e.combinations[c][static_cast<std::size_t>(p)] = require_field(f[2], "value");
    }
}

}  // namespace enerval
