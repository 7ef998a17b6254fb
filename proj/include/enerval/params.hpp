#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "enerval/errors.hpp"

namespace enerval {

enum class ParamKind { Rate, Value };

struct ParameterRange {
    std::string name;
    ParamKind kind = ParamKind::Rate;
    double low = 0.0;
    double high = 1.0;
};

// One calibrated combination: values aligned with a ParameterSpace.
using ParameterCombination = std::vector<double>;

struct ParameterSpace {
    std::vector<ParameterRange> ranges;

    std::size_t size() const { return ranges.size(); }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < ranges.size(); ++i)
            if (ranges[i].name == name) return static_cast<int>(i);
        return -1;
    }

    void validate() const {
        for (const auto& r : ranges) {
            if (!(r.low < r.high))
                throw ConfigError("parameter range '" + r.name +
                                  "': low must be < high");
        }
    }

    bool contains(const ParameterCombination& combo) const {
        if (combo.size() != ranges.size()) return false;
        for (std::size_t i = 0; i < ranges.size(); ++i)
            if (combo[i] < ranges[i].low || combo[i] > ranges[i].high) return false;
        return true;
    }
};

// The 13 calibrated parameters and their ranges. "Rate" parameters multiply
// archetype baselines set in synth.hpp; "Value" parameters are absolute.
// economy_heating_start runs to midnight, encoded as [20, 24).
inline ParameterSpace default_parameter_space() {
    ParameterSpace s;
    s.ranges = {
        {"user_draw_off_load", ParamKind::Rate, 0.0, 2.0},
        {"ExteriorWall_U_value", ParamKind::Rate, 0.5, 1.5},
        {"ExteriorRoof_U_value", ParamKind::Rate, 0.5, 1.5},
        {"ExteriorFloor_U_value", ParamKind::Rate, 0.5, 1.5},
        {"ExteriorWall_window_U_value", ParamKind::Value, 1.0, 6.0},
        {"ExteriorWall_window_share", ParamKind::Rate, 0.5, 1.5},
        {"infiltration_rate", ParamKind::Rate, 0.5, 1.5},
        {"economy_heating_set_point", ParamKind::Value, 16.0, 19.0},
        {"comfort_heating_set_point", ParamKind::Value, 19.0, 22.0},
        {"economy_heating_start", ParamKind::Value, 20.0, 24.0},
        {"comfort_heating_start", ParamKind::Value, 4.0, 8.0},
        {"open_blind_ratio", ParamKind::Value, 0.2, 0.9},
        {"oversizing_coefficient", ParamKind::Value, 0.2, 1.0},
    };
    return s;
}

}  // namespace enerval
