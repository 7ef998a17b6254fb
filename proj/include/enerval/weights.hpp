#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "enerval/errors.hpp"
#include "enerval/features.hpp"
#include "enerval/metrics.hpp"
#include "enerval/series.hpp"
#include "enerval/timegrid.hpp"

namespace enerval {

struct ConvergenceRecord {
    std::string method;
    int iterations = 0;
    double max_deviation = 0.0;
    bool converged = true;
    int collapsed_components = 0;  // cell weighting
    int redistributed_bins = 0;    // raking
    bool availability_fallback = false;
};

// Step 1: each observed hour of day d gets (population hours in d) /
// (observed hours in d). Days with no observed hour contribute nothing.
inline std::vector<double> availability_weights(const Mask& mask, const Mask& pop_mask,
                                                const DayLayout& layout,
                                                const std::vector<std::uint32_t>& obs_idx) {
    std::vector<double> pop_hours(layout.n_days(), 0.0);
    std::vector<double> obs_hours(layout.n_days(), 0.0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const auto d = static_cast<std::size_t>(layout.day_of_index[i]);
        if (pop_mask[i]) pop_hours[d] += 1.0;
        if (mask[i]) obs_hours[d] += 1.0;
    }
    std::vector<double> factors(obs_idx.size());
    for (std::size_t j = 0; j < obs_idx.size(); ++j) {
        const auto d = static_cast<std::size_t>(layout.day_of_index[obs_idx[j]]);
        factors[j] = pop_hours[d] / obs_hours[d];
    }
    return factors;
}

struct CellWeightResult {
    std::vector<double> day_factor;  // per day; 0 for non-respondent days
    int used_components = 0;         // after the collapse rule
    int collapsed_components = 0;
    std::vector<int> cell_of_day;    // final cell per day; -1 outside population
    std::vector<double> pop_count;   // per final cell
    std::vector<double> resp_count;  // per final cell
};

// Step 2, cell weighting: factor = population days / respondent days per
// joint cell. Cells with population but no respondents trigger the collapse
// rule: drop the last (lowest-variance) component's binning and re-form.
inline CellWeightResult cell_weights(const CellPartition& partition,
                                     const Eigen::MatrixXd& pop_scores,
                                     const std::vector<std::uint8_t>& population_day,
                                     const std::vector<std::uint8_t>& respondent_day) {
    const std::size_t nd = population_day.size();
    bool any_respondent = false;
    for (std::size_t d = 0; d < nd; ++d)
        if (respondent_day[d]) any_respondent = true;
    if (!any_respondent)
        throw WeightingInfeasible("no respondent days for cell weighting");

    for (int n_comp = partition.n_components(); n_comp >= 0; --n_comp) {
        const int nc = partition.n_cells(n_comp);
        std::vector<double> pop(nc, 0.0), resp(nc, 0.0);
        std::vector<int> cell(nd, -1);
        for (std::size_t d = 0; d < nd; ++d) {
            if (!population_day[d]) continue;
            const int c =
                n_comp == 0
                    ? 0
                    : partition.cell_of(pop_scores.row(static_cast<Eigen::Index>(d)), n_comp);
            cell[d] = c;
            pop[c] += 1.0;
            if (respondent_day[d]) resp[c] += 1.0;
        }
        bool feasible = true;
        for (int c = 0; c < nc; ++c)
            if (pop[c] > 0.0 && resp[c] == 0.0) feasible = false;
        if (!feasible) continue;

        CellWeightResult res;
        res.used_components = n_comp;
        res.collapsed_components = partition.n_components() - n_comp;
        res.cell_of_day = std::move(cell);
        res.day_factor.assign(nd, 0.0);
        for (std::size_t d = 0; d < nd; ++d)
            if (respondent_day[d]) res.day_factor[d] = pop[res.cell_of_day[d]] /
                                                       resp[res.cell_of_day[d]];
        res.pop_count = std::move(pop);
        res.resp_count = std::move(resp);
        return res;
    }
    throw WeightingInfeasible("cell collapse exhausted without respondents");
}

struct RakeResult {
    std::vector<double> day_factor;  // per day; 0 for non-respondent days
    int iterations = 0;
    double max_deviation = 0.0;
    bool converged = false;
    int redistributed_bins = 0;
};

// Step 2, raking: iterative proportional fitting of respondent day weights to
// the population marginal bin counts of every component. Population bins
// without respondents have their mass redistributed proportionally over the
// component's other bins before fitting.
inline RakeResult rake_weights(const CellPartition& partition,
                               const Eigen::MatrixXd& pop_scores,
                               const std::vector<std::uint8_t>& population_day,
                               const std::vector<std::uint8_t>& respondent_day,
                               int max_iter = 2000, double tol = 0.01) {
    const std::size_t nd = population_day.size();
    const int k = partition.n_components();

    std::vector<std::size_t> resp_days;
    for (std::size_t d = 0; d < nd; ++d)
        if (respondent_day[d]) resp_days.push_back(d);
    if (resp_days.empty()) throw WeightingInfeasible("no respondent days for raking");

    // per-component bin of each population day
    std::vector<std::vector<int>> bin_of_day(k, std::vector<int>(nd, -1));
    std::vector<std::vector<double>> target(k);
    RakeResult res;
    for (int c = 0; c < k; ++c) {
        target[c].assign(partition.bins[c], 0.0);
        std::vector<double> resp_present(partition.bins[c], 0.0);
        for (std::size_t d = 0; d < nd; ++d) {
            if (!population_day[d]) continue;
            const int b = bin_of(partition.edges[c],
                                 pop_scores(static_cast<Eigen::Index>(d), c));
            bin_of_day[c][d] = b;
            target[c][b] += 1.0;
            if (respondent_day[d]) resp_present[b] += 1.0;
        }
        double orphan_mass = 0.0, kept_mass = 0.0;
        for (int b = 0; b < partition.bins[c]; ++b) {
            if (target[c][b] > 0.0 && resp_present[b] == 0.0) {
                orphan_mass += target[c][b];
                target[c][b] = 0.0;
                ++res.redistributed_bins;
            } else {
                kept_mass += target[c][b];
            }
        }
        if (orphan_mass > 0.0 && kept_mass > 0.0) {
            const double scale = (kept_mass + orphan_mass) / kept_mass;
            for (int b = 0; b < partition.bins[c]; ++b) target[c][b] *= scale;
        }
    }

    std::vector<double> w(nd, 0.0);
    for (const std::size_t d : resp_days) w[d] = 1.0;

    const auto deviation = [&]() {
        double dev = 0.0;
        for (int c = 0; c < k; ++c) {
            std::vector<double> total(partition.bins[c], 0.0);
            for (const std::size_t d : resp_days) total[bin_of_day[c][d]] += w[d];
            for (int b = 0; b < partition.bins[c]; ++b)
                if (target[c][b] > 0.0)
                    dev = std::max(dev, std::abs(total[b] - target[c][b]) / target[c][b]);
        }
        return dev;
    };

    res.max_deviation = deviation();
    res.converged = res.max_deviation < tol;
    while (!res.converged && res.iterations < max_iter) {
        for (int c = 0; c < k; ++c) {
            std::vector<double> total(partition.bins[c], 0.0);
            for (const std::size_t d : resp_days) total[bin_of_day[c][d]] += w[d];
            for (const std::size_t d : resp_days) {
                const int b = bin_of_day[c][d];
                if (target[c][b] > 0.0 && total[b] > 0.0)
                    w[d] *= target[c][b] / total[b];
            }
        }
        ++res.iterations;
        res.max_deviation = deviation();
        res.converged = res.max_deviation < tol;
    }
    res.day_factor = std::move(w);
    return res;
}

// Step 3: scale to the population total (count of hourly points in the
// complete measured data).
inline double match_population_total(std::vector<double>& weights, std::size_t n_pop) {
    double sum = 0.0;
    for (const double v : weights) sum += v;
    if (sum <= 0.0) throw WeightingInfeasible("non-positive weight total");
    const double scale = static_cast<double>(n_pop) / sum;
    for (double& v : weights) v *= scale;
    return scale;
}

inline ErrorMetrics weighted_error(std::span<const double> simulated,
                                   std::span<const double> measured,
                                   const std::vector<std::uint32_t>& obs_idx,
                                   std::span<const double> weights, std::size_t n_pop) {
    return kernel::weighted_error_metrics_at(simulated, measured, obs_idx, weights, n_pop);
}

}  // namespace enerval
