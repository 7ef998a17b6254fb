#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "enerval/errors.hpp"

namespace enerval {

struct ErrorMetrics {
    double nmbe = 0.0;    // %
    double cvrmse = 0.0;  // %
    double gof = 0.0;     // %
};

struct SeriesPair {
    std::span<const double> simulated;
    std::span<const double> measured;

    std::size_t size() const { return simulated.size(); }
};

struct EstimateSummary {
    double rmse = 0.0;  // GOF points vs reference
    double median = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::size_t n_estimates = 0;
};

// GOF = (sqrt(2)/2) * sqrt(cvrmse^2 + nmbe^2); lower is better.
inline double gof(double nmbe, double cvrmse) {
    return 0.70710678118654752440 * std::sqrt(cvrmse * cvrmse + nmbe * nmbe);
}

namespace kernel {

// Masked kernels share the left-to-right accumulation order with the pair
// versions, so unit weights reduce to the unweighted result bit-for-bit.

inline ErrorMetrics error_metrics_at(std::span<const double> sim,
                                     std::span<const double> meas,
                                     std::span<const std::uint32_t> idx) {
    double sum_d = 0.0, sum_d2 = 0.0, sum_m = 0.0;
    for (const std::uint32_t i : idx) {
        const double d = sim[i] - meas[i];
        sum_d += d;
        sum_d2 += d * d;
        sum_m += meas[i];
    }
    if (sum_m == 0.0) throw ZeroDenominator("sum of measured values is zero");
    ErrorMetrics r;
    const double n = static_cast<double>(idx.size());
    r.nmbe = 100.0 * sum_d / sum_m;
    r.cvrmse = 100.0 * std::sqrt(n) * std::sqrt(sum_d2) / sum_m;
    r.gof = gof(r.nmbe, r.cvrmse);
    return r;
}

inline ErrorMetrics weighted_error_metrics_at(std::span<const double> sim,
                                              std::span<const double> meas,
                                              std::span<const std::uint32_t> idx,
                                              std::span<const double> w,
                                              std::size_t n_pop) {
    double sum_d = 0.0, sum_d2 = 0.0, sum_m = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const std::uint32_t i = idx[j];
        const double d = sim[i] - meas[i];
        sum_d += w[j] * d;
        sum_d2 += w[j] * d * d;
        sum_m += w[j] * meas[i];
    }
    if (sum_m == 0.0) throw ZeroDenominator("weighted sum of measured values is zero");
    ErrorMetrics r;
    r.nmbe = 100.0 * sum_d / sum_m;
    r.cvrmse = 100.0 * std::sqrt(static_cast<double>(n_pop)) * std::sqrt(sum_d2) / sum_m;
    r.gof = gof(r.nmbe, r.cvrmse);
    return r;
}

}  // namespace kernel

// NMBE = 100 * sum(s_i - m_i) / sum(m_i); sign convention simulated - measured.
inline double nmbe(const SeriesPair& pair) {
    double sum_d = 0.0, sum_m = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        sum_d += pair.simulated[i] - pair.measured[i];
        sum_m += pair.measured[i];
    }
    if (sum_m == 0.0) throw ZeroDenominator("sum of measured values is zero");
    return 100.0 * sum_d / sum_m;
}

// CVRMSE = 100 * sqrt(n) * sqrt(sum((s_i - m_i)^2)) / sum(m_i)
//        = 100 * RMSD / mean(m).
inline double cvrmse(const SeriesPair& pair) {
    double sum_d2 = 0.0, sum_m = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        const double d = pair.simulated[i] - pair.measured[i];
        sum_d2 += d * d;
        sum_m += pair.measured[i];
    }
    if (sum_m == 0.0) throw ZeroDenominator("sum of measured values is zero");
    return 100.0 * std::sqrt(static_cast<double>(pair.size())) * std::sqrt(sum_d2) / sum_m;
}

inline ErrorMetrics error_metrics(const SeriesPair& pair) {
    ErrorMetrics r;
    r.nmbe = nmbe(pair);
    r.cvrmse = cvrmse(pair);
    r.gof = gof(r.nmbe, r.cvrmse);
    return r;
}

// wNMBE = 100 * sum(w_i (s_i - m_i)) / sum(w_i m_i) over observed points.
inline double weighted_nmbe(const SeriesPair& pair, std::span<const double> weights) {
    double sum_d = 0.0, sum_m = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        sum_d += weights[i] * (pair.simulated[i] - pair.measured[i]);
        sum_m += weights[i] * pair.measured[i];
    }
    if (sum_m == 0.0) throw ZeroDenominator("weighted sum of measured values is zero");
    return 100.0 * sum_d / sum_m;
}

// wCVRMSE = 100 * sqrt(n_pop) * sqrt(sum(w_i (s_i - m_i)^2)) / sum(w_i m_i),
// n_pop the number of points in the complete measured data.
inline double weighted_cvrmse(const SeriesPair& pair, std::span<const double> weights,
                              std::size_t n_pop) {
    double sum_d2 = 0.0, sum_m = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        const double d = pair.simulated[i] - pair.measured[i];
        sum_d2 += weights[i] * d * d;
        sum_m += weights[i] * pair.measured[i];
    }
    if (sum_m == 0.0) throw ZeroDenominator("weighted sum of measured values is zero");
    return 100.0 * std::sqrt(static_cast<double>(n_pop)) * std::sqrt(sum_d2) / sum_m;
}

// RMSE between a reference error and repeated estimates of it.
inline double estimate_rmse(double reference, std::span<const double> estimates) {
    if (estimates.empty()) throw EmptyInput("no estimates");
    double s = 0.0;
    for (const double e : estimates) {
        const double d = reference - e;
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(estimates.size()));
}

// Percentile with linear interpolation at rank (n-1)*q; input must be sorted.
inline double percentile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw EmptyInput("percentile of empty list");
    if (sorted.size() == 1) return sorted[0];
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted[sorted.size() - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double percentile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    return percentile_sorted(values, q);
}

// Median and empirical [2.5th, 97.5th] percentile interval.
inline EstimateSummary summarize(std::span<const double> estimates) {
    if (estimates.empty()) throw EmptyInput("no estimates to summarize");
    std::vector<double> sorted(estimates.begin(), estimates.end());
    std::sort(sorted.begin(), sorted.end());
    EstimateSummary s;
    s.n_estimates = sorted.size();
    s.median = percentile_sorted(sorted, 0.5);
    s.ci95_low = percentile_sorted(sorted, 0.025);
    s.ci95_high = percentile_sorted(sorted, 0.975);
    return s;
}

}  // namespace enerval
