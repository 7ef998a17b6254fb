#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "enerval/errors.hpp"
#include "enerval/metrics.hpp"
#include "enerval/series.hpp"
#include "enerval/timegrid.hpp"

namespace enerval {

// ---------------------------------------------------------------------------
// Daily feature matrix

struct DailyFeatureMatrix {
    std::vector<std::string> names;
    Eigen::MatrixXd x;                       // days x features
    std::vector<int> observed_hours;         // under the current mask
    std::vector<std::uint8_t> respondent;    // observed_hours > 0
};

inline const std::vector<std::string>& daily_feature_names() {
    static const std::vector<std::string> names = {
        "temp_mean", "temp_min", "temp_max", "hdh18",    "ghi_mean",
        "ghi_max",   "wind_mean", "sim_mean", "sim_peak", "weekend",
    };
    return names;
}

// Feature part only; all sources are complete, so no entry is ever missing.
inline Eigen::MatrixXd daily_feature_values(const WeatherSeries& weather,
                                            std::span<const double> ensemble_mean,
                                            const DayLayout& layout) {
    const std::size_t nd = layout.n_days();
    Eigen::MatrixXd x(nd, 10);
    for (std::size_t d = 0; d < nd; ++d) {
        const std::size_t a = layout.start[d];
        const std::size_t b = a + layout.length[d];
        double t_sum = 0, t_min = weather.outdoor_temp[a], t_max = weather.outdoor_temp[a];
        double hdh = 0, g_sum = 0, g_max = 0, w_sum = 0, s_sum = 0, s_max = 0;
        for (std::size_t i = a; i < b; ++i) {
            const double t = weather.outdoor_temp[i];
            t_sum += t;
            t_min = std::min(t_min, t);
            t_max = std::max(t_max, t);
            hdh += std::max(0.0, 18.0 - t);  // heating degree-hours, base 18 C
            g_sum += weather.ghi[i];
            g_max = std::max(g_max, weather.ghi[i]);
            w_sum += weather.wind[i];
            s_sum += ensemble_mean[i];
            s_max = std::max(s_max, ensemble_mean[i]);
        }
        const double len = static_cast<double>(b - a);
        x(d, 0) = t_sum / len;
        x(d, 1) = t_min;
        x(d, 2) = t_max;
        x(d, 3) = hdh;
        x(d, 4) = g_sum / len;
        x(d, 5) = g_max;
        x(d, 6) = w_sum / len;
        x(d, 7) = s_sum / len;
        x(d, 8) = s_max;
        x(d, 9) = layout.weekend[d] ? 1.0 : 0.0;
    }
    return x;
}

inline std::vector<int> observed_hours_per_day(const Mask& mask, const DayLayout& layout) {
    std::vector<int> counts(layout.n_days(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) counts[static_cast<std::size_t>(layout.day_of_index[i])] += 1;
    return counts;
}

inline DailyFeatureMatrix aggregate_daily(const WeatherSeries& weather,
                                          const SimulationEnsemble& ensemble,
                                          const Mask& mask, const DayLayout& layout) {
    DailyFeatureMatrix m;
    m.names = daily_feature_names();
    const auto mean = ensemble.mean_load();
    m.x = daily_feature_values(weather, mean, layout);
    m.observed_hours = observed_hours_per_day(mask, layout);
    m.respondent.resize(layout.n_days());
    for (std::size_t d = 0; d < layout.n_days(); ++d)
        m.respondent[d] = m.observed_hours[d] > 0 ? 1 : 0;
    return m;
}

// ---------------------------------------------------------------------------
// Standardization (population std, constant columns dropped)

struct Standardization {
    Eigen::VectorXd mean;
    Eigen::VectorXd std;
    std::vector<int> kept;     // original column indices that survived
    std::vector<int> dropped;  // constant columns
};

inline Standardization standardize_fit(const Eigen::MatrixXd& x) {
    Standardization st;
    const auto n = x.rows();
    const Eigen::VectorXd mean = x.colwise().mean();
    Eigen::VectorXd sd(x.cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double ss = (x.col(c).array() - mean(c)).square().sum();
        sd(c) = std::sqrt(ss / static_cast<double>(n));
    }
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double scale = std::max(1.0, std::abs(mean(c)));
        if (sd(c) <= 1e-12 * scale)
            st.dropped.push_back(static_cast<int>(c));
        else
            st.kept.push_back(static_cast<int>(c));
    }
    st.mean.resize(st.kept.size());
    st.std.resize(st.kept.size());
    for (std::size_t j = 0; j < st.kept.size(); ++j) {
        st.mean(static_cast<Eigen::Index>(j)) = mean(st.kept[j]);
        st.std(static_cast<Eigen::Index>(j)) = sd(st.kept[j]);
    }
    return st;
}

inline Eigen::MatrixXd standardize_apply(const Standardization& st, const Eigen::MatrixXd& x) {
    Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(st.kept.size()));
    for (std::size_t j = 0; j < st.kept.size(); ++j) {
        const Eigen::Index c = static_cast<Eigen::Index>(j);
        out.col(c) = (x.col(st.kept[j]).array() - st.mean(c)) / st.std(c);
    }
    return out;
}

inline std::pair<Eigen::MatrixXd, Standardization> standardize(const Eigen::MatrixXd& x) {
    auto st = standardize_fit(x);
    return {standardize_apply(st, x), std::move(st)};
}

// ---------------------------------------------------------------------------
// PCA on the correlation structure (eigen-decomposition of the covariance of
// standardized features)

struct PCAModel {
    Standardization scaling;
    Eigen::MatrixXd components;            // kept-features x components, orthonormal cols
    Eigen::VectorXd explained_ratio;       // descending, sums to 1
    int retained = 0;                      // smallest k reaching the variance target

    int n_components() const { return static_cast<int>(components.cols()); }
};

inline PCAModel pca_fit(const Eigen::MatrixXd& x_raw, double variance_target) {
    if (variance_target <= 0.0 || variance_target > 1.0)
        throw ConfigError("variance target must be in (0, 1]");
    PCAModel model;
    model.scaling = standardize_fit(x_raw);
    if (model.scaling.kept.empty()) throw DegenerateInput("all feature columns constant");
    const Eigen::MatrixXd z = standardize_apply(model.scaling, x_raw);
    const auto n = static_cast<double>(z.rows());
    const Eigen::MatrixXd cov = (z.transpose() * z) / n;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw InternalError("eigen-decomposition failed");

    // ascending from Eigen; flip to descending
    const Eigen::Index p = cov.rows();
    Eigen::VectorXd lambda(p);
    model.components.resize(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        lambda(i) = std::max(0.0, solver.eigenvalues()(p - 1 - i));
        model.components.col(i) = solver.eigenvectors().col(p - 1 - i);
    }
    const double total = lambda.sum();
    if (total <= 0.0) throw DegenerateInput("feature matrix has no variance");
    model.explained_ratio = lambda / total;

    double cum = 0.0;
    model.retained = static_cast<int>(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        cum += model.explained_ratio(i);
        if (cum >= variance_target - 1e-12) {
            model.retained = static_cast<int>(i + 1);
            break;
        }
    }
    return model;
}

inline Eigen::MatrixXd pca_transform(const PCAModel& model, const Eigen::MatrixXd& x_raw,
                                     int k = 0) {
    if (x_raw.cols() != static_cast<Eigen::Index>(model.scaling.kept.size() +
                                                  model.scaling.dropped.size()))
        throw SchemaError("feature count does not match the fitted PCA model");
    if (k <= 0) k = model.retained;
    const Eigen::MatrixXd z = standardize_apply(model.scaling, x_raw);
    return z * model.components.leftCols(k);
}

// Inverse projection over all components; reconstructs the kept columns.
inline Eigen::MatrixXd pca_inverse(const PCAModel& model, const Eigen::MatrixXd& scores) {
    const Eigen::MatrixXd z = scores * model.components.leftCols(scores.cols()).transpose();
    Eigen::MatrixXd out(z.rows(), z.cols());
    for (Eigen::Index c = 0; c < z.cols(); ++c)
        out.col(c) = z.col(c).array() * model.scaling.std(c) + model.scaling.mean(c);
    return out;
}

// ---------------------------------------------------------------------------
// Quantile discretisation

// Edges at i/n quantiles (linear interpolation); ties go to the lower bin.
inline std::vector<double> quantile_edges(std::span<const double> values, int n_quantiles) {
    if (n_quantiles < 1) throw ConfigError("n_quantiles must be >= 1");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(n_quantiles - 1));
    for (int j = 1; j < n_quantiles; ++j)
        edges.push_back(percentile_sorted(sorted, static_cast<double>(j) /
                                                      static_cast<double>(n_quantiles)));
    return edges;
}

inline int bin_of(const std::vector<double>& edges, double v) {
    return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), v) - edges.begin());
}

struct CellPartition {
    std::vector<std::vector<double>> edges;  // per component
    std::vector<int> bins;                   // bins per component (edges.size()+1)

    int n_components() const { return static_cast<int>(edges.size()); }

    // Joint cell id over the first n_comp components, mixed radix.
    int cell_of(const Eigen::RowVectorXd& scores, int n_comp) const {
        int id = 0;
        for (int c = 0; c < n_comp; ++c)
            id = id * bins[c] + bin_of(edges[c], scores(c));
        return id;
    }

    int n_cells(int n_comp) const {
        int n = 1;
        for (int c = 0; c < n_comp; ++c) n *= bins[c];
        return n;
    }
};

inline CellPartition build_partition(const Eigen::MatrixXd& pop_scores,
                                     const std::vector<int>& bins_per_comp) {
    CellPartition part;
    part.bins = bins_per_comp;
    for (std::size_t c = 0; c < bins_per_comp.size(); ++c) {
        const Eigen::VectorXd col = pop_scores.col(static_cast<Eigen::Index>(c));
        part.edges.push_back(
            quantile_edges(std::span<const double>(col.data(), col.size()), bins_per_comp[c]));
    }
    return part;
}

// One column discretized against its own population distribution.
inline std::vector<int> quantile_discretize(std::span<const double> values, int n_quantiles) {
    const auto edges = quantile_edges(values, n_quantiles);
    std::vector<int> bins(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) bins[i] = bin_of(edges, values[i]);
    return bins;
}

// Default quantile counts by descending explained variance: component j gets
// max(floor(q_max*(1 - j/k)), 1) bins.
inline std::vector<int> default_quantile_counts(int k, int q_max) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const double q = static_cast<double>(q_max) *
                         (1.0 - static_cast<double>(j) / static_cast<double>(k));
        out.push_back(std::max(1, static_cast<int>(std::floor(q))));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mutual information (plug-in estimate on quantile-binned histograms, nats)

inline double mutual_information(std::span<const double> x, std::span<const double> y,
                                 int bins = 8) {
    if (x.size() != y.size()) throw InternalError("MI inputs differ in length");
    if (x.size() < 30) throw InsufficientData("MI needs at least 30 samples");
    if (bins < 2) throw ConfigError("MI needs at least 2 bins");
    const auto ex = quantile_edges(x, bins);
    const auto ey = quantile_edges(y, bins);
    const std::size_t n = x.size();
    std::vector<double> joint(static_cast<std::size_t>(bins) * bins, 0.0);
    std::vector<double> px(bins, 0.0), py(bins, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const int bx = bin_of(ex, x[i]);
        const int by = bin_of(ey, y[i]);
        joint[static_cast<std::size_t>(bx) * bins + by] += 1.0;
        px[bx] += 1.0;
        py[by] += 1.0;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    double mi = 0.0;
    for (int a = 0; a < bins; ++a) {
        for (int b = 0; b < bins; ++b) {
            const double pab = joint[static_cast<std::size_t>(a) * bins + b] * inv_n;
            if (pab <= 0.0) continue;
            const double pa = px[a] * inv_n;
            const double pb = py[b] * inv_n;
            mi += pab * std::log(pab / (pa * pb));
        }
    }
    return std::max(0.0, mi);
}

}  // namespace enerval
