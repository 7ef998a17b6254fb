#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "enerval/errors.hpp"
#include "enerval/features.hpp"
#include "enerval/metrics.hpp"
#include "enerval/series.hpp"

namespace enerval {

struct ImputationConfig {
    int max_rounds = 10;          // chained rounds; collapses to one pass here
    int evidence_iterations = 300;
    double tolerance = 1e-3;      // relative coefficient change
    double fixed_lambda = 1e-3;   // fallback ridge strength if evidence fails
};

// Hourly auxiliary features: weather channels, the ensemble-mean load and a
// sine/cosine hour-of-day encoding, all standardized over the full grid.
inline Eigen::MatrixXd build_hourly_features(const WeatherSeries& weather,
                                             std::span<const double> ensemble_mean) {
    const std::size_t n = weather.size();
    Eigen::MatrixXd x(n, 6);
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (std::size_t i = 0; i < n; ++i) {
        const int hour = static_cast<int>(((weather.timestamps[i] % 24) + 24) % 24);
        const double a = two_pi * static_cast<double>(hour) / 24.0;
        x(i, 0) = weather.outdoor_temp[i];
        x(i, 1) = weather.ghi[i];
        x(i, 2) = weather.wind[i];
        x(i, 3) = ensemble_mean[i];
        x(i, 4) = std::sin(a);
        x(i, 5) = std::cos(a);
    }
    return standardize(x).first;
}

inline Eigen::MatrixXd build_hourly_features(const WeatherSeries& weather,
                                             const SimulationEnsemble& ensemble) {
    const auto mean = ensemble.mean_load();
    return build_hourly_features(weather, std::span<const double>(mean.data(), mean.size()));
}

struct BayesianRidgeModel {
    Eigen::VectorXd coef;
    Eigen::VectorXd x_mean;  // fit-subset centering
    double y_mean = 0.0;
    double alpha = 0.0;  // weight precision
    double beta = 0.0;   // noise precision
    int iterations = 0;
    bool converged = false;

    double predict(const Eigen::RowVectorXd& x) const {
        return (x - x_mean.transpose()).dot(coef) + y_mean;
    }
};

// Evidence maximization: noise precision beta and weight precision alpha are
// updated alternately until the coefficients settle. Both start at the
// inverse residual variance of the least-squares fit.
inline BayesianRidgeModel fit_bayesian_ridge(const Eigen::MatrixXd& x,
                                             const Eigen::VectorXd& y,
                                             const ImputationConfig& cfg = {}) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    if (n < p + 2) throw InsufficientData("too few rows to fit the imputation model");

    BayesianRidgeModel model;
    model.x_mean = x.colwise().mean();
    model.y_mean = y.mean();
    const Eigen::MatrixXd xc = x.rowwise() - model.x_mean.transpose();
    const Eigen::VectorXd yc = y.array() - model.y_mean;

    const Eigen::MatrixXd a = xc.transpose() * xc;
    const Eigen::VectorXd b = xc.transpose() * yc;
    const double yty = yc.squaredNorm();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) throw InternalError("ridge eigendecomposition failed");
    const Eigen::VectorXd lambda = solver.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXd v = solver.eigenvectors();
    const Eigen::VectorXd vb = v.transpose() * b;

    const auto coef_for = [&](double alpha, double beta) {
        Eigen::VectorXd scaled(p);
        for (Eigen::Index j = 0; j < p; ++j)
            scaled(j) = vb(j) * beta / (beta * lambda(j) + alpha);
        return Eigen::VectorXd(v * scaled);
    };
    const auto residual_ss = [&](const Eigen::VectorXd& w) {
        const double ss = yty - 2.0 * w.dot(b) + w.dot(a * w);
        return std::max(ss, 0.0);
    };

    constexpr double prec_lo = 1e-12, prec_hi = 1e12;
    const double y_var = std::max(yty / static_cast<double>(n), 1e-300);

    // least-squares residual variance seeds both precisions
    const Eigen::VectorXd w_ls = coef_for(prec_lo, 1.0);
    double res_var = residual_ss(w_ls) / static_cast<double>(n);
    res_var = std::max(res_var, 1e-12 * y_var);
    double alpha = std::clamp(1.0 / res_var, prec_lo, prec_hi);
    double beta = alpha;

    Eigen::VectorXd w = coef_for(alpha, beta);
    bool converged = false;
    int it = 0;
    for (; it < cfg.evidence_iterations; ++it) {
        double gamma = 0.0;
        for (Eigen::Index j = 0; j < p; ++j)
            gamma += beta * lambda(j) / (beta * lambda(j) + alpha);
        alpha = std::clamp(gamma / std::max(w.squaredNorm(), 1e-300), prec_lo, prec_hi);
        const double rss = std::max(residual_ss(w), 1e-300);
        beta = std::clamp((static_cast<double>(n) - gamma) / rss, prec_lo, prec_hi);

        const Eigen::VectorXd w_new = coef_for(alpha, beta);
        const double change = (w_new - w).norm();
        const double scale = std::max(w.norm(), 1e-300);
        w = w_new;
        if (change / scale < cfg.tolerance) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged) {
        // fixed-lambda ridge fallback
        w = coef_for(cfg.fixed_lambda, 1.0);
        alpha = cfg.fixed_lambda;
        beta = 1.0;
    }
    model.coef = w;
    model.alpha = alpha;
    model.beta = beta;
    model.iterations = it;
    model.converged = converged;
    return model;
}

// Missing values are replaced by the posterior-mean prediction; observed
// values pass through untouched. Predicted loads are clamped at zero.
inline std::vector<double> impute_series(std::span<const double> values, const Mask& mask,
                                         const Eigen::MatrixXd& aux,
                                         const ImputationConfig& cfg = {}) {
    const std::size_t n = values.size();
    if (aux.rows() != static_cast<Eigen::Index>(n))
        throw SchemaError("auxiliary matrix does not match the series grid");
    const auto obs = observed_indices(mask);
    if (obs.size() < 30) throw InsufficientData("need >= 30 observed points to impute");

    std::vector<double> out(values.begin(), values.end());
    if (obs.size() == n) return out;

    Eigen::MatrixXd x(obs.size(), aux.cols());
    Eigen::VectorXd y(obs.size());
    for (std::size_t j = 0; j < obs.size(); ++j) {
        x.row(static_cast<Eigen::Index>(j)) = aux.row(obs[j]);
        y(static_cast<Eigen::Index>(j)) = values[obs[j]];
    }
    const auto model = fit_bayesian_ridge(x, y, cfg);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) continue;
        const double pred = model.predict(aux.row(static_cast<Eigen::Index>(i)));
        out[i] = std::max(0.0, pred);
    }
    return out;
}

// GOF of one simulated combination against the imputed series, evaluated over
// the population grid (all points of the complete measured data).
inline ErrorMetrics imputed_error(std::span<const double> values, const Mask& mask,
                                  const Eigen::MatrixXd& aux, std::span<const double> simulated,
                                  const std::vector<std::uint32_t>& population_idx,
                                  const ImputationConfig& cfg = {}) {
    const auto completed = impute_series(values, mask, aux, cfg);
    return kernel::error_metrics_at(simulated,
                                    std::span<const double>(completed.data(), completed.size()),
                                    population_idx);
}

}  // namespace enerval
