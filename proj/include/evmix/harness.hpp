#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evmix/distributions.hpp"
#include "evmix/gev.hpp"
#include "evmix/kernels.hpp"
#include "evmix/semiparam.hpp"

namespace evmix {

enum class Method { parametric, nonparametric, ml_mix, cv_mix };

std::string to_string(Method method);
Method parse_method(const std::string& name);

//! One experiment cell: draw n observations, estimate the distribution of
//! the maximum of the next m.
struct Cell {
  DistributionSpec spec;
  Eigen::Index n = 0;
  int m = 1;
  bool operator==(const Cell&) const = default;
};

struct EstimatorSettings {
  std::optional<Eigen::Index> block_size;  // empty: min(m, n/20) rule
  std::optional<Kernel> kernel_override;   // empty: per-family rule
  double h_grid_min_factor = 1e-4;
  double h_grid_max_factor = 1e4;
  Eigen::Index h_grid_points = 129;
  Eigen::Index cv_nodes = 513;
  double window_padding = 1.0;
  Eigen::Index mise_nodes = 2049;
  double p_tolerance = 1e-6;
  bool loo_refit_gev = false;
  double gamma_min = -0.99;
  double gamma_max = 5.0;
  int max_iterations = 500;
  bool operator==(const EstimatorSettings&) const = default;
};

struct ExperimentConfig {
  std::vector<Cell> cells;
  std::vector<Method> methods = {Method::parametric, Method::nonparametric,
                                 Method::ml_mix, Method::cv_mix};
  int reps = 100;
  std::uint64_t master_seed = 1;
  EstimatorSettings settings;
  bool operator==(const ExperimentConfig&) const = default;
};

//! One table cell of the study output. MISE statistics are stored unscaled;
//! the x100 convention applies at emission.
struct ResultRow {
  std::string family;
  std::string params;
  Eigen::Index n = 0;
  int m = 1;
  Method method = Method::parametric;
  double mise_mean = 0.0;
  double mise_sd = 0.0;
  std::optional<double> mix_mean;
  std::optional<double> mix_sd;
  int reps = 0;
  int failures = 0;
  bool flagged = false;  // more than 10% of replications failed
};

//! Per-replication record, for verbose logs and aggregation checks.
struct RepRecord {
  Eigen::Index cell = 0;
  Method method = Method::parametric;
  int rep = 0;
  bool ok = false;
  double mise = 0.0;
  std::optional<double> mix;
};

//! Epanechnikov for the reversed Burr family, Gaussian otherwise.
Kernel kernel_rule(const DistributionSpec& spec);

//! Monte Carlo study: per (cell, rep) seeds derive from the master seed, the
//! pipeline is sample -> plug-in bandwidth -> GEV fit at level m ->
//! method-specific selection -> normalized integrated squared error. Output
//! order and content do not depend on the thread count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      int threads = 1,
                                      std::vector<RepRecord>* rep_log = nullptr);

//! Flat key-value configuration text; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);

std::string emit_csv(const std::vector<ResultRow>& rows);
std::string emit_markdown(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv_rows(const std::string& text);

//! Newline-separated numbers; errors cite the offending line number.
Eigen::VectorXd read_data_file(const std::string& path);

//! A fitted estimator of the distribution of the next m-maximum, with the
//! data retained so the kernel component stays evaluable.
struct FitSummary {
  Method method = Method::parametric;
  int m = 1;
  Kernel kernel = Kernel::gaussian;
  double h = 0.0;
  std::optional<double> p;
  std::optional<double> q;
  GevParams gev;
  bool gev_converged = false;
  Eigen::Index n_blocks = 0;
  double criterion = 0.0;
  Eigen::VectorXd data;
};

FitSummary fit_external(const Eigen::VectorXd& data, int m, Method method,
                        const EstimatorSettings& settings = {});

std::string serialize_fit(const FitSummary& fit);
FitSummary parse_fit(const std::string& text);

double fitted_cdf(const FitSummary& fit, double x);

struct ForecastReport {
  std::vector<std::pair<double, double>> quantiles;    // (prob, level)
  std::vector<std::pair<double, double>> exceedances;  // (threshold, prob)
};

//! Predictive quantiles by bisection on the fitted CDF (bracket expanded
//! until it contains the root) and exceedance probabilities 1 - CDF(t).
ForecastReport forecast(const FitSummary& fit, const std::vector<double>& probs,
                        const std::vector<double>& thresholds);

std::string format_forecast(const ForecastReport& report);

}  // namespace evmix
