#pragma once

#include <Eigen/Core>

namespace evmix {

//! Generalized extreme value parameters: shape gamma, scale a > 0,
//! location b. Support is {x : 1 + gamma * (x - b) / a > 0} for gamma != 0.
struct GevParams {
  double shape = 0.0;
  double scale = 1.0;
  double loc = 0.0;
  bool operator==(const GevParams&) const = default;
};

struct GevFit {
  GevParams params;
  double loglik = 0.0;
  Eigen::Index n_blocks = 0;
  bool converged = false;
  int iterations = 0;
};

struct MleOptions {
  double shape_min = -0.99;
  double shape_max = 5.0;
  int max_iterations = 500;
  double tolerance = 1e-9;
};

double gev_cdf(const GevParams& params, double x);
double gev_pdf(const GevParams& params, double x);

//! log gev_pdf; -inf outside the support.
double gev_log_pdf(const GevParams& params, double x);

//! Sum of gev_log_pdf over the vector; -inf when any point is outside the
//! support.
double gev_loglik(const GevParams& params,
                  const Eigen::Ref<const Eigen::VectorXd>& xs);

double gev_quantile(const GevParams& params, double q);

//! Maxima of consecutive blocks of `block_size` observations in arrival
//! order; the trailing remainder is dropped.
Eigen::VectorXd block_maxima(const Eigen::Ref<const Eigen::VectorXd>& xs,
                             Eigen::Index block_size);

//! Probability-weighted-moment starting point (Hosking's rational
//! approximation for the shape, first two weighted moments for scale and
//! location). The shape is clamped to [-0.95, 0.95], the range where the
//! approximation and the moment formulas are usable.
GevParams pwm_init(const Eigen::Ref<const Eigen::VectorXd>& maxima);

//! Maximum likelihood over (shape, log scale, location) by Nelder-Mead with
//! a support-violation barrier, restarted once from the best vertex. The
//! returned log-likelihood never falls below the initial point's.
GevFit mle_fit(const Eigen::Ref<const Eigen::VectorXd>& maxima,
               const GevParams& init, const MleOptions& options = {});

//! Max-stability map: parameters of the r-fold maximum with r = to_level /
//! from_level. The shape is unchanged.
GevParams extrapolate(const GevParams& params, double from_level,
                      double to_level);

//! min(m, n/20), clamped to at least 2, so the likelihood sees at least
//! about 20 blocks before extrapolating to level m.
Eigen::Index default_block_size(Eigen::Index n, Eigen::Index m);

//! Pipeline: block maxima -> PWM start -> MLE -> extrapolate from
//! block_size to level m.
GevFit fit_max_gev(const Eigen::Ref<const Eigen::VectorXd>& xs, int m,
                   Eigen::Index block_size, const MleOptions& options = {});

}  // namespace evmix
