#pragma once

#include <Eigen/Core>
#include <functional>

#include "evmix/gev.hpp"
#include "evmix/kernels.hpp"

namespace evmix {

//! Mixture weighted by a free coefficient p chosen by pseudolikelihood:
//! p * GEV(x) + (1 - p) * kcdf(x)^m.
struct MlMixFit {
  double p = 0.0;
  double h = 0.0;
  GevParams gev;
  Kernel kernel = Kernel::gaussian;
  int m = 1;
  double loglik = 0.0;
};

//! Mixture whose weight is tied to the bandwidth, q = h / (1 + h), chosen
//! by leave-one-out cross-validation.
struct CvMixFit {
  double h = 0.0;
  double q = 0.0;
  GevParams gev;
  Kernel kernel = Kernel::gaussian;
  int m = 1;
  double cv_value = 0.0;
};

//! Integration range of the cross-validation criterion; fixed across the
//! bandwidth grid within one selection.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

double ml_mix_cdf(const MlMixFit& fit,
                  const Eigen::Ref<const Eigen::VectorXd>& xs, double x);
double ml_mix_pdf(const MlMixFit& fit,
                  const Eigen::Ref<const Eigen::VectorXd>& xs, double x);

//! Sum over observations of log(p * gev_pdf + (1-p) * np_max_pdf); returns
//! -inf when any term vanishes. Concave in p.
double pseudo_loglik(const Eigen::Ref<const Eigen::VectorXd>& xs, double p,
                     double h, const GevParams& gev, Kernel kernel, int m);

//! Golden-section maximizer of a concave function on [0, 1]; ties resolve
//! to the smaller argument.
double maximize_on_unit_interval(const std::function<double(double)>& f,
                                 double tol);

//! Mixing-weight selection by pseudolikelihood at a fixed bandwidth.
//! Throws std::runtime_error when the objective is -inf everywhere.
MlMixFit fit_p(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
               const GevParams& gev, Kernel kernel, int m,
               double p_tolerance = 1e-6);

double cv_mix_cdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
                  const GevParams& gev, Kernel kernel, int m, double x);

//! Refit policy for the leave-one-out terms: when set, the GEV component is
//! refitted on each deleted sample instead of being held fixed.
struct LooRefit {
  Eigen::Index block_size = 2;
  MleOptions mle;
};

//! Cross-validation score: quadrature of the squared mixture CDF over the
//! window minus twice the mean leave-one-out mixture CDF at the
//! observations.
double cv_objective(const Eigen::Ref<const Eigen::VectorXd>& xs, int m,
                    const GevParams& gev, Kernel kernel, double h,
                    const Window& window, Eigen::Index nodes = 513,
                    const LooRefit* refit = nullptr);

struct CvGrid {
  double min_factor = 1e-4;
  double max_factor = 1e4;
  Eigen::Index points = 129;
};

//! [min - padding * scale, max + padding * scale] around the sample.
Window data_window(const Eigen::Ref<const Eigen::VectorXd>& xs,
                   double padding = 1.0);

//! Bandwidth selection by scanning a log-spaced grid of the cross-validation
//! score; ties resolve to the smaller bandwidth.
CvMixFit fit_h_cv(const Eigen::Ref<const Eigen::VectorXd>& xs, int m,
                  const GevParams& gev, Kernel kernel, const CvGrid& grid,
                  const Window& window, Eigen::Index nodes = 513,
                  const LooRefit* refit = nullptr);

}  // namespace evmix
