#include "evmix/semiparam.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "evmix/metrics.hpp"

namespace evmix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_mix_inputs(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
                      int m) {
  if (xs.size() == 0) throw std::invalid_argument("empty sample");
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("bandwidth must be positive and finite");
  if (m < 1) throw std::invalid_argument("horizon m must be >= 1");
}

double mix_loglik(const Eigen::VectorXd& par_pdf, const Eigen::VectorXd& np_pdf,
                  double p) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < par_pdf.size(); ++i) {
    const double term = p * par_pdf[i] + (1.0 - p) * np_pdf[i];
    if (!(term > 0.0)) return -kInf;
    sum += std::log(term);
  }
  return sum;
}

//! Densities of both mixture components at the observations; the p-scan
//! only needs these two vectors.
void component_densities(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
                         const GevParams& gev, Kernel kernel, int m,
                         Eigen::VectorXd& par_pdf, Eigen::VectorXd& np_pdf) {
  const Eigen::Index n = xs.size();
  par_pdf.resize(n);
  np_pdf.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    par_pdf[i] = gev_pdf(gev, xs[i]);
    np_pdf[i] = np_max_pdf(xs, h, kernel, m, xs[i]);
  }
}

}  // namespace

double ml_mix_cdf(const MlMixFit& fit,
                  const Eigen::Ref<const Eigen::VectorXd>& xs, double x) {
  return fit.p * gev_cdf(fit.gev, x) +
         (1.0 - fit.p) * np_max_cdf(xs, fit.h, fit.kernel, fit.m, x);
}

double ml_mix_pdf(const MlMixFit& fit,
                  const Eigen::Ref<const Eigen::VectorXd>& xs, double x) {
  return fit.p * gev_pdf(fit.gev, x) +
         (1.0 - fit.p) * np_max_pdf(xs, fit.h, fit.kernel, fit.m, x);
}

double pseudo_loglik(const Eigen::Ref<const Eigen::VectorXd>& xs, double p,
                     double h, const GevParams& gev, Kernel kernel, int m) {
  check_mix_inputs(xs, h, m);
  Eigen::VectorXd par_pdf, np_pdf;
  component_densities(xs, h, gev, kernel, m, par_pdf, np_pdf);
  return mix_loglik(par_pdf, np_pdf, p);
}

double maximize_on_unit_interval(const std::function<double(double)>& f,
                                 double tol) {
  constexpr double kInvPhi = 0.61803398874989484820;
  constexpr double kInvPhi2 = 0.38196601125010515180;
  double a = 0.0, b = 1.0;
  double c = a + kInvPhi2 * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {  // keep the left interval on ties
      b = d;
      d = c;
      fd = fc;
      c = a + kInvPhi2 * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double interior = fc >= fd ? c : d;
  const double fi = fc >= fd ? fc : fd;

  // Endpoints compete with the interior optimum; the smallest argument wins
  // ties so a flat objective resolves to 0.
  const double f0 = f(0.0);
  const double f1 = f(1.0);
  if (f0 >= fi && f0 >= f1) return 0.0;
  if (fi >= f1) return interior;
  return 1.0;
}

MlMixFit fit_p(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
               const GevParams& gev, Kernel kernel, int m, double p_tolerance) {
  check_mix_inputs(xs, h, m);
  if (xs.size() < 2) throw std::invalid_argument("fit_p needs n >= 2");
  Eigen::VectorXd par_pdf, np_pdf;
  component_densities(xs, h, gev, kernel, m, par_pdf, np_pdf);
  const auto objective = [&](double p) {
    return mix_loglik(par_pdf, np_pdf, p);
  };
  // The objective is concave, so a -inf midpoint means both component
  // densities vanish at some observation and no weight can rescue it.
  if (objective(0.5) == -kInf)
    throw std::runtime_error(
        "pseudolikelihood is -inf for every mixing weight");
  const double p = maximize_on_unit_interval(objective, p_tolerance);
  return MlMixFit{p, h, gev, kernel, m, objective(p)};
}

double cv_mix_cdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
                  const GevParams& gev, Kernel kernel, int m, double x) {
  check_mix_inputs(xs, h, m);
  const double q = h / (1.0 + h);
  return q * gev_cdf(gev, x) +
         (1.0 - q) * np_max_cdf(xs, h, kernel, m, x);
}

double cv_objective(const Eigen::Ref<const Eigen::VectorXd>& xs, int m,
                    const GevParams& gev, Kernel kernel, double h,
                    const Window& window, Eigen::Index nodes,
                    const LooRefit* refit) {
  check_mix_inputs(xs, h, m);
  const Eigen::Index n = xs.size();
  if (n < 2) throw std::invalid_argument("cross-validation needs n >= 2");
  if (!(window.lo <= window.hi))
    throw std::invalid_argument("window bounds reversed");

  const double q = h / (1.0 + h);
  const double squared_integral = simpson(
      [&](double x) {
        const double g = cv_mix_cdf(xs, h, gev, kernel, m, x);
        return g * g;
      },
      window.lo, window.hi, nodes);

  double loo_sum = 0.0;
  std::vector<double> reduced;
  if (refit) reduced.resize(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    double par_cdf;
    if (refit) {
      Eigen::Index k = 0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) reduced[k++] = xs[j];
      const Eigen::Map<const Eigen::VectorXd> view(reduced.data(), n - 1);
      par_cdf =
          gev_cdf(fit_max_gev(view, m, refit->block_size, refit->mle).params,
                  xs[i]);
    } else {
      par_cdf = gev_cdf(gev, xs[i]);
    }
    const double np_cdf = loo_kcdf(xs, i, h, kernel, xs[i]);
    loo_sum += q * par_cdf + (1.0 - q) * std::pow(np_cdf, m);
  }
  return squared_integral - 2.0 * loo_sum / static_cast<double>(n);
}

Window data_window(const Eigen::Ref<const Eigen::VectorXd>& xs,
                   double padding) {
  if (xs.size() < 2) throw std::invalid_argument("window needs n >= 2");
  if (!(padding >= 0.0)) throw std::invalid_argument("padding must be >= 0");
  const double pad = padding * robust_scale(xs);
  return Window{xs.minCoeff() - pad, xs.maxCoeff() + pad};
}

CvMixFit fit_h_cv(const Eigen::Ref<const Eigen::VectorXd>& xs, int m,
                  const GevParams& gev, Kernel kernel, const CvGrid& grid,
                  const Window& window, Eigen::Index nodes,
                  const LooRefit* refit) {
  if (xs.size() < 2) throw std::invalid_argument("fit_h_cv needs n >= 2");
  if (!(grid.min_factor > 0.0) || !(grid.max_factor >= grid.min_factor) ||
      grid.points < 1)
    throw std::invalid_argument("invalid bandwidth grid");

  const double scale = robust_scale(xs);
  const double log_lo = std::log(grid.min_factor * scale);
  const double log_hi = std::log(grid.max_factor * scale);
  const double step =
      grid.points > 1 ? (log_hi - log_lo) / static_cast<double>(grid.points - 1)
                      : 0.0;

  double best_h = 0.0;
  double best_value = kInf;
  for (Eigen::Index i = 0; i < grid.points; ++i) {
    const double h = std::exp(log_lo + step * static_cast<double>(i));
    const double value = cv_objective(xs, m, gev, kernel, h, window, nodes, refit);
    if (value < best_value) {  // strict: ties keep the smaller bandwidth
      best_value = value;
      best_h = h;
    }
  }
  if (!(best_h > 0.0))
    throw std::runtime_error("cross-validation failed on the whole grid");
  return CvMixFit{best_h, best_h / (1.0 + best_h), gev, kernel, m, best_value};
}

}  // namespace evmix
