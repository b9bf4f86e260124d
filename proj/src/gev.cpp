#include "evmix/gev.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evmix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLn3 = 1.09861228866810969140;

void check_params(const GevParams& p) {
  if (!(p.scale > 0.0) || !std::isfinite(p.scale) || !std::isfinite(p.shape) ||
      !std::isfinite(p.loc))
    throw std::invalid_argument("invalid GEV parameters");
}

Eigen::Index count_distinct(Eigen::VectorXd sorted) {
  Eigen::Index distinct = sorted.size() > 0 ? 1 : 0;
  for (Eigen::Index i = 1; i < sorted.size(); ++i)
    if (sorted[i] != sorted[i - 1]) ++distinct;
  return distinct;
}

}  // namespace

double gev_cdf(const GevParams& params, double x) {
  check_params(params);
  const double z = (x - params.loc) / params.scale;
  double reduced;  // the Gumbel-form argument log(1 + shape z) / shape
  if (params.shape == 0.0) {
    reduced = z;
  } else {
    const double w = params.shape * z;
    if (1.0 + w <= 0.0) return params.shape > 0.0 ? 0.0 : 1.0;
    reduced = std::log1p(w) / params.shape;
  }
  return std::exp(-std::exp(-reduced));
}

double gev_log_pdf(const GevParams& params, double x) {
  check_params(params);
  const double z = (x - params.loc) / params.scale;
  const double log_a = std::log(params.scale);
  if (params.shape == 0.0) return -log_a - z - std::exp(-z);
  const double w = params.shape * z;
  if (1.0 + w <= 0.0) return -kInf;
  const double lw = std::log1p(w);
  const double reduced = lw / params.shape;
  return -log_a - lw - reduced - std::exp(-reduced);
}

double gev_pdf(const GevParams& params, double x) {
  const double lp = gev_log_pdf(params, x);
  return lp == -kInf ? 0.0 : std::exp(lp);
}

double gev_loglik(const GevParams& params,
                  const Eigen::Ref<const Eigen::VectorXd>& xs) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const double lp = gev_log_pdf(params, xs[i]);
    if (lp == -kInf) return -kInf;
    sum += lp;
  }
  return sum;
}

double gev_quantile(const GevParams& params, double q) {
  check_params(params);
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("probability must lie strictly in (0, 1)");
  const double ln = -std::log(q);
  if (params.shape == 0.0) return params.loc - params.scale * std::log(ln);
  return params.loc +
         params.scale * std::expm1(-params.shape * std::log(ln)) / params.shape;
}

Eigen::VectorXd block_maxima(const Eigen::Ref<const Eigen::VectorXd>& xs,
                             Eigen::Index block_size) {
  const Eigen::Index n = xs.size();
  if (block_size < 1 || block_size > n)
    throw std::invalid_argument("block size must lie in [1, n]");
  const Eigen::Index blocks = n / block_size;
  Eigen::VectorXd out(blocks);
  for (Eigen::Index j = 0; j < blocks; ++j)
    out[j] = xs.segment(j * block_size, block_size).maxCoeff();
  return out;
}

GevParams pwm_init(const Eigen::Ref<const Eigen::VectorXd>& maxima) {
  const Eigen::Index n = maxima.size();
  if (n < 3) throw std::invalid_argument("PWM start needs at least 3 maxima");
  Eigen::VectorXd sorted = maxima;
  std::sort(sorted.data(), sorted.data() + n);
  if (count_distinct(sorted) < 3)
    throw std::runtime_error("degenerate maxima: fewer than 3 distinct values");

  const double dn = static_cast<double>(n);
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double w1 = static_cast<double>(j) / (dn - 1.0);
    const double w2 = w1 * static_cast<double>(j - 1) / (dn - 2.0);
    b0 += sorted[j];
    b1 += w1 * sorted[j];
    b2 += w2 * sorted[j];
  }
  b0 /= dn;
  b1 /= dn;
  b2 /= dn;

  const double l2 = 2.0 * b1 - b0;
  const double denom = 3.0 * b2 - b0;
  if (!(l2 > 0.0) || denom == 0.0)
    throw std::runtime_error("degenerate maxima: weighted moments collapse");

  const double c = l2 / denom - kLn2 / kLn3;
  // Hosking's shape (opposite sign convention to the extreme-value index).
  double k = 7.8590 * c + 2.9554 * c * c;
  k = std::clamp(k, -0.95, 0.95);

  double scale, loc;
  if (k == 0.0) {
    scale = l2 / kLn2;
    loc = b0 - kEulerGamma * scale;
  } else {
    const double g1 = std::tgamma(1.0 + k);
    scale = l2 * k / (g1 * -std::expm1(-k * kLn2));
    const double ratio = std::fabs(k) < 1e-8
                             ? -kEulerGamma +
                                   k * (0.5 * kEulerGamma * kEulerGamma +
                                        M_PI * M_PI / 12.0)
                             : (g1 - 1.0) / k;
    loc = b0 + scale * ratio;
  }
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(loc))
    throw std::runtime_error("degenerate maxima: PWM scale not positive");
  return GevParams{-k, scale, loc};
}

namespace {

using Point = std::array<double, 3>;  // (shape, log scale, location)

GevParams point_to_params(const Point& p) {
  return GevParams{p[0], std::exp(p[1]), p[2]};
}

struct NmResult {
  Point best;
  double value;
  bool converged;
  int iterations;
};

//! Nelder-Mead minimization with standard coefficients.
template <class F>
NmResult nelder_mead(F&& f, const Point& start, const Point& steps,
                     int max_iterations, double tolerance) {
  std::array<Point, 4> simplex;
  std::array<double, 4> values;
  simplex[0] = start;
  for (int v = 1; v < 4; ++v) {
    simplex[v] = start;
    simplex[v][v - 1] += steps[v - 1];
  }
  for (int v = 0; v < 4; ++v) values[v] = f(simplex[v]);

  const auto order = [&] {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    std::array<Point, 4> s;
    std::array<double, 4> val;
    for (int v = 0; v < 4; ++v) {
      s[v] = simplex[idx[v]];
      val[v] = values[idx[v]];
    }
    simplex = s;
    values = val;
  };

  bool converged = false;
  int it = 0;
  for (; it < max_iterations; ++it) {
    order();
    if (std::isfinite(values[3]) &&
        values[3] - values[0] <= tolerance * (1.0 + std::fabs(values[0]))) {
      converged = true;
      break;
    }
    Point centroid{};
    for (int v = 0; v < 3; ++v)
      for (int d = 0; d < 3; ++d) centroid[d] += simplex[v][d] / 3.0;

    const auto blend = [&](double coef) {
      Point p;
      for (int d = 0; d < 3; ++d)
        p[d] = centroid[d] + coef * (simplex[3][d] - centroid[d]);
      return p;
    };

    const Point reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < values[0]) {
      const Point expanded = blend(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[3] = expanded;
        values[3] = fe;
      } else {
        simplex[3] = reflected;
        values[3] = fr;
      }
    } else if (fr < values[2]) {
      simplex[3] = reflected;
      values[3] = fr;
    } else {
      const Point contracted = blend(fr < values[3] ? -0.5 : 0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, values[3])) {
        simplex[3] = contracted;
        values[3] = fc;
      } else {
        for (int v = 1; v < 4; ++v) {
          for (int d = 0; d < 3; ++d)
            simplex[v][d] = simplex[0][d] + 0.5 * (simplex[v][d] - simplex[0][d]);
          values[v] = f(simplex[v]);
        }
      }
    }
  }
  order();
  return NmResult{simplex[0], values[0], converged, it};
}

}  // namespace

GevFit mle_fit(const Eigen::Ref<const Eigen::VectorXd>& maxima,
               const GevParams& init, const MleOptions& options) {
  const Eigen::Index n = maxima.size();
  if (n < 3) throw std::invalid_argument("MLE needs at least 3 maxima");
  {
    Eigen::VectorXd sorted = maxima;
    std::sort(sorted.data(), sorted.data() + n);
    if (count_distinct(sorted) < 3)
      throw std::runtime_error("degenerate maxima: fewer than 3 distinct values");
  }
  check_params(init);

  const auto objective = [&](const Point& p) -> double {
    if (p[0] <= options.shape_min || p[0] >= options.shape_max) return kInf;
    const double ll = gev_loglik(point_to_params(p), maxima);
    return ll == -kInf ? kInf : -ll;
  };

  GevParams start = init;
  if (gev_loglik(start, maxima) == -kInf ||
      start.shape <= options.shape_min || start.shape >= options.shape_max) {
    // Gumbel moment start: full support, always feasible.
    const double mean = maxima.mean();
    const double sd = std::sqrt((maxima.array() - mean).square().sum() /
                                static_cast<double>(n - 1));
    const double scale = sd * std::sqrt(6.0) / M_PI;
    start = GevParams{0.0, scale, mean - kEulerGamma * scale};
  }
  const double init_loglik = gev_loglik(start, maxima);

  const Point p0{start.shape, std::log(start.scale), start.loc};
  const Point steps{0.1, 0.2, 0.2 * start.scale};
  NmResult first =
      nelder_mead(objective, p0, steps, options.max_iterations, options.tolerance);

  const Point refine_steps{0.02, 0.05, 0.05 * std::exp(first.best[1])};
  NmResult second = nelder_mead(objective, first.best, refine_steps,
                                options.max_iterations, options.tolerance);

  const NmResult& best = second.value <= first.value ? second : first;
  GevFit fit;
  fit.params = point_to_params(best.best);
  fit.loglik = -best.value;
  fit.n_blocks = n;
  fit.converged = second.converged;
  fit.iterations = first.iterations + second.iterations;
  if (fit.loglik < init_loglik) {
    // Optimizer never reports a point below its start.
    fit.params = start;
    fit.loglik = init_loglik;
  }
  return fit;
}

GevParams extrapolate(const GevParams& params, double from_level,
                      double to_level) {
  check_params(params);
  if (!(from_level >= 1.0) || !(to_level >= 1.0))
    throw std::invalid_argument("levels must be >= 1");
  const double r = to_level / from_level;
  if (params.shape == 0.0)
    return GevParams{0.0, params.scale, params.loc + params.scale * std::log(r)};
  const double growth = std::expm1(params.shape * std::log(r));  // r^shape - 1
  return GevParams{params.shape, params.scale * (growth + 1.0),
                   params.loc + params.scale * growth / params.shape};
}

Eigen::Index default_block_size(Eigen::Index n, Eigen::Index m) {
  return std::max<Eigen::Index>(2, std::min(m, n / 20));
}

GevFit fit_max_gev(const Eigen::Ref<const Eigen::VectorXd>& xs, int m,
                   Eigen::Index block_size, const MleOptions& options) {
  if (m < 1) throw std::invalid_argument("horizon m must be >= 1");
  const Eigen::Index n = xs.size();
  if (block_size < 1 || block_size > n)
    throw std::invalid_argument("block size must lie in [1, n]");
  if (n / block_size < 3)
    throw std::invalid_argument("need at least 3 blocks for the GEV fit");
  const Eigen::VectorXd maxima = block_maxima(xs, block_size);
  const GevParams init = pwm_init(maxima);
  GevFit fit = mle_fit(maxima, init, options);
  fit.params = extrapolate(fit.params, static_cast<double>(block_size),
                           static_cast<double>(m));
  return fit;
}

}  // namespace evmix
