#include "evmix/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evmix/text.hpp"

namespace evmix {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kInvSqrtPi = 0.56418958354775628695;

void check_sample(const Eigen::Ref<const Eigen::VectorXd>& xs) {
  if (xs.size() == 0) throw std::invalid_argument("empty sample");
}

void check_bandwidth(double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("bandwidth must be positive and finite");
}

//! Interior quantile of a sorted vector (linear interpolation).
double sorted_quantile(const Eigen::VectorXd& sorted, double p) {
  const Eigen::Index n = sorted.size();
  const double pos = p * static_cast<double>(n - 1);
  const auto lo = static_cast<Eigen::Index>(std::floor(pos));
  const auto hi = std::min(lo + 1, n - 1);
  const double w = pos - static_cast<double>(lo);
  return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

}  // namespace

Kernel parse_kernel(const std::string& name) {
  const std::string t = to_lower(trim(name));
  if (t == "gaussian") return Kernel::gaussian;
  if (t == "epanechnikov") return Kernel::epanechnikov;
  throw std::invalid_argument("unknown kernel '" + name + "'");
}

std::string to_string(Kernel kernel) {
  return kernel == Kernel::gaussian ? "gaussian" : "epanechnikov";
}

double kernel_density(Kernel kernel, double u) {
  if (kernel == Kernel::gaussian)
    return kInvSqrt2Pi * std::exp(-0.5 * u * u);
  if (u <= -1.0 || u >= 1.0) return 0.0;
  return 0.75 * (1.0 - u * u);
}

double kernel_integral(Kernel kernel, double u) {
  if (kernel == Kernel::gaussian) return 0.5 * std::erfc(-u / kSqrt2);
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return 0.25 * (2.0 + 3.0 * u - u * u * u);
}

double kernel_psi(Kernel kernel) {
  return kernel == Kernel::gaussian ? kInvSqrtPi : 9.0 / 35.0;
}

double kernel_second_moment(Kernel kernel) {
  return kernel == Kernel::gaussian ? 1.0 : 0.2;
}

double kcdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
            Kernel kernel, double x) {
  check_sample(xs);
  check_bandwidth(h);
  return ((x - xs.array()) / h)
      .unaryExpr([kernel](double u) { return kernel_integral(kernel, u); })
      .mean();
}

double kpdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
            Kernel kernel, double x) {
  check_sample(xs);
  check_bandwidth(h);
  return ((x - xs.array()) / h)
             .unaryExpr([kernel](double u) { return kernel_density(kernel, u); })
             .mean() /
         h;
}

double np_max_cdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
                  Kernel kernel, int m, double x) {
  if (m < 1) throw std::invalid_argument("horizon m must be >= 1");
  return std::pow(kcdf(xs, h, kernel, x), m);
}

double np_max_pdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
                  Kernel kernel, int m, double x) {
  if (m < 1) throw std::invalid_argument("horizon m must be >= 1");
  const double f = kcdf(xs, h, kernel, x);
  return m * std::pow(f, m - 1) * kpdf(xs, h, kernel, x);
}

double loo_kcdf(const Eigen::Ref<const Eigen::VectorXd>& xs,
                Eigen::Index drop_index, double h, Kernel kernel, double x) {
  const Eigen::Index n = xs.size();
  if (n < 2) throw std::invalid_argument("leave-one-out needs n >= 2");
  if (drop_index < 0 || drop_index >= n)
    throw std::invalid_argument("drop index out of range");
  check_bandwidth(h);
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == drop_index) continue;
    sum += kernel_integral(kernel, (x - xs[j]) / h);
  }
  return sum / static_cast<double>(n - 1);
}

double robust_scale(const Eigen::Ref<const Eigen::VectorXd>& xs) {
  const Eigen::Index n = xs.size();
  if (n < 2) throw std::invalid_argument("scale needs n >= 2");
  const double mean = xs.mean();
  const double sd =
      std::sqrt((xs.array() - mean).square().sum() / static_cast<double>(n - 1));
  Eigen::VectorXd sorted = xs;
  std::sort(sorted.data(), sorted.data() + n);
  const double iqr =
      sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  double scale = sd;
  if (iqr > 0.0) scale = std::min(sd, iqr / 1.349);
  if (!(scale > 0.0))
    throw std::runtime_error("degenerate sample: zero spread");
  return scale;
}

double density_derivative_roughness(
    const Eigen::Ref<const Eigen::VectorXd>& xs) {
  const Eigen::Index n = xs.size();
  if (n < 4) throw std::invalid_argument("pilot roughness needs n >= 4");
  const double scale = robust_scale(xs);
  const double lambda =
      1.06 * scale * std::pow(static_cast<double>(n), -0.2);

  const double lo = xs.minCoeff() - 8.0 * lambda;
  const double hi = xs.maxCoeff() + 8.0 * lambda;
  const Eigen::Index nodes = 2049;
  const double step = (hi - lo) / static_cast<double>(nodes - 1);

  // Squared derivative of the Gaussian pilot density estimate, composite
  // Simpson over the padded data range.
  const auto deriv_sq = [&](double x) {
    const double sum =
        ((x - xs.array()) / lambda)
            .unaryExpr([](double u) {
              return -u * kInvSqrt2Pi * std::exp(-0.5 * u * u);
            })
            .sum();
    const double d = sum / (static_cast<double>(n) * lambda * lambda);
    return d * d;
  };

  double acc = deriv_sq(lo) + deriv_sq(hi);
  for (Eigen::Index i = 1; i < nodes - 1; ++i) {
    const double x = lo + step * static_cast<double>(i);
    acc += deriv_sq(x) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  const double value = acc * step / 3.0;
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::runtime_error("pilot roughness estimate is degenerate");
  return value;
}

double plugin_bandwidth_for_roughness(Eigen::Index n, Kernel kernel,
                                      double roughness) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(roughness > 0.0))
    throw std::invalid_argument("roughness must be positive");
  const double r2 = kernel_second_moment(kernel);
  const double base = kernel_psi(kernel) / (r2 * r2 * roughness);
  return std::cbrt(base / static_cast<double>(n));
}

double plugin_bandwidth(const Eigen::Ref<const Eigen::VectorXd>& xs,
                        Kernel kernel) {
  const Eigen::Index n = xs.size();
  if (n < 4) throw std::invalid_argument("plug-in bandwidth needs n >= 4");
  return plugin_bandwidth_for_roughness(n, kernel,
                                        density_derivative_roughness(xs));
}

}  // namespace evmix
