#pragma once

#include <Eigen/Core>
#include <functional>
#include <stdexcept>

#include "evmix/distributions.hpp"

namespace evmix {

//! Composite Simpson rule with an odd number of nodes (>= 3).
template <class F>
double simpson(F&& f, double lo, double hi, Eigen::Index nodes) {
  if (nodes < 3 || nodes % 2 == 0)
    throw std::invalid_argument("Simpson rule needs an odd node count >= 3");
  if (!(lo <= hi)) throw std::invalid_argument("integration bounds reversed");
  if (lo == hi) return 0.0;
  const double step = (hi - lo) / static_cast<double>(nodes - 1);
  double acc = f(lo) + f(hi);
  for (Eigen::Index i = 1; i < nodes - 1; ++i)
    acc += f(lo + step * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * step / 3.0;
}

//! Normalized integrated squared error of a CDF estimate against the true
//! m-fold maximum distribution, taken between its 10th and 90th quantiles
//! and divided by the window length. Always lies in [0, 1].
struct MiseResult {
  double value = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  Eigen::Index nodes = 0;
};

MiseResult mise(const std::function<double(double)>& estimator_cdf,
                const DistributionSpec& spec, int m, Eigen::Index nodes = 2049);

}  // namespace evmix
