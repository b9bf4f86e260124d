#include "evmix/metrics.hpp"

namespace evmix {

MiseResult mise(const std::function<double(double)>& estimator_cdf,
                const DistributionSpec& spec, int m, Eigen::Index nodes) {
  const double lo = max_quantile(spec, m, 0.1);
  const double hi = max_quantile(spec, m, 0.9);
  const double length = hi - lo;
  const auto squared_error = [&](double x) {
    const double d = estimator_cdf(x) - max_cdf(spec, m, x);
    return d * d;
  };
  MiseResult out;
  out.value = simpson(squared_error, lo, hi, nodes) / length;
  out.window_lo = lo;
  out.window_hi = hi;
  out.nodes = nodes;
  return out;
}

}  // namespace evmix
