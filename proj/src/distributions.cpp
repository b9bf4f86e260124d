#include "evmix/distributions.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "evmix/rng.hpp"
#include "evmix/text.hpp"

namespace evmix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

//! log(1 + exp(y)) without overflow.
double softplus(double y) { return y > 35.0 ? y : std::log1p(std::exp(y)); }

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

//! Continued fraction for the regularized incomplete beta (modified Lentz).
double ibeta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-16) break;
  }
  return h;
}

double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbt = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  const double bt = std::exp(lbt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * ibeta_cf(a, b, x) / a;
  return 1.0 - bt * ibeta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double nu, double x) {
  if (x == 0.0) return 0.5;
  const double z = nu / (nu + x * x);
  const double half_tail = 0.5 * ibeta(0.5 * nu, 0.5, z);
  return x > 0.0 ? 1.0 - half_tail : half_tail;
}

double student_t_pdf(double nu, double x) {
  const double lp = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                    0.5 * std::log(nu * M_PI) -
                    0.5 * (nu + 1.0) * std::log1p(x * x / nu);
  return std::exp(lp);
}

//! Bisect a nondecreasing function to full double precision.
template <class F>
double bisect(F&& f, double lo, double hi, double target) {
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) return mid;
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
}

double student_t_quantile(double nu, double q) {
  if (q == 0.5) return 0.0;
  double lo = -1.0, hi = 1.0;
  while (student_t_cdf(nu, lo) >= q) lo *= 4.0;
  while (student_t_cdf(nu, hi) < q) hi *= 4.0;
  return bisect([nu](double x) { return student_t_cdf(nu, x); }, lo, hi, q);
}

//! Solve x + sin x = s on [0, inf); the left side is nondecreasing.
double von_mises_inverse(double s) {
  if (s <= 0.0) return 0.0;
  double lo = std::max(0.0, s - 1.0);
  double hi = s + 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid + std::sin(mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

void check_probability(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("probability must lie strictly in (0, 1)");
}

}  // namespace

void validate(const DistributionSpec& spec) {
  const auto fail = [](const std::string& msg) {
    throw std::invalid_argument("invalid distribution: " + msg);
  };
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (!(d.ell > 0.0) || !std::isfinite(d.ell)) fail("pareto needs l > 0");
        } else if constexpr (std::is_same_v<T, StudentT>) {
          if (!(d.ell > 0.0) || !std::isfinite(d.ell)) fail("t needs l > 0");
        } else if constexpr (std::is_same_v<T, Burr>) {
          if (!(d.c > 0.0) || !(d.ell > 0.0) || !std::isfinite(d.c) ||
              !std::isfinite(d.ell))
            fail("burr needs c > 0 and l > 0");
        } else if constexpr (std::is_same_v<T, Frechet>) {
          if (!(d.gamma > 0.0) || !std::isfinite(d.gamma))
            fail("frechet needs g > 0");
        } else if constexpr (std::is_same_v<T, Weibull>) {
          if (!(d.kappa > 0.0) || !std::isfinite(d.kappa))
            fail("weibull needs k > 0");
        } else if constexpr (std::is_same_v<T, ReversedBurr>) {
          if (!(d.c < 0.0) || !(d.ell < 0.0) || !std::isfinite(d.c) ||
              !std::isfinite(d.ell))
            fail("revburr needs c < 0 and l < 0");
        }
      },
      spec);
}

double cdf(const DistributionSpec& spec, double x) {
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (x <= 1.0) return 0.0;
          return -std::expm1(-d.ell * std::log(x));
        } else if constexpr (std::is_same_v<T, StudentT>) {
          return student_t_cdf(d.ell, x);
        } else if constexpr (std::is_same_v<T, Burr>) {
          if (x <= 0.0) return 0.0;
          return -std::expm1(-d.ell * softplus(d.c * std::log(x)));
        } else if constexpr (std::is_same_v<T, Frechet>) {
          if (x <= 0.0) return 0.0;
          return std::exp(-std::pow(x, -1.0 / d.gamma));
        } else if constexpr (std::is_same_v<T, Weibull>) {
          if (x <= 0.0) return 0.0;
          return -std::expm1(-std::pow(x, d.kappa));
        } else if constexpr (std::is_same_v<T, ReversedBurr>) {
          if (x >= 0.0) return 1.0;
          return -std::expm1(d.ell * softplus(d.c * std::log(-x)));
        } else {
          if (x <= 0.0) return 0.0;
          return -std::expm1(-x - std::sin(x));
        }
      },
      spec);
}

double pdf(const DistributionSpec& spec, double x) {
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (x < 1.0) return 0.0;
          return d.ell * std::pow(x, -d.ell - 1.0);
        } else if constexpr (std::is_same_v<T, StudentT>) {
          return student_t_pdf(d.ell, x);
        } else if constexpr (std::is_same_v<T, Burr>) {
          if (x <= 0.0) return 0.0;
          const double lx = std::log(x);
          return std::exp(std::log(d.c * d.ell) + (d.c - 1.0) * lx -
                          (d.ell + 1.0) * softplus(d.c * lx));
        } else if constexpr (std::is_same_v<T, Frechet>) {
          if (x <= 0.0) return 0.0;
          const double t = std::pow(x, -1.0 / d.gamma);
          return t / (d.gamma * x) * std::exp(-t);
        } else if constexpr (std::is_same_v<T, Weibull>) {
          if (x < 0.0) return 0.0;
          return d.kappa * std::pow(x, d.kappa - 1.0) *
                 std::exp(-std::pow(x, d.kappa));
        } else if constexpr (std::is_same_v<T, ReversedBurr>) {
          if (x >= 0.0) return 0.0;
          const double lt = std::log(-x);
          return std::exp(std::log(d.c * d.ell) + (d.c - 1.0) * lt +
                          (d.ell - 1.0) * softplus(d.c * lt));
        } else {
          if (x < 0.0) return 0.0;
          return (1.0 + std::cos(x)) * std::exp(-x - std::sin(x));
        }
      },
      spec);
}

double quantile(const DistributionSpec& spec, double q) {
  check_probability(q);
  return std::visit(
      [q](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          return std::exp(-std::log1p(-q) / d.ell);
        } else if constexpr (std::is_same_v<T, StudentT>) {
          return student_t_quantile(d.ell, q);
        } else if constexpr (std::is_same_v<T, Burr>) {
          return std::pow(std::expm1(-std::log1p(-q) / d.ell), 1.0 / d.c);
        } else if constexpr (std::is_same_v<T, Frechet>) {
          return std::pow(-std::log(q), -d.gamma);
        } else if constexpr (std::is_same_v<T, Weibull>) {
          return std::pow(-std::log1p(-q), 1.0 / d.kappa);
        } else if constexpr (std::is_same_v<T, ReversedBurr>) {
          return -std::pow(std::expm1(std::log1p(-q) / d.ell), 1.0 / d.c);
        } else {
          return von_mises_inverse(-std::log1p(-q));
        }
      },
      spec);
}

Sample sample(const DistributionSpec& spec, Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  validate(spec);
  RandomStream stream(seed);
  Eigen::VectorXd values(n);
  if (const auto* t = std::get_if<StudentT>(&spec)) {
    // Student t as Z / sqrt(V / nu), V chi-square with nu degrees of freedom;
    // valid for fractional nu.
    const double nu = t->ell;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = stream.normal();
      const double v = 2.0 * stream.gamma(0.5 * nu);
      values[i] = z / std::sqrt(v / nu);
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      values[i] = quantile(spec, stream.uniform());
  }
  return Sample{std::move(values), SampleMeta{to_string(spec), seed}};
}

double max_cdf(const DistributionSpec& spec, int m, double x) {
  if (m < 1) throw std::invalid_argument("horizon m must be >= 1");
  return std::pow(cdf(spec, x), m);
}

double max_quantile(const DistributionSpec& spec, int m, double q) {
  if (m < 1) throw std::invalid_argument("horizon m must be >= 1");
  check_probability(q);
  return quantile(spec, std::pow(q, 1.0 / m));
}

TailProfile tail_index(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> TailProfile {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          return {1.0 / d.ell};
        } else if constexpr (std::is_same_v<T, StudentT>) {
          return {1.0 / d.ell};
        } else if constexpr (std::is_same_v<T, Burr>) {
          return {1.0 / (d.c * d.ell)};
        } else if constexpr (std::is_same_v<T, Frechet>) {
          return {d.gamma};
        } else if constexpr (std::is_same_v<T, Weibull>) {
          return {0.0};
        } else if constexpr (std::is_same_v<T, ReversedBurr>) {
          return {-1.0 / (d.c * d.ell)};
        } else {
          return {std::nullopt};
        }
      },
      spec);
}

namespace {

std::map<std::string, double> parse_param_list(const std::string& text) {
  std::map<std::string, double> out;
  for (const std::string& item : split(text, ',')) {
    const std::string tok = trim(item);
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("distribution spec: expected key=value, got '" +
                                  tok + "'");
    const std::string key = to_lower(trim(tok.substr(0, eq)));
    if (out.count(key))
      throw std::invalid_argument("distribution spec: duplicate key '" + key +
                                  "'");
    out[key] = parse_number(tok.substr(eq + 1));
  }
  return out;
}

double take_param(std::map<std::string, double>& params, const std::string& key,
                  const std::string& family) {
  const auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("distribution spec: " + family +
                                " is missing key '" + key + "'");
  const double v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

DistributionSpec parse_spec(const std::string& text) {
  const std::string trimmed = trim(text);
  const auto colon = trimmed.find(':');
  const std::string family = to_lower(trim(trimmed.substr(0, colon)));
  std::map<std::string, double> params;
  if (colon != std::string::npos)
    params = parse_param_list(trimmed.substr(colon + 1));

  DistributionSpec spec;
  if (family == "pareto") {
    spec = Pareto{take_param(params, "l", family)};
  } else if (family == "t") {
    spec = StudentT{take_param(params, "l", family)};
  } else if (family == "burr") {
    const double c = take_param(params, "c", family);
    spec = Burr{c, take_param(params, "l", family)};
  } else if (family == "frechet") {
    spec = Frechet{take_param(params, "g", family)};
  } else if (family == "weibull") {
    spec = Weibull{take_param(params, "k", family)};
  } else if (family == "revburr") {
    const double c = take_param(params, "c", family);
    spec = ReversedBurr{c, take_param(params, "l", family)};
  } else if (family == "rvonmises") {
    spec = RVonMises{};
  } else {
    throw std::invalid_argument("distribution spec: unknown family '" + family +
                                "'");
  }
  if (!params.empty())
    throw std::invalid_argument("distribution spec: unexpected key '" +
                                params.begin()->first + "' for " + family);
  validate(spec);
  return spec;
}

std::string family_name(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Pareto>) return "pareto";
        if constexpr (std::is_same_v<T, StudentT>) return "t";
        if constexpr (std::is_same_v<T, Burr>) return "burr";
        if constexpr (std::is_same_v<T, Frechet>) return "frechet";
        if constexpr (std::is_same_v<T, Weibull>) return "weibull";
        if constexpr (std::is_same_v<T, ReversedBurr>) return "revburr";
        return "rvonmises";
      },
      spec);
}

std::string params_string(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Pareto>)
          return "l=" + num_to_string(d.ell);
        else if constexpr (std::is_same_v<T, StudentT>)
          return "l=" + num_to_string(d.ell);
        else if constexpr (std::is_same_v<T, Burr>)
          return "c=" + num_to_string(d.c) + ",l=" + num_to_string(d.ell);
        else if constexpr (std::is_same_v<T, Frechet>)
          return "g=" + num_to_string(d.gamma);
        else if constexpr (std::is_same_v<T, Weibull>)
          return "k=" + num_to_string(d.kappa);
        else if constexpr (std::is_same_v<T, ReversedBurr>)
          return "c=" + num_to_string(d.c) + ",l=" + num_to_string(d.ell);
        else
          return "";
      },
      spec);
}

std::string to_string(const DistributionSpec& spec) {
  const std::string params = params_string(spec);
  std::string out = family_name(spec);
  if (!params.empty()) out += ":" + params;
  return out;
}

}  // namespace evmix
