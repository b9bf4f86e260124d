#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace evmix {

// Data-generating families. Parameterizations chosen so the extreme-value
// index comes out as 1/ell, 1/(c*ell), gamma, 0 and -1/(c*ell) respectively.
struct Pareto {
  double ell;  // F(x) = 1 - x^(-ell) for x >= 1, ell > 0
  bool operator==(const Pareto&) const = default;
};
struct StudentT {
  double ell;  // t distribution with ell > 0 degrees of freedom
  bool operator==(const StudentT&) const = default;
};
struct Burr {
  double c;    // F(x) = 1 - (1 + x^c)^(-ell) for x > 0, c > 0, ell > 0
  double ell;
  bool operator==(const Burr&) const = default;
};
struct Frechet {
  double gamma;  // F(x) = exp(-x^(-1/gamma)) for x > 0, gamma > 0
  bool operator==(const Frechet&) const = default;
};
struct Weibull {
  double kappa;  // F(x) = 1 - exp(-x^kappa) for x >= 0, kappa > 0
  bool operator==(const Weibull&) const = default;
};
struct ReversedBurr {
  double c;    // F(x) = 1 - (1 + (-x)^c)^ell for x < 0, c < 0, ell < 0
  double ell;  // right endpoint 0
  bool operator==(const ReversedBurr&) const = default;
};
struct RVonMises {
  // 1 - F(x) = exp(-x - sin x) for x > 0; lies outside every maximum
  // domain of attraction.
  bool operator==(const RVonMises&) const = default;
};

using DistributionSpec = std::variant<Pareto, StudentT, Burr, Frechet, Weibull,
                                      ReversedBurr, RVonMises>;

//! Provenance of a generated sample; `seed` is empty for external data.
struct SampleMeta {
  std::string source;
  std::optional<std::uint64_t> seed;
};

struct Sample {
  Eigen::VectorXd values;
  SampleMeta meta;
};

//! Extreme-value index; empty when the family lies outside every maximum
//! domain of attraction.
struct TailProfile {
  std::optional<double> gamma;
};

//! Throws std::invalid_argument when the parameters violate the family's
//! constraints.
void validate(const DistributionSpec& spec);

double cdf(const DistributionSpec& spec, double x);
double pdf(const DistributionSpec& spec, double x);

//! Inverse CDF; q must lie strictly inside (0, 1). Closed form where the
//! family admits one, monotone bisection otherwise (tolerance 1e-12).
double quantile(const DistributionSpec& spec, double q);

//! n i.i.d. draws by inverse transform (Student t by the normal/chi-square
//! ratio). Deterministic in (spec, n, seed).
Sample sample(const DistributionSpec& spec, Eigen::Index n, std::uint64_t seed);

//! CDF of the maximum of m future draws: F(x)^m.
double max_cdf(const DistributionSpec& spec, int m, double x);

//! q-th quantile of the maximum of m draws: F^{-1}(q^{1/m}).
double max_quantile(const DistributionSpec& spec, int m, double q);

TailProfile tail_index(const DistributionSpec& spec);

//! Parse "pareto:l=1", "burr:c=0.5,l=0.5", "revburr:c=-1,l=-2", "t:l=3",
//! "frechet:g=2", "weibull:k=10" or "rvonmises". Keys are case-insensitive;
//! errors name the offending token.
DistributionSpec parse_spec(const std::string& text);

//! Canonical spec string (lowercase, fixed key order).
std::string to_string(const DistributionSpec& spec);

std::string family_name(const DistributionSpec& spec);
std::string params_string(const DistributionSpec& spec);

}  // namespace evmix
