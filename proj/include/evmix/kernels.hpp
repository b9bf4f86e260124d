#pragma once

#include <Eigen/Core>
#include <string>

namespace evmix {

enum class Kernel { gaussian, epanechnikov };

Kernel parse_kernel(const std::string& name);
std::string to_string(Kernel kernel);

//! Kernel density k(u); symmetric, integrates to 1.
double kernel_density(Kernel kernel, double u);

//! Integrated kernel K(u) = int_{-inf}^{u} k.
double kernel_integral(Kernel kernel, double u);

//! 2 int u k(u) K(u) du (1/sqrt(pi) for Gaussian, 9/35 for Epanechnikov).
double kernel_psi(Kernel kernel);

//! int u^2 k(u) du (1 for Gaussian, 1/5 for Epanechnikov).
double kernel_second_moment(Kernel kernel);

//! Smoothed distribution estimator: mean of K((x - X_i) / h).
double kcdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
            Kernel kernel, double x);

//! Kernel density estimator: mean of k((x - X_i) / h) / h.
double kpdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
            Kernel kernel, double x);

//! Plug-in estimate of the CDF of the maximum of m draws: kcdf^m.
double np_max_cdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
                  Kernel kernel, int m, double x);

//! Derivative of np_max_cdf: m * kcdf^(m-1) * kpdf.
double np_max_pdf(const Eigen::Ref<const Eigen::VectorXd>& xs, double h,
                  Kernel kernel, int m, double x);

//! kcdf over the sample with entry `drop_index` removed.
double loo_kcdf(const Eigen::Ref<const Eigen::VectorXd>& xs,
                Eigen::Index drop_index, double h, Kernel kernel, double x);

//! min(sample sd, IQR / 1.349); falls back to the sd when the IQR is zero.
double robust_scale(const Eigen::Ref<const Eigen::VectorXd>& xs);

//! Pilot estimate of int (f')^2 by quadrature of the squared derivative of a
//! Gaussian kernel density estimate with bandwidth 1.06 * scale * n^(-1/5).
double density_derivative_roughness(const Eigen::Ref<const Eigen::VectorXd>& xs);

//! Bandwidth from the asymptotic MISE expansion of the smoothed distribution
//! estimator: (psi / (R2^2 * roughness))^(1/3) * n^(-1/3).
double plugin_bandwidth_for_roughness(Eigen::Index n, Kernel kernel,
                                      double roughness);

//! Plug-in bandwidth with the pilot roughness estimated from the sample.
double plugin_bandwidth(const Eigen::Ref<const Eigen::VectorXd>& xs,
                        Kernel kernel);

}  // namespace evmix
