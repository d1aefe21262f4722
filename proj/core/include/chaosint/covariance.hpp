#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "chaosint/kernel.hpp"

namespace chaosint {

/// Symmetric positive-semidefinite R(t, s) = E[X(t) X(s)].
struct CovarianceFunction {
  std::string name;
  std::function<double(double, double)> r;

  double operator()(double t, double s) const { return r(t, s); }
};

CovarianceFunction brownian_covariance();
CovarianceFunction fbm_covariance_function(double hurst);
/// R(t, s) = int K(t, r) K(s, r) dr by quadrature.
CovarianceFunction kernel_covariance(KernelPtr kernel, QuadratureRule rule = QuadratureRule::singular());

/// G_ij = R(t_i, t_j). Throws InvalidCovariance when the smallest eigenvalue
/// is below -psd_tolerance or R is not symmetric on the grid.
Eigen::MatrixXd hr_gram(const CovarianceFunction& cov, const std::vector<double>& times,
                        double psd_tolerance = 1e-10);

/// L with L L^T = G, built from the eigendecomposition of G with eigenvalues
/// below `drop` discarded (so degenerate covariances are accepted). Columns of
/// L correspond to the retained eigenvalues.
Eigen::MatrixXd white_noise_factor(const Eigen::MatrixXd& gram, double drop = 1e-12);

}  // namespace chaosint
