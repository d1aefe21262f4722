#include "chaosint/covariance.hpp"

#include <cmath>

#include "chaosint/errors.hpp"
#include "chaosint/fbm.hpp"
#include "chaosint/kernel_ops.hpp"

namespace chaosint {

CovarianceFunction brownian_covariance() {
  return {"brownian", [](double t, double s) { return std::min(t, s); }};
}

CovarianceFunction fbm_covariance_function(double hurst) {
  check_hurst(hurst);
  return {"fbm", [hurst](double t, double s) { return fbm_covariance(hurst, t, s); }};
}

CovarianceFunction kernel_covariance(KernelPtr kernel, QuadratureRule rule) {
  std::string name = kernel->name();
  return {std::move(name),
          [kernel = std::move(kernel), rule](double t, double s) { return covariance_from_kernel(*kernel, t, s, rule); }};
}

Eigen::MatrixXd hr_gram(const CovarianceFunction& cov, const std::vector<double>& times, double psd_tolerance) {
  const auto n = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = cov(times[i], times[j]);
      const double w = i == j ? v : cov(times[j], times[i]);
      if (std::abs(v - w) > 1e-12 * std::max(1.0, std::abs(v)))
        throw InvalidCovariance("covariance is not symmetric on the grid");
      g(i, j) = g(j, i) = v;
    }
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    if (lo < -psd_tolerance)
      throw InvalidCovariance("covariance Gram matrix has eigenvalue " + std::to_string(lo));
  }
  return g;
}

Eigen::MatrixXd white_noise_factor(const Eigen::MatrixXd& gram, double drop) {
  if (gram.rows() != gram.cols()) throw DimensionError("white_noise_factor needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const auto& vals = eig.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals[i] >= drop) keep.push_back(i);
  Eigen::MatrixXd l(gram.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    l.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(keep[c]) * std::sqrt(vals[keep[c]]);
  return l;
}

}  // namespace chaosint
