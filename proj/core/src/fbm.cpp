#include "chaosint/fbm.hpp"

#include <cmath>
#include <string>

#include "chaosint/errors.hpp"
#include "chaosint/kernel.hpp"

namespace chaosint {

void check_hurst(double hurst) {
  if (!(hurst > 0.5 && hurst < 1.0))
    throw DomainError("Hurst parameter " + std::to_string(hurst) + " outside (1/2, 1)");
}

double fbm_c_h(double hurst) {
  check_hurst(hurst);
  const double H = hurst;
  return std::sqrt(2.0 * H * std::tgamma(1.5 - H) / (std::tgamma(H + 0.5) * std::tgamma(2.0 - 2.0 * H)));
}

double fbm_kernel(double hurst, double t, double s) { return FbmKernel(hurst, 1).eval(t, s); }

double fbm_kernel_dt(double hurst, double t, double s) { return FbmKernel(hurst, 1).dt_eval(t, s); }

double fbm_k1(double hurst, double horizon) {
  check_hurst(hurst);
  if (!(horizon > 0.0)) throw DomainError("horizon T must be positive");
  return 2.0 * hurst * std::pow(horizon, 2.0 * hurst - 1.0);
}

double fbm_covariance(double hurst, double t, double s) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2));
}

}  // namespace chaosint
