#pragma once

namespace chaosint {

/// C_H = (2H Gamma(3/2 - H) / (Gamma(H + 1/2) Gamma(2 - 2H)))^{1/2}.
double fbm_c_h(double hurst);

/// Volterra kernel of fBm and its t-derivative (see FbmKernel).
double fbm_kernel(double hurst, double t, double s);
double fbm_kernel_dt(double hurst, double t, double s);

/// Analytic bound K_1(T) = H (2H - 1) Gamma(H - 1/2) / Gamma(H + 1/2) T^{2H-1}.
/// Since Gamma(H + 1/2) = (H - 1/2) Gamma(H - 1/2) this equals 2H T^{2H-1}.
double fbm_k1(double hurst, double horizon);

/// E[W^H(t) W^H(s)] = (t^{2H} + s^{2H} - |t - s|^{2H}) / 2.
double fbm_covariance(double hurst, double t, double s);

/// Throws DomainError unless 1/2 < H < 1.
void check_hurst(double hurst);

}  // namespace chaosint
