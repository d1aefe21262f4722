#pragma once

#include <vector>

#include "chaosint/basis.hpp"
#include "chaosint/function_space.hpp"
#include "chaosint/kernel.hpp"
#include "chaosint/quadrature.hpp"

namespace chaosint {

/// K* applied to a step function through the telescoped step formula:
/// on (s_i, s_{i+1}] the value is a_i K(s_{i+1}, s) + sum_{k>i} a_k (K(s_{k+1}, s) - K(s_k, s)),
/// and 0 beyond the last breakpoint. Requires an adapted kernel.
RealFunction kstar_apply_step(KernelPtr kernel, const StepFunction& f);

/// (K* f)(s) = K(s+, s) f(s) + int_s^T f(t) dK/dt(t, s) dt.
/// Throws UnsupportedKernel when the kernel has no t-derivative.
RealFunction kstar_apply(KernelPtr kernel, RealFunction f, double horizon,
                         QuadratureRule rule = QuadratureRule::singular());

/// int_0^t K(T, s) dK/dt(t, s) ds for one t.
double k1_integral(const Kernel& kernel, double horizon, double t,
                   const QuadratureRule& rule = QuadratureRule::singular(4, 12, 16));

/// sup over 0 < t <= T of k1_integral: a uniform grid of `grid` points, then
/// local doubling around the maximiser until the value changes by less than 1e-6.
double k1_empirical(const Kernel& kernel, double horizon, int grid = 256);

/// sqrt(2 (K0^2 + K1)) if K0 > 0, else sqrt(K1).
double op_norm_bound(double k0, double k1);

/// Largest singular value of K* discretised on n_grid cells of [0, T] with
/// the orthonormal cell indicators; power iteration on A^T A to 1e-8.
double op_norm_estimate(const Kernel& kernel, double horizon, int n_grid);

/// int_0^{min(t,s)} K(t, r) K(s, r) dr.
double covariance_from_kernel(const Kernel& kernel, double t, double s,
                              const QuadratureRule& rule = QuadratureRule::singular());

/// M~_k(t) = int_0^T K(t, s) m_k(s) ds.
double m_tilde(const Kernel& kernel, const BasisFamily& basis, unsigned k, double t,
               const QuadratureRule& rule = QuadratureRule::singular());

/// Table M~_k(t_i) for k = 1..modes, rows indexed by time. Kernel values are
/// computed once per time and shared across modes.
std::vector<std::vector<double>> m_tilde_table(const Kernel& kernel, const BasisFamily& basis, unsigned modes,
                                               const std::vector<double>& times,
                                               const QuadratureRule& rule = QuadratureRule::singular());

}  // namespace chaosint
