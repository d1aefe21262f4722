#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "chaosint/basis.hpp"
#include "chaosint/chaos_expansion.hpp"
#include "chaosint/h_valued_chaos.hpp"
#include "chaosint/kernel.hpp"
#include "chaosint/quadrature.hpp"

namespace chaosint {

/// Ito-Skorokhod integral: coefficient at alpha is sum_k sqrt(alpha_k) eta_{alpha-eps_k, k}.
/// The result lives on (K, N + 1).
ChaosExpansion ito_integral(const HValuedChaos& eta);

/// Stratonovich integral: adds sqrt(alpha_k + 1) eta_{alpha+eps_k, k} to the Ito
/// coefficients. The result lives on (K, N + 1) like the Ito integral.
ChaosExpansion strat_integral(const HValuedChaos& eta);

/// sum_alpha (eta_alpha, D xi_alpha): coefficient at beta is
/// sum_k sqrt(beta_k + 1) eta_{beta+eps_k, k}. Lives on (K, N).
ChaosExpansion malliavin_trace(const HValuedChaos& eta);

/// ito_integral(eta) + malliavin_trace(eta).
ChaosExpansion strat_via_trace(const HValuedChaos& eta);

/// eta chi_t expressed in the basis: eta'_{alpha,j} = sum_k eta_{alpha,k} (m_k chi_t, m_j).
HValuedChaos localize_integrand(const HValuedChaos& eta, double t, const BasisFamily& basis,
                                const QuadratureRule& rule = {});

/// Localization Gram matrices (m_k chi_t, m_j) memoised per t. Thread-safe.
class LocalizationCache {
 public:
  LocalizationCache(BasisFamily basis, unsigned modes, QuadratureRule rule = {})
      : basis_(basis), modes_(modes), rule_(rule) {}

  const std::vector<double>& gram(double t);
  HValuedChaos localize(const HValuedChaos& eta, double t);

 private:
  BasisFamily basis_;
  unsigned modes_;
  QuadratureRule rule_;
  std::mutex mutex_;
  std::map<double, std::vector<double>> grams_;
};

/// P_jk = int_0^T m_j(t) (K m_k)(t) dt, row-major modes x modes, so that
/// the basis coefficients of K* eta_alpha are sum_j eta_{alpha,j} P_jk.
std::vector<double> field_projection(const Kernel& kernel, const BasisFamily& basis, unsigned modes);

/// X-integral B(K* eta): applies K* to every row and then takes the Ito integral.
ChaosExpansion field_ito_integral(const HValuedChaos& eta, const Kernel& kernel, const BasisFamily& basis);

struct AdmissibilityReport {
  /// sum_alpha |alpha| ||eta_alpha||^2
  double weighted_norm = 0.0;
  /// mass of the top order shell relative to the total mass (0 for eta = 0)
  double tail_ratio = 0.0;
};

AdmissibilityReport admissibility_diagnostic(const HValuedChaos& eta);

/// The truncated Brownian path W_K(t) = sum_k M_k(t) xi_{eps_k} as an integrand:
/// eta_{eps_k, j} = (M_k, m_j). Requires max_order >= 1.
HValuedChaos brownian_path_integrand(const BasisFamily& basis, const Truncation& trunc);

}  // namespace chaosint
