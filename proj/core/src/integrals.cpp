#include "chaosint/integrals.hpp"

#include <cmath>

#include "chaosint/errors.hpp"
#include "chaosint/function_space.hpp"
#include "parallel.hpp"

namespace chaosint {

ChaosExpansion ito_integral(const HValuedChaos& eta) {
  const Truncation& tr = eta.truncation();
  ChaosExpansion out(tr.with_order(tr.max_order + 1));
  for (const auto& [alpha, row] : eta.rows())
    for (std::uint32_t k = 1; k <= tr.modes; ++k) {
      const double v = row[k - 1];
      if (v != 0.0) out.add(mi_add_eps(alpha, k), std::sqrt(alpha.at(k) + 1.0) * v);
    }
  return out;
}

ChaosExpansion malliavin_trace(const HValuedChaos& eta) {
  const Truncation& tr = eta.truncation();
  ChaosExpansion out(tr);
  for (const auto& [alpha, row] : eta.rows())
    for (const auto& [k, n] : alpha.entries()) {
      if (k > tr.modes) continue;
      const double v = row[k - 1];
      if (v != 0.0) out.add(*mi_sub_eps(alpha, k), std::sqrt(static_cast<double>(n)) * v);
    }
  return out;
}

ChaosExpansion strat_integral(const HValuedChaos& eta) {
  const Truncation& tr = eta.truncation();
  ChaosExpansion out(tr.with_order(tr.max_order + 1));
  for (const auto& [alpha, row] : eta.rows())
    for (std::uint32_t k = 1; k <= tr.modes; ++k) {
      const double v = row[k - 1];
      if (v == 0.0) continue;
      const std::uint32_t n = alpha.at(k);
      out.add(mi_add_eps(alpha, k), std::sqrt(n + 1.0) * v);
      if (n > 0) out.add(*mi_sub_eps(alpha, k), std::sqrt(static_cast<double>(n)) * v);
    }
  return out;
}

ChaosExpansion strat_via_trace(const HValuedChaos& eta) {
  ChaosExpansion out = ito_integral(eta);
  out += malliavin_trace(eta).retruncated(out.truncation());
  return out;
}

namespace {

HValuedChaos apply_right(const HValuedChaos& eta, const std::vector<double>& g) {
  const unsigned K = eta.truncation().modes;
  HValuedChaos out(eta.truncation());
  for (const auto& [alpha, row] : eta.rows()) {
    HValuedChaos::Row next(K, 0.0);
    for (unsigned k = 0; k < K; ++k) {
      if (row[k] == 0.0) continue;
      for (unsigned j = 0; j < K; ++j) next[j] += row[k] * g[k * K + j];
    }
    out.set_row(alpha, std::move(next));
  }
  return out;
}

}  // namespace

HValuedChaos localize_integrand(const HValuedChaos& eta, double t, const BasisFamily& basis,
                                const QuadratureRule& rule) {
  if (t < 0.0 || t > basis.horizon()) throw DomainError("localize_integrand: t outside [0, T]");
  if (t == basis.horizon()) return eta;
  if (t == 0.0) return HValuedChaos(eta.truncation());
  return apply_right(eta, localization_gram(basis, eta.truncation().modes, t, rule));
}

const std::vector<double>& LocalizationCache::gram(double t) {
  std::lock_guard lock(mutex_);
  auto it = grams_.find(t);
  if (it == grams_.end()) it = grams_.emplace(t, localization_gram(basis_, modes_, t, rule_)).first;
  return it->second;
}

HValuedChaos LocalizationCache::localize(const HValuedChaos& eta, double t) {
  if (eta.truncation().modes != modes_) throw DimensionError("localization cache built for a different K");
  if (t < 0.0 || t > basis_.horizon()) throw DomainError("localize: t outside [0, T]");
  if (t == basis_.horizon()) return eta;
  if (t == 0.0) return HValuedChaos(eta.truncation());
  return apply_right(eta, gram(t));
}

std::vector<double> field_projection(const Kernel& kernel, const BasisFamily& basis, unsigned modes) {
  const unsigned K = modes;
  std::vector<double> p(static_cast<std::size_t>(K) * K, 0.0);
  if (dynamic_cast<const BrownianKernel*>(&kernel)) {
    for (unsigned k = 0; k < K; ++k) p[k * K + k] = 1.0;
    return p;
  }
  if (!kernel.has_derivative()) throw UnsupportedKernel("kernel '" + kernel.name() + "' provides no t-derivative");
  // (K m_k)(t) may behave like a power of t at the origin: grade toward 0.
  QuadratureRule rule = QuadratureRule::composite(8, 16);
  rule.grading_levels = 24;
  const NodeRule pts = quadrature_points(0.0, basis.horizon(), rule);
  std::vector<std::vector<double>> mt(pts.nodes.size(), std::vector<double>(K));
  detail::parallel_for(pts.nodes.size(), [&](std::size_t q) {
    for (unsigned k = 1; k <= K; ++k)
      mt[q][k - 1] = kernel.adjoint_apply([&](double s) { return basis.eval(k, s); }, pts.nodes[q]);
  });
  for (std::size_t q = 0; q < pts.nodes.size(); ++q)
    for (unsigned j = 1; j <= K; ++j) {
      const double wm = pts.weights[q] * basis.eval(j, pts.nodes[q]);
      for (unsigned k = 0; k < K; ++k) p[(j - 1) * K + k] += wm * mt[q][k];
    }
  return p;
}

ChaosExpansion field_ito_integral(const HValuedChaos& eta, const Kernel& kernel, const BasisFamily& basis) {
  if (dynamic_cast<const BrownianKernel*>(&kernel)) return ito_integral(eta);
  return ito_integral(apply_right(eta, field_projection(kernel, basis, eta.truncation().modes)));
}

AdmissibilityReport admissibility_diagnostic(const HValuedChaos& eta) {
  AdmissibilityReport rep;
  double total = 0.0;
  double top = 0.0;
  for (const auto& [alpha, row] : eta.rows()) {
    double mass = 0.0;
    for (double v : row) mass += v * v;
    rep.weighted_norm += alpha.order() * mass;
    total += mass;
    if (alpha.order() == eta.truncation().max_order) top += mass;
  }
  rep.tail_ratio = total > 0.0 ? top / total : 0.0;
  return rep;
}

HValuedChaos brownian_path_integrand(const BasisFamily& basis, const Truncation& trunc) {
  if (trunc.max_order < 1) throw ConfigError("the Brownian path integrand needs max_order >= 1");
  const unsigned K = trunc.modes;
  const double T = basis.horizon();
  HValuedChaos eta(trunc);
  for (unsigned k = 1; k <= K; ++k) {
    HValuedChaos::Row row(K);
    for (unsigned j = 1; j <= K; ++j)
      row[j - 1] = integrate([&](double t) { return basis.antideriv(k, t) * basis.eval(j, t); }, 0.0, T);
    eta.set_row(MultiIndex::unit(k), std::move(row));
  }
  return eta;
}

}  // namespace chaosint
