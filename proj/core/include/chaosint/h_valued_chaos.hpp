#pragma once

#include <map>
#include <span>
#include <vector>

#include "chaosint/chaos_expansion.hpp"
#include "chaosint/multi_index.hpp"

namespace chaosint {

/// An H-valued random element eta = sum_alpha eta_alpha xi_alpha with
/// eta_alpha = sum_k eta_{alpha,k} m_k. Rows are dense over the K modes.
///
/// The basis m_k is not stored; operations that need it take it explicitly.
class HValuedChaos {
 public:
  using Row = std::vector<double>;
  using Map = std::map<MultiIndex, Row, GradedLess>;

  explicit HValuedChaos(Truncation trunc) : trunc_(trunc) {}

  /// Non-random integrand f = sum_k f_k m_k (only the zero-index row).
  static HValuedChaos deterministic(Truncation trunc, std::span<const double> f);

  const Truncation& truncation() const noexcept { return trunc_; }
  const Map& rows() const noexcept { return rows_; }

  /// eta_{alpha,k} with k 1-based.
  double coeff(const MultiIndex& a, std::uint32_t k) const;
  void set(const MultiIndex& a, std::uint32_t k, double value);
  void add(const MultiIndex& a, std::uint32_t k, double value);
  /// Row of alpha, or nullptr when absent.
  const Row* row(const MultiIndex& a) const;
  void set_row(const MultiIndex& a, Row row);

  /// sum_{alpha,k} eta_{alpha,k}^2.
  double norm_sq() const;
  /// True when every row other than the zero index vanishes.
  bool is_deterministic() const;

  HValuedChaos& operator+=(const HValuedChaos& other);
  HValuedChaos& operator*=(double c);
  friend HValuedChaos operator+(HValuedChaos a, const HValuedChaos& b) { return a += b; }
  friend HValuedChaos operator*(double c, HValuedChaos a) { return a *= c; }

 private:
  void check(const MultiIndex& a, std::uint32_t k) const;

  Truncation trunc_;
  Map rows_;
};

/// D F = sum_{beta,k} sqrt(beta_k + 1) F_{beta+eps_k} xi_beta m_k.
HValuedChaos malliavin_derivative(const ChaosExpansion& f);

}  // namespace chaosint
