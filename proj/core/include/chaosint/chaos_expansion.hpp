#pragma once

#include <map>
#include <span>

#include "chaosint/multi_index.hpp"

namespace chaosint {

/// A square-integrable random variable sum_alpha c_alpha xi_alpha on a truncated
/// chaos space. Absent coefficients are zero; keys always lie in the truncation.
class ChaosExpansion {
 public:
  using Map = std::map<MultiIndex, double, GradedLess>;

  explicit ChaosExpansion(Truncation trunc) : trunc_(trunc) {}
  static ChaosExpansion constant(Truncation trunc, double c);

  const Truncation& truncation() const noexcept { return trunc_; }
  const Map& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  double coeff(const MultiIndex& a) const;
  /// Throws ConfigError if `a` lies outside the truncation. Setting zero erases.
  void set(const MultiIndex& a, double value);
  void add(const MultiIndex& a, double value);

  double mean() const { return coeff(MultiIndex{}); }
  double norm_sq() const;

  /// Same coefficients on a truncation that contains every key.
  ChaosExpansion retruncated(const Truncation& trunc) const;

  ChaosExpansion& operator+=(const ChaosExpansion& other);
  ChaosExpansion& operator-=(const ChaosExpansion& other);
  ChaosExpansion& operator*=(double c);

  friend ChaosExpansion operator+(ChaosExpansion a, const ChaosExpansion& b) { return a += b; }
  friend ChaosExpansion operator-(ChaosExpansion a, const ChaosExpansion& b) { return a -= b; }
  friend ChaosExpansion operator*(ChaosExpansion a, double c) { return a *= c; }
  friend ChaosExpansion operator*(double c, ChaosExpansion a) { return a *= c; }

 private:
  Truncation trunc_;
  Map coeffs_;
};

/// Largest coefficient-wise difference over the union of keys.
double max_abs_diff(const ChaosExpansion& a, const ChaosExpansion& b);

/// E[F G] = sum_alpha F_alpha G_alpha (the truncations may differ).
double chaos_inner(const ChaosExpansion& f, const ChaosExpansion& g);

/// xi_alpha(z) = prod_k H_{alpha_k}(z_k) / sqrt(alpha_k!), z[0] holding z_1.
double xi_alpha_eval(const MultiIndex& a, std::span<const double> z);

/// sum_alpha F_alpha xi_alpha(z); requires z.size() >= K.
double chaos_eval(const ChaosExpansion& f, std::span<const double> z);

/// Repeated evaluation of one expansion at many points z. Dense expansions are
/// laid out along the nested sums over alpha_1, ..., alpha_K so one evaluation
/// costs about one multiply-add per index; sparse ones keep the coefficient list.
class ChaosEvaluator {
 public:
  explicit ChaosEvaluator(const ChaosExpansion& f);
  double operator()(std::span<const double> z) const;

 private:
  double nested(std::uint32_t level, std::uint32_t budget, std::size_t& pos,
                const std::vector<std::vector<double>>& h) const;

  Truncation trunc_;
  bool dense_ = false;
  std::vector<double> values_;
  std::vector<std::vector<MultiIndex::Entry>> entries_;
};

/// sqrt((alpha+beta)! / (alpha! beta!)), the structure constant of the Wick product.
double wick_weight(const MultiIndex& a, const MultiIndex& b);

struct WickResult {
  ChaosExpansion product;
  /// Sum of squares of the output coefficients above the truncation order.
  double dropped_mass = 0.0;
};

/// F <> G on the common truncation; terms above order N are dropped and their
/// squared mass reported.
WickResult wick_product(const ChaosExpansion& f, const ChaosExpansion& g);

/// Truncation of the Wick exponential of sum_k c_k xi_k: coefficients c^alpha / sqrt(alpha!).
ChaosExpansion wick_exp_first_chaos(std::span<const double> c, const Truncation& trunc);

/// Ordinary (pointwise) product F G, exact on the truncation (K, N_F + N_G),
/// via the Hermite linearization H_a H_b = sum_r r! C(a,r) C(b,r) H_{a+b-2r}.
ChaosExpansion chaos_product(const ChaosExpansion& f, const ChaosExpansion& g);

}  // namespace chaosint
