#pragma once

#include <vector>

#include "chaosint/basis.hpp"
#include "chaosint/quadrature.hpp"

namespace chaosint {

/// Step function f = sum_i a_i (chi_{s_{i+1}} - chi_{s_i}): value a_i on the
/// half-open cell (s_i, s_{i+1}], zero outside (s_0, s_N].
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);
  /// chi_t on [0, t] (one cell with value 1).
  static StepFunction indicator(double t) { return StepFunction({0.0, t}, {1.0}); }
  /// Piecewise-constant sampling of f at cell midpoints of a uniform grid on [0, T].
  static StepFunction sample_midpoints(const RealFunction& f, double horizon, int cells);

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t cells() const noexcept { return values_.size(); }

  double operator()(double s) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// (f, g) = int_0^T f g by quadrature.
double inner_product(const RealFunction& f, const RealFunction& g, double horizon,
                     const QuadratureRule& rule = {});

/// (f chi_t, m_k) = int_0^t f(s) m_k(s) ds.
double localize_coeff(const RealFunction& f, double t, unsigned k, const BasisFamily& basis,
                      const QuadratureRule& rule = {});

/// Matrix G_{kj}(t) = (m_k chi_t, m_j), k, j = 1..K, row-major K x K.
std::vector<double> localization_gram(const BasisFamily& basis, unsigned modes, double t,
                                      const QuadratureRule& rule = {});

}  // namespace chaosint
