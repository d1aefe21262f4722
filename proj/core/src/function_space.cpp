#include "chaosint/function_space.hpp"

#include <algorithm>

#include "chaosint/errors.hpp"

namespace chaosint {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size())
    throw DimensionError("step function needs N+1 breakpoints and N values");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] > breakpoints_[i - 1])) throw DomainError("step breakpoints must increase strictly");
}

StepFunction StepFunction::sample_midpoints(const RealFunction& f, double horizon, int cells) {
  if (cells < 1) throw DomainError("need at least one cell");
  std::vector<double> br(cells + 1);
  std::vector<double> v(cells);
  for (int i = 0; i <= cells; ++i) br[i] = horizon * i / cells;
  for (int i = 0; i < cells; ++i) v[i] = f(0.5 * (br[i] + br[i + 1]));
  return StepFunction(std::move(br), std::move(v));
}

double StepFunction::operator()(double s) const {
  if (s <= breakpoints_.front() || s > breakpoints_.back()) return 0.0;
  // first breakpoint >= s closes the cell (s_{i}, s_{i+1}]
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), s);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double inner_product(const RealFunction& f, const RealFunction& g, double horizon, const QuadratureRule& rule) {
  return integrate([&](double s) { return f(s) * g(s); }, 0.0, horizon, rule);
}

double localize_coeff(const RealFunction& f, double t, unsigned k, const BasisFamily& basis,
                      const QuadratureRule& rule) {
  if (!(t >= 0.0 && t <= basis.horizon())) throw DomainError("localization time outside [0, T]");
  return integrate([&](double s) { return f(s) * basis.eval(k, s); }, 0.0, t, rule);
}

std::vector<double> localization_gram(const BasisFamily& basis, unsigned modes, double t,
                                      const QuadratureRule& rule) {
  if (!(t >= 0.0 && t <= basis.horizon())) throw DomainError("localization time outside [0, T]");
  std::vector<double> g(static_cast<std::size_t>(modes) * modes, 0.0);
  if (t == 0.0) return g;
  const NodeRule pts = quadrature_points(0.0, t, rule);
  std::vector<double> values(modes);
  for (std::size_t q = 0; q < pts.nodes.size(); ++q) {
    for (unsigned k = 0; k < modes; ++k) values[k] = basis.eval(k + 1, pts.nodes[q]);
    for (unsigned k = 0; k < modes; ++k)
      for (unsigned j = 0; j < modes; ++j) g[k * modes + j] += pts.weights[q] * values[k] * values[j];
  }
  return g;
}

}  // namespace chaosint
