#include "chaosint/kernel_ops.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "chaosint/errors.hpp"
#include "parallel.hpp"

namespace chaosint {

namespace {

bool is_brownian(const Kernel& kernel) { return dynamic_cast<const BrownianKernel*>(&kernel) != nullptr; }

void require_derivative(const Kernel& kernel) {
  if (!kernel.has_derivative()) throw UnsupportedKernel("kernel '" + kernel.name() + "' provides no t-derivative");
}

// Nodes s_q and weights w_q K(t, s_q) so that sum_q w_q g(s_q) ~ int K(t, s) g(s) ds.
NodeRule kernel_row(const Kernel& kernel, double t, double horizon, const QuadratureRule& rule) {
  if (!kernel.adapted()) {
    NodeRule pts = quadrature_points(0.0, horizon, rule);
    for (std::size_t q = 0; q < pts.nodes.size(); ++q) pts.weights[q] *= kernel.eval(t, pts.nodes[q]);
    return pts;
  }
  NodeRule pts = singular_points(0.0, t, kernel.origin_exponent(), rule);
  for (std::size_t q = 0; q < pts.nodes.size(); ++q) pts.weights[q] *= kernel.eval_regular(t, pts.nodes[q]);
  return pts;
}

}  // namespace

RealFunction kstar_apply_step(KernelPtr kernel, const StepFunction& f) {
  if (!kernel->adapted()) throw UnsupportedKernel("step formula needs an adapted kernel");
  return [kernel, f](double s) {
    const auto& br = f.breakpoints();
    const auto& a = f.values();
    if (s > br.back()) return 0.0;
    // i = index of the cell containing s, or -1 when s <= s_0.
    const auto it = std::lower_bound(br.begin(), br.end(), s);
    const long i = static_cast<long>(it - br.begin()) - 1;
    double value = i >= 0 ? a[i] * kernel->eval(br[i + 1], s) : 0.0;
    for (std::size_t k = static_cast<std::size_t>(i + 1); k < a.size(); ++k)
      value += a[k] * (kernel->eval(br[k + 1], s) - kernel->eval(br[k], s));
    return value;
  };
}

RealFunction kstar_apply(KernelPtr kernel, RealFunction f, double horizon, QuadratureRule rule) {
  require_derivative(*kernel);
  if (is_brownian(*kernel)) return f;
  return [kernel, f = std::move(f), horizon, rule](double s) {
    double value = kernel->diag_limit(s) * f(s);
    if (s < horizon) {
      if (auto gamma = kernel->dt_singularity())
        value += quad_singular([&](double t) { return f(t) * kernel->dt_regular(t, s); }, s, horizon, *gamma, rule);
      else
        value += integrate([&](double t) { return f(t) * kernel->dt_eval(t, s); }, s, horizon, rule);
    }
    return value;
  };
}

double k1_integral(const Kernel& kernel, double horizon, double t, const QuadratureRule& rule) {
  require_derivative(kernel);
  if (t <= 0.0 || is_brownian(kernel)) return 0.0;
  const double half = 0.5 * t;
  // [0, t/2]: both factors may blow up like powers of s.
  const double p0 = kernel.dt_origin_exponent();
  const double lower = quad_singular(
      [&](double s) { return kernel.eval_regular(horizon, s) * kernel.dt_eval(t, s) * std::pow(s, -p0); }, 0.0,
      half, kernel.origin_exponent() + p0, rule);
  // [t/2, t]: the derivative is singular at s = t.
  double upper = 0.0;
  if (auto gamma = kernel.dt_singularity())
    upper = quad_singular_upper([&](double s) { return kernel.eval(horizon, s) * kernel.dt_regular(t, s); }, half, t,
                                *gamma, rule);
  else
    upper = integrate([&](double s) { return kernel.eval(horizon, s) * kernel.dt_eval(t, s); }, half, t, rule);
  return lower + upper;
}

double k1_empirical(const Kernel& kernel, double horizon, int grid) {
  require_derivative(kernel);
  if (grid < 2) throw DomainError("k1_empirical needs at least 2 grid points");
  if (is_brownian(kernel)) return 0.0;
  const double h0 = horizon / grid;
  std::vector<double> values(grid);
  detail::parallel_for(grid, [&](std::size_t j) { values[j] = k1_integral(kernel, horizon, h0 * (j + 1)); });
  const auto best = std::max_element(values.begin(), values.end());
  double best_t = h0 * static_cast<double>(best - values.begin() + 1);
  double best_v = *best;
  for (double h = h0 / 2; h > horizon * 1e-12; h /= 2) {
    double next_t = best_t;
    double next_v = best_v;
    for (double t : {best_t - h, best_t + h}) {
      if (t <= 0.0 || t > horizon) continue;
      const double v = k1_integral(kernel, horizon, t);
      if (v > next_v) {
        next_v = v;
        next_t = t;
      }
    }
    const double change = next_v - best_v;
    best_t = next_t;
    best_v = next_v;
    if (change < 1e-6) break;
  }
  return best_v;
}

double op_norm_bound(double k0, double k1) {
  if (k0 < 0.0 || k1 < 0.0) throw DomainError("op_norm_bound needs K0, K1 >= 0");
  return k0 > 0.0 ? std::sqrt(2.0 * (k0 * k0 + k1)) : std::sqrt(k1);
}

double op_norm_estimate(const Kernel& kernel, double horizon, int n_grid) {
  if (n_grid < 2) throw DomainError("op_norm_estimate needs n_grid >= 2");
  const int n = n_grid;
  const double h = horizon / n;
  // A_ij = (K* phi_j, phi_i) with phi_j the normalised indicator of cell j;
  // K* chi_(s_j, s_{j+1}] = K(s_{j+1}, .) - K(s_j, .), averaged over cell i by its midpoint.
  Eigen::MatrixXd a(n, n);
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double c = h * (static_cast<double>(i) + 0.5);
    double prev = kernel.eval(0.0, c);
    for (int j = 0; j < n; ++j) {
      const double next = kernel.eval(h * (j + 1), c);
      a(static_cast<Eigen::Index>(i), j) = next - prev;
      prev = next;
    }
  });
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
  double lambda = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::VectorXd w = a.transpose() * (a * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    const bool done = std::abs(next - lambda) <= 1e-8 * next;
    lambda = next;
    if (done) break;
  }
  return std::sqrt(lambda);
}

double covariance_from_kernel(const Kernel& kernel, double t, double s, const QuadratureRule& rule) {
  if (!kernel.adapted()) throw UnsupportedKernel("covariance_from_kernel needs an adapted kernel");
  const double m = std::min(t, s);
  if (m <= 0.0) return 0.0;
  if (is_brownian(kernel)) return m;
  const NodeRule pts = singular_points(0.0, m, 2.0 * kernel.origin_exponent(), rule);
  double sum = 0.0;
  for (std::size_t q = 0; q < pts.nodes.size(); ++q)
    sum += pts.weights[q] * kernel.eval_regular(t, pts.nodes[q]) * kernel.eval_regular(s, pts.nodes[q]);
  return sum;
}

double m_tilde(const Kernel& kernel, const BasisFamily& basis, unsigned k, double t, const QuadratureRule& rule) {
  if (t < 0.0 || t > basis.horizon() * (1 + 1e-12)) throw DomainError("m_tilde: t outside [0, T]");
  if (is_brownian(kernel)) return basis.antideriv(k, t);
  if (t == 0.0 && kernel.adapted()) return 0.0;
  const NodeRule row = kernel_row(kernel, t, basis.horizon(), rule);
  double sum = 0.0;
  for (std::size_t q = 0; q < row.nodes.size(); ++q) sum += row.weights[q] * basis.eval(k, row.nodes[q]);
  return sum;
}

std::vector<std::vector<double>> m_tilde_table(const Kernel& kernel, const BasisFamily& basis, unsigned modes,
                                               const std::vector<double>& times, const QuadratureRule& rule) {
  std::vector<std::vector<double>> table(times.size(), std::vector<double>(modes, 0.0));
  const bool brownian = is_brownian(kernel);
  detail::parallel_for(times.size(), [&](std::size_t i) {
    const double t = times[i];
    if (t < 0.0 || t > basis.horizon() * (1 + 1e-12)) throw DomainError("m_tilde: t outside [0, T]");
    auto& out = table[i];
    if (brownian) {
      for (unsigned k = 1; k <= modes; ++k) out[k - 1] = basis.antideriv(k, t);
      return;
    }
    if (t == 0.0 && kernel.adapted()) return;
    const NodeRule row = kernel_row(kernel, t, basis.horizon(), rule);
    for (std::size_t q = 0; q < row.nodes.size(); ++q)
      for (unsigned k = 1; k <= modes; ++k) out[k - 1] += row.weights[q] * basis.eval(k, row.nodes[q]);
  });
  return table;
}

}  // namespace chaosint
