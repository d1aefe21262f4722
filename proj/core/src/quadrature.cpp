#include "chaosint/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "chaosint/errors.hpp"

namespace chaosint {

NodeRule golub_welsch(std::span<const double> diag, std::span<const double> offdiag_sq, double mu0) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  if (n == 0 || offdiag_sq.size() + 1 != diag.size())
    throw DimensionError("golub_welsch: need n diagonal and n-1 off-diagonal entries");
  Eigen::VectorXd d(n);
  Eigen::VectorXd e(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 0; i < n; ++i) d[i] = diag[i];
  for (Eigen::Index i = 0; i + 1 < n; ++i) e[i] = std::sqrt(offdiag_sq[i]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigensolver failed");
  NodeRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

namespace {

template <class Make>
const NodeRule& cached(std::map<int, std::unique_ptr<NodeRule>>& cache, std::mutex& m, int n, Make make) {
  std::lock_guard lock(m);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<NodeRule>(make(n));
  return *slot;
}

// P_n(x) and P_n'(x).
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int j = 1; j < n; ++j) {
    const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

NodeRule make_gauss_legendre(int n) {
  // Newton on P_n from the Chebyshev guess; more accurate weights than the
  // Golub-Welsch eigenvectors for large n.
  NodeRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

NodeRule make_gauss_hermite(int n) {
  std::vector<double> diag(n, 0.0);
  std::vector<double> off(n > 0 ? n - 1 : 0);
  for (int i = 1; i < n; ++i) off[i - 1] = static_cast<double>(i);
  return golub_welsch(diag, off, 1.0);
}

}  // namespace

const NodeRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre needs n >= 1");
  static std::map<int, std::unique_ptr<NodeRule>> cache;
  static std::mutex m;
  return cached(cache, m, n, make_gauss_legendre);
}

const NodeRule& gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite needs n >= 1");
  static std::map<int, std::unique_ptr<NodeRule>> cache;
  static std::mutex m;
  return cached(cache, m, n, make_gauss_hermite);
}

NodeRule gauss_jacobi01(int n, double left, double right) {
  if (n < 1) throw DomainError("gauss_jacobi01 needs n >= 1");
  if (!(left > -1.0) || !(right > -1.0)) throw NonIntegrable("Jacobi exponents must exceed -1");
  // Classical Jacobi weight (1 - y)^al (1 + y)^be on [-1, 1] with y = 2x - 1.
  const double al = right;
  const double be = left;
  const double ab = al + be;
  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  diag[0] = (be - al) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag[k] = (be * be - al * al) / (s * (s + 2.0));
  }
  if (n > 1) off[0] = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
  for (int k = 2; k < n; ++k) {
    const double s = 2.0 * k + ab;
    off[k - 1] = 4.0 * k * (k + al) * (k + be) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
  }
  const double mu0 =
      std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(al + 1.0) + std::lgamma(be + 1.0) - std::lgamma(ab + 2.0));
  NodeRule rule = golub_welsch(diag, off, mu0);
  const double scale = std::exp(-(ab + 1.0) * std::log(2.0));
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = 0.5 * (rule.nodes[i] + 1.0);
    rule.weights[i] *= scale;
  }
  return rule;
}

NodeRule quadrature_points(double a, double b, const QuadratureRule& rule) {
  if (rule.panels < 1 || rule.nodes < 1) throw DomainError("quadrature rule needs panels, nodes >= 1");
  const NodeRule& ref = gauss_legendre(rule.nodes);
  NodeRule out;
  auto add_panel = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
      out.nodes.push_back(mid + half * ref.nodes[i]);
      out.weights.push_back(half * ref.weights[i]);
    }
  };
  if (b == a) return out;
  const double h = (b - a) / rule.panels;
  const int levels = rule.grading_levels;
  for (int p = 0; p < rule.panels; ++p) {
    const double lo = a + p * h;
    const double hi = (p + 1 == rule.panels) ? b : a + (p + 1) * h;
    const bool grade_lo = levels > 0 && p == 0;
    const bool grade_hi = levels > 0 && p + 1 == rule.panels;
    if (!grade_lo && !grade_hi) {
      add_panel(lo, hi);
      continue;
    }
    if (grade_lo && grade_hi) {
      // single panel: grade both halves toward their outer ends
      const double mid = 0.5 * (lo + hi);
      double w = mid - lo;
      add_panel(lo, lo + w * std::ldexp(1.0, -levels));
      for (int j = levels; j > 0; --j) add_panel(lo + w * std::ldexp(1.0, -j), lo + w * std::ldexp(1.0, -j + 1));
      for (int j = 1; j <= levels; ++j) add_panel(hi - w * std::ldexp(1.0, -j + 1), hi - w * std::ldexp(1.0, -j));
      add_panel(hi - w * std::ldexp(1.0, -levels), hi);
      continue;
    }
    const double w = hi - lo;
    if (grade_lo) {
      add_panel(lo, lo + w * std::ldexp(1.0, -levels));
      for (int j = levels; j > 0; --j) add_panel(lo + w * std::ldexp(1.0, -j), lo + w * std::ldexp(1.0, -j + 1));
    } else {
      for (int j = 1; j <= levels; ++j) add_panel(hi - w * std::ldexp(1.0, -j + 1), hi - w * std::ldexp(1.0, -j));
      add_panel(hi - w * std::ldexp(1.0, -levels), hi);
    }
  }
  return out;
}

double integrate(const RealFunction& f, double a, double b, const QuadratureRule& rule) {
  const NodeRule pts = quadrature_points(a, b, rule);
  double s = 0.0;
  for (std::size_t i = 0; i < pts.nodes.size(); ++i) s += pts.weights[i] * f(pts.nodes[i]);
  return s;
}

double integrate_adaptive(const RealFunction& f, double a, double b, const QuadratureRule& rule,
                          int max_doublings) {
  QuadratureRule r = rule;
  double prev = integrate(f, a, b, r);
  for (int i = 0; i < max_doublings; ++i) {
    r.panels *= 2;
    const double cur = integrate(f, a, b, r);
    if (std::abs(cur - prev) < rule.tolerance) return cur;
    prev = cur;
  }
  return prev;
}

NodeRule singular_points(double a, double b, double gamma, const QuadratureRule& rule) {
  if (!(gamma > -1.0)) throw NonIntegrable("endpoint exponent " + std::to_string(gamma) + " <= -1");
  if (b < a) throw DomainError("singular quadrature needs a <= b");
  NodeRule out;
  if (b == a) return out;
  // u = (tau - a)^(gamma + 1): (tau - a)^gamma d tau = p du with p = 1 / (gamma + 1).
  const double p = 1.0 / (gamma + 1.0);
  out = quadrature_points(0.0, std::pow(b - a, gamma + 1.0), rule);
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    out.nodes[i] = std::min(b, a + std::pow(out.nodes[i], p));
    out.weights[i] *= p;
  }
  return out;
}

double quad_singular(const RealFunction& g, double a, double b, double gamma, const QuadratureRule& rule) {
  const NodeRule pts = singular_points(a, b, gamma, rule);
  double s = 0.0;
  for (std::size_t i = 0; i < pts.nodes.size(); ++i) s += pts.weights[i] * g(pts.nodes[i]);
  return s;
}

double quad_singular_upper(const RealFunction& g, double a, double b, double gamma, const QuadratureRule& rule) {
  return quad_singular([&](double y) { return g(b - y); }, 0.0, b - a, gamma, rule);
}

}  // namespace chaosint
