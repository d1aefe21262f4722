#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace chaosint {

using RealFunction = std::function<double(double)>;

/// Nodes and weights of an interpolatory rule on a fixed reference interval.
struct NodeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule for a symmetric tridiagonal Jacobi matrix (Golub-Welsch):
/// diag a_0..a_{n-1}, off-diagonal sqrt(b_1..b_{n-1}), total mass mu0.
NodeRule golub_welsch(std::span<const double> diag, std::span<const double> offdiag_sq, double mu0);

/// Gauss-Legendre on [-1, 1]. Cached; thread-safe.
const NodeRule& gauss_legendre(int n);
/// Gauss-Hermite for the standard normal density (probabilists' weight).
const NodeRule& gauss_hermite(int n);
/// Gauss-Jacobi on [0, 1] for the weight x^left (1 - x)^right, left, right > -1.
NodeRule gauss_jacobi01(int n, double left, double right);

enum class QuadratureKind { gauss_legendre_composite, singular_substitution };

/// Composite Gauss-Legendre rule: `panels` equal panels of `nodes` points.
/// With grading_levels > 0 the first and last panels are split geometrically
/// (ratio 1/2) toward the outer endpoints, which resolves algebraic endpoint
/// behaviour such as (t - a)^beta.
struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::gauss_legendre_composite;
  int panels = 8;
  int nodes = 16;
  double tolerance = 1e-10;
  int grading_levels = 0;

  static QuadratureRule composite(int panels = 8, int nodes = 16) {
    return {QuadratureKind::gauss_legendre_composite, panels, nodes, 1e-10, 0};
  }
  static QuadratureRule singular(int panels = 8, int nodes = 16, int levels = 24) {
    return {QuadratureKind::singular_substitution, panels, nodes, 1e-10, levels};
  }
};

/// Absolute nodes and weights of `rule` on [a, b].
NodeRule quadrature_points(double a, double b, const QuadratureRule& rule);

/// int_a^b f by the composite rule.
double integrate(const RealFunction& f, double a, double b, const QuadratureRule& rule = {});

/// Doubles the panel count until two successive estimates differ by less than
/// rule.tolerance (at most `max_doublings` times).
double integrate_adaptive(const RealFunction& f, double a, double b, const QuadratureRule& rule = {},
                          int max_doublings = 8);

/// Nodes tau_q in (a, b) and weights w_q with sum_q w_q g(tau_q) approximating
/// int_a^b (tau - a)^gamma g(tau) d tau (the substitution used by quad_singular).
NodeRule singular_points(double a, double b, double gamma,
                         const QuadratureRule& rule = QuadratureRule::singular());

/// int_a^b (tau - a)^gamma g(tau) d tau for gamma > -1 and smooth g, through the
/// substitution u = (tau - a)^(gamma + 1), which removes the endpoint power.
/// Throws NonIntegrable for gamma <= -1.
double quad_singular(const RealFunction& g, double a, double b, double gamma,
                     const QuadratureRule& rule = QuadratureRule::singular());

/// int_a^b (b - tau)^gamma g(tau) d tau, the mirror image of quad_singular.
double quad_singular_upper(const RealFunction& g, double a, double b, double gamma,
                           const QuadratureRule& rule = QuadratureRule::singular());

}  // namespace chaosint
