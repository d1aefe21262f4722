#include "chaosint/basis.hpp"

#include <cmath>
#include <numbers>

#include "chaosint/errors.hpp"

namespace chaosint {

namespace {

// Legendre P_n(x) and P_{n-1}(x) by the Bonnet recurrence.
std::pair<double, double> legendre_pair(unsigned n, double x) {
  if (n == 0) return {1.0, 0.0};
  double prev = 1.0;
  double cur = x;
  for (unsigned j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0) * x * cur - j * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

double legendre_p(unsigned n, double x) { return legendre_pair(n, x).first; }

}  // namespace

BasisKind parse_basis_kind(std::string_view name) {
  if (name == "cosine") return BasisKind::cosine;
  if (name == "legendre") return BasisKind::legendre;
  throw ConfigError("unknown basis '" + std::string(name) + "' (expected cosine or legendre)");
}

std::string to_string(BasisKind kind) { return kind == BasisKind::cosine ? "cosine" : "legendre"; }

BasisFamily::BasisFamily(BasisKind kind, double horizon) : kind_(kind), horizon_(horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("basis horizon T must be positive");
}

void BasisFamily::check(unsigned k, double t) const {
  if (k == 0) throw DomainError("basis index k is 1-based");
  const double slack = 1e-12 * horizon_;
  if (!(t >= -slack && t <= horizon_ + slack))
    throw DomainError("t = " + std::to_string(t) + " outside [0, " + std::to_string(horizon_) + "]");
}

double BasisFamily::eval(unsigned k, double t) const {
  check(k, t);
  const double T = horizon_;
  if (k == 1) return 1.0 / std::sqrt(T);
  if (kind_ == BasisKind::cosine) return std::sqrt(2.0 / T) * std::cos((k - 1) * std::numbers::pi * t / T);
  return std::sqrt((2.0 * k - 1.0) / T) * legendre_p(k - 1, 2.0 * t / T - 1.0);
}

double BasisFamily::antideriv(unsigned k, double t) const {
  check(k, t);
  const double T = horizon_;
  if (k == 1) return t / std::sqrt(T);
  if (kind_ == BasisKind::cosine) {
    const double w = (k - 1) * std::numbers::pi / T;
    return std::sqrt(2.0 / T) * std::sin(w * t) / w;
  }
  // int P_n = (P_{n+1} - P_{n-1}) / (2n + 1), n = k - 1 >= 1.
  const unsigned n = k - 1;
  const double x = 2.0 * t / T - 1.0;
  const double pn1 = legendre_p(n + 1, x);
  const double pnm1 = legendre_p(n - 1, x);
  return std::sqrt((2.0 * k - 1.0) / T) * (T / 2.0) * (pn1 - pnm1) / (2.0 * n + 1.0);
}

}  // namespace chaosint
