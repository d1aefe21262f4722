#include "chaosint/chaos_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "chaosint/errors.hpp"
#include "chaosint/hermite.hpp"

namespace chaosint {

namespace {

void require_same(const Truncation& a, const Truncation& b) {
  if (!(a == b))
    throw ConfigError("mismatched truncations (K=" + std::to_string(a.modes) + ", N=" +
                      std::to_string(a.max_order) + ") vs (K=" + std::to_string(b.modes) +
                      ", N=" + std::to_string(b.max_order) + ")");
}

// binomial(n, r) in double; exact while the result stays below 2^53.
double binomial(std::uint32_t n, std::uint32_t r) {
  r = std::min(r, n - r);
  double c = 1.0;
  for (std::uint32_t i = 1; i <= r; ++i) c = c * static_cast<double>(n - r + i) / static_cast<double>(i);
  return c;
}

double log_binomial(double n, double r) {
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

}  // namespace

ChaosExpansion ChaosExpansion::constant(Truncation trunc, double c) {
  ChaosExpansion out(trunc);
  out.set(MultiIndex{}, c);
  return out;
}

double ChaosExpansion::coeff(const MultiIndex& a) const {
  auto it = coeffs_.find(a);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void ChaosExpansion::set(const MultiIndex& a, double value) {
  if (!trunc_.contains(a)) throw ConfigError("multi-index " + a.to_string() + " outside truncation");
  if (value == 0.0)
    coeffs_.erase(a);
  else
    coeffs_[a] = value;
}

void ChaosExpansion::add(const MultiIndex& a, double value) {
  if (!trunc_.contains(a)) throw ConfigError("multi-index " + a.to_string() + " outside truncation");
  coeffs_[a] += value;
}

double ChaosExpansion::norm_sq() const {
  double s = 0.0;
  for (const auto& [a, c] : coeffs_) s += c * c;
  return s;
}

ChaosExpansion ChaosExpansion::retruncated(const Truncation& trunc) const {
  ChaosExpansion out(trunc);
  for (const auto& [a, c] : coeffs_) out.set(a, c);
  return out;
}

ChaosExpansion& ChaosExpansion::operator+=(const ChaosExpansion& other) {
  require_same(trunc_, other.trunc_);
  for (const auto& [a, c] : other.coeffs_) coeffs_[a] += c;
  return *this;
}

ChaosExpansion& ChaosExpansion::operator-=(const ChaosExpansion& other) {
  require_same(trunc_, other.trunc_);
  for (const auto& [a, c] : other.coeffs_) coeffs_[a] -= c;
  return *this;
}

ChaosExpansion& ChaosExpansion::operator*=(double c) {
  for (auto& [a, v] : coeffs_) v *= c;
  return *this;
}

double max_abs_diff(const ChaosExpansion& a, const ChaosExpansion& b) {
  double m = 0.0;
  for (const auto& [k, v] : a.coeffs()) m = std::max(m, std::abs(v - b.coeff(k)));
  for (const auto& [k, v] : b.coeffs()) m = std::max(m, std::abs(v - a.coeff(k)));
  return m;
}

double chaos_inner(const ChaosExpansion& f, const ChaosExpansion& g) {
  const auto& small = f.size() <= g.size() ? f : g;
  const auto& large = f.size() <= g.size() ? g : f;
  double s = 0.0;
  for (const auto& [a, c] : small.coeffs()) s += c * large.coeff(a);
  return s;
}

double xi_alpha_eval(const MultiIndex& a, std::span<const double> z) {
  if (a.max_position() > z.size())
    throw DimensionError("xi_alpha needs z of length >= " + std::to_string(a.max_position()));
  double prod = 1.0;
  for (const auto& [k, n] : a.entries()) prod *= normalized_hermite_table(n, z[k - 1])[n];
  return prod;
}

double chaos_eval(const ChaosExpansion& f, std::span<const double> z) {
  const auto& trunc = f.truncation();
  if (z.size() < trunc.modes)
    throw DimensionError("chaos_eval needs " + std::to_string(trunc.modes) + " coordinates, got " +
                         std::to_string(z.size()));
  std::vector<std::vector<double>> tables(trunc.modes);
  for (std::uint32_t k = 0; k < trunc.modes; ++k) tables[k] = normalized_hermite_table(trunc.max_order, z[k]);
  double sum = 0.0;
  for (const auto& [a, c] : f.coeffs()) {
    double prod = c;
    for (const auto& [k, n] : a.entries()) prod *= tables[k - 1][n];
    sum += prod;
  }
  return sum;
}

ChaosEvaluator::ChaosEvaluator(const ChaosExpansion& f) : trunc_(f.truncation()) {
  std::size_t sparse_cost = 0;
  for (const auto& [a, c] : f.coeffs()) sparse_cost += 1 + a.entries().size();
  dense_ = trunc_.size() < 2 * sparse_cost;
  if (!dense_) {
    for (const auto& [a, c] : f.coeffs()) {
      values_.push_back(c);
      entries_.push_back(a.entries());
    }
    return;
  }
  values_.reserve(trunc_.size());
  std::vector<std::uint32_t> dense(trunc_.modes, 0);
  // Same traversal as nested(): alpha_1 outermost, each level bounded by the remaining order.
  auto fill = [&](auto&& self, std::uint32_t level, std::uint32_t budget) -> void {
    for (std::uint32_t a = 0; a <= budget; ++a) {
      dense[level] = a;
      if (level + 1 == trunc_.modes)
        values_.push_back(f.coeff(MultiIndex::from_dense(dense)));
      else
        self(self, level + 1, budget - a);
    }
    dense[level] = 0;
  };
  fill(fill, 0, trunc_.max_order);
}

double ChaosEvaluator::nested(std::uint32_t level, std::uint32_t budget, std::size_t& pos,
                              const std::vector<std::vector<double>>& h) const {
  const auto& hk = h[level];
  double sum = 0.0;
  if (level + 1 == trunc_.modes) {
    for (std::uint32_t a = 0; a <= budget; ++a) sum += hk[a] * values_[pos++];
    return sum;
  }
  for (std::uint32_t a = 0; a <= budget; ++a) sum += hk[a] * nested(level + 1, budget - a, pos, h);
  return sum;
}

double ChaosEvaluator::operator()(std::span<const double> z) const {
  if (z.size() < trunc_.modes)
    throw DimensionError("chaos evaluation needs " + std::to_string(trunc_.modes) + " coordinates, got " +
                         std::to_string(z.size()));
  std::vector<std::vector<double>> h(trunc_.modes);
  for (std::uint32_t k = 0; k < trunc_.modes; ++k) h[k] = normalized_hermite_table(trunc_.max_order, z[k]);
  if (dense_) {
    std::size_t pos = 0;
    return nested(0, trunc_.max_order, pos, h);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double prod = values_[i];
    for (const auto& [k, n] : entries_[i]) prod *= h[k - 1][n];
    sum += prod;
  }
  return sum;
}

double wick_weight(const MultiIndex& a, const MultiIndex& b) {
  double w = 1.0;
  for (const auto& [k, va] : a.entries()) {
    const std::uint32_t vb = b.at(k);
    if (vb != 0) w *= binomial(va + vb, va);
  }
  if (std::isfinite(w)) return std::sqrt(w);
  return std::exp(mi_factorial_sqrt_log(mi_add(a, b)) - mi_factorial_sqrt_log(a) - mi_factorial_sqrt_log(b));
}

WickResult wick_product(const ChaosExpansion& f, const ChaosExpansion& g) {
  require_same(f.truncation(), g.truncation());
  const auto& trunc = f.truncation();
  // Hash accumulators; most pairs of a dense product land above the truncation.
  std::unordered_map<MultiIndex, double, MultiIndexHash> kept, dropped;
  for (const auto& [a, fa] : f.coeffs()) {
    for (const auto& [b, gb] : g.coeffs()) {
      const double v = fa * gb * wick_weight(a, b);
      auto& acc = a.order() + b.order() <= trunc.max_order ? kept : dropped;
      acc[mi_add(a, b)] += v;
    }
  }
  WickResult result{ChaosExpansion(trunc), 0.0};
  for (const auto& [a, v] : kept) result.product.add(a, v);
  // Fixed summation order keeps the reported mass reproducible.
  std::vector<std::pair<MultiIndex, double>> sorted(dropped.begin(), dropped.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return GradedLess{}(x.first, y.first); });
  for (const auto& [a, v] : sorted) result.dropped_mass += v * v;
  return result;
}

ChaosExpansion wick_exp_first_chaos(std::span<const double> c, const Truncation& trunc) {
  if (c.size() != trunc.modes)
    throw DimensionError("wick_exp_first_chaos needs " + std::to_string(trunc.modes) + " coefficients");
  ChaosExpansion out(trunc);
  for (const auto& a : enumerate_multiindices(trunc)) {
    double v = 1.0;
    for (const auto& [k, n] : a.entries())
      v *= std::pow(c[k - 1], static_cast<double>(n)) * std::exp(-0.5 * std::lgamma(n + 1.0));
    out.set(a, v);
  }
  return out;
}

ChaosExpansion chaos_product(const ChaosExpansion& f, const ChaosExpansion& g) {
  if (f.truncation().modes != g.truncation().modes)
    throw ConfigError("chaos_product needs expansions over the same modes");
  const Truncation out_trunc{f.truncation().modes, f.truncation().max_order + g.truncation().max_order};
  ChaosExpansion out(out_trunc);

  // Per-coordinate linearization terms (degree, weight) of h_a h_b.
  auto linearize = [](std::uint32_t a, std::uint32_t b) {
    std::vector<std::pair<std::uint32_t, double>> terms;
    for (std::uint32_t r = 0; r <= std::min(a, b); ++r) {
      const std::uint32_t d = a + b - 2 * r;
      const double log_w = std::lgamma(r + 1.0) + log_binomial(a, r) + log_binomial(b, r) +
                           0.5 * (std::lgamma(d + 1.0) - std::lgamma(a + 1.0) - std::lgamma(b + 1.0));
      terms.emplace_back(d, std::exp(log_w));
    }
    return terms;
  };

  for (const auto& [a, fa] : f.coeffs()) {
    for (const auto& [b, gb] : g.coeffs()) {
      // Union of supports; each coordinate expands independently.
      std::vector<std::uint32_t> positions;
      for (const auto& e : a.entries()) positions.push_back(e.first);
      for (const auto& e : b.entries()) positions.push_back(e.first);
      std::sort(positions.begin(), positions.end());
      positions.erase(std::unique(positions.begin(), positions.end()), positions.end());

      std::vector<std::vector<std::pair<std::uint32_t, double>>> factors;
      factors.reserve(positions.size());
      for (auto k : positions) factors.push_back(linearize(a.at(k), b.at(k)));

      std::vector<std::size_t> choice(positions.size(), 0);
      while (true) {
        double w = fa * gb;
        std::vector<MultiIndex::Entry> entries;
        for (std::size_t i = 0; i < positions.size(); ++i) {
          const auto& [d, c] = factors[i][choice[i]];
          w *= c;
          entries.emplace_back(positions[i], d);
        }
        out.add(MultiIndex::from_entries(std::move(entries)), w);
        std::size_t i = 0;
        for (; i < choice.size(); ++i) {
          if (++choice[i] < factors[i].size()) break;
          choice[i] = 0;
        }
        if (i == choice.size()) break;
      }
    }
  }
  return out;
}

}  // namespace chaosint
