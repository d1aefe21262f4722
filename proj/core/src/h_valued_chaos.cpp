#include "chaosint/h_valued_chaos.hpp"

#include <cmath>

#include "chaosint/errors.hpp"

namespace chaosint {

HValuedChaos HValuedChaos::deterministic(Truncation trunc, std::span<const double> f) {
  if (f.size() != trunc.modes)
    throw DimensionError("deterministic integrand needs " + std::to_string(trunc.modes) + " coefficients");
  HValuedChaos out(trunc);
  out.set_row(MultiIndex{}, Row(f.begin(), f.end()));
  return out;
}

void HValuedChaos::check(const MultiIndex& a, std::uint32_t k) const {
  if (!trunc_.contains(a)) throw ConfigError("multi-index " + a.to_string() + " outside truncation");
  if (k < 1 || k > trunc_.modes) throw DimensionError("mode index " + std::to_string(k) + " out of range");
}

double HValuedChaos::coeff(const MultiIndex& a, std::uint32_t k) const {
  if (k < 1 || k > trunc_.modes) return 0.0;
  auto it = rows_.find(a);
  return it == rows_.end() ? 0.0 : it->second[k - 1];
}

void HValuedChaos::set(const MultiIndex& a, std::uint32_t k, double value) {
  check(a, k);
  auto [it, inserted] = rows_.try_emplace(a, Row(trunc_.modes, 0.0));
  it->second[k - 1] = value;
}

void HValuedChaos::add(const MultiIndex& a, std::uint32_t k, double value) {
  check(a, k);
  auto [it, inserted] = rows_.try_emplace(a, Row(trunc_.modes, 0.0));
  it->second[k - 1] += value;
}

const HValuedChaos::Row* HValuedChaos::row(const MultiIndex& a) const {
  auto it = rows_.find(a);
  return it == rows_.end() ? nullptr : &it->second;
}

void HValuedChaos::set_row(const MultiIndex& a, Row row) {
  check(a, 1);
  if (row.size() != trunc_.modes) throw DimensionError("row length must equal the number of modes");
  rows_[a] = std::move(row);
}

double HValuedChaos::norm_sq() const {
  double s = 0.0;
  for (const auto& [a, row] : rows_)
    for (double v : row) s += v * v;
  return s;
}

bool HValuedChaos::is_deterministic() const {
  for (const auto& [a, row] : rows_) {
    if (a.is_zero()) continue;
    for (double v : row)
      if (v != 0.0) return false;
  }
  return true;
}

HValuedChaos& HValuedChaos::operator+=(const HValuedChaos& other) {
  if (!(trunc_ == other.trunc_)) throw ConfigError("mismatched truncations");
  for (const auto& [a, row] : other.rows_) {
    auto [it, inserted] = rows_.try_emplace(a, Row(trunc_.modes, 0.0));
    for (std::size_t k = 0; k < row.size(); ++k) it->second[k] += row[k];
  }
  return *this;
}

HValuedChaos& HValuedChaos::operator*=(double c) {
  for (auto& [a, row] : rows_)
    for (double& v : row) v *= c;
  return *this;
}

HValuedChaos malliavin_derivative(const ChaosExpansion& f) {
  HValuedChaos out(f.truncation());
  for (const auto& [a, c] : f.coeffs()) {
    for (const auto& [k, n] : a.entries()) {
      // xi_alpha contributes sqrt(alpha_k) xi_{alpha - eps_k} m_k.
      out.add(*mi_sub_eps(a, k), k, std::sqrt(static_cast<double>(n)) * c);
    }
  }
  return out;
}

}  // namespace chaosint
