#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chaosint/quadrature.hpp"

namespace chaosint {

/// A kernel K(t, s) defining the process X(t) = int K(t, s) dW(s), i.e.
/// K(t, .) = K* chi_t. Adapted kernels vanish for s > t.
///
/// Endpoint behaviour is exposed so quadratures can remove it:
///   K(t, s)      = s^origin_exponent() * eval_regular(t, s)    near s = 0,
///   dK/dt (t, s) = (t - s)^dt_singularity() * dt_regular(t, s) near s = t,
/// and dt_regular itself behaves like s^dt_origin_exponent() near s = 0.
class Kernel {
 public:
  virtual ~Kernel() = default;

  virtual std::string name() const = 0;
  virtual bool adapted() const { return true; }

  virtual double eval(double t, double s) const = 0;
  /// K(s+, s).
  virtual double diag_limit(double s) const = 0;

  virtual double origin_exponent() const { return 0.0; }
  virtual double eval_regular(double t, double s) const { return eval(t, s); }

  virtual bool has_derivative() const { return false; }
  /// dK/dt (t, s) for 0 < s < t; throws UnsupportedKernel when unavailable.
  virtual double dt_eval(double t, double s) const;
  virtual std::optional<double> dt_singularity() const { return std::nullopt; }
  virtual double dt_regular(double t, double s) const { return dt_eval(t, s); }
  virtual double dt_origin_exponent() const { return 0.0; }

  /// The adjoint action (K g)(t) = K(t+, t) g(t) + int_0^t dK/dt (t, s) g(s) ds,
  /// so that int_0^t (K g)(r) dr = int_0^T K(t, s) g(s) ds.
  virtual double adjoint_apply(const RealFunction& g, double t,
                               const QuadratureRule& rule = QuadratureRule::singular()) const;
};

using KernelPtr = std::shared_ptr<const Kernel>;

/// K(t, s) = chi_t(s); K* is the identity and X = W.
class BrownianKernel final : public Kernel {
 public:
  std::string name() const override { return "brownian"; }
  double eval(double t, double s) const override { return (s >= 0.0 && s <= t) ? 1.0 : 0.0; }
  double diag_limit(double) const override { return 1.0; }
  bool has_derivative() const override { return true; }
  double dt_eval(double, double) const override { return 0.0; }
  double adjoint_apply(const RealFunction& g, double t, const QuadratureRule& rule) const override;
};

/// Volterra kernel of fractional Brownian motion, 1/2 < H < 1:
///   K(t, s) = C_H (H - 1/2) s^{1/2-H} int_s^t (tau - s)^{H-3/2} tau^{H-1/2} d tau.
class FbmKernel final : public Kernel {
 public:
  explicit FbmKernel(double hurst, int adjoint_nodes = 64);

  double hurst() const noexcept { return hurst_; }
  std::string name() const override { return "fbm"; }

  double eval(double t, double s) const override;
  double diag_limit(double) const override { return 0.0; }
  double origin_exponent() const override { return 0.5 - hurst_; }
  double eval_regular(double t, double s) const override;

  bool has_derivative() const override { return true; }
  double dt_eval(double t, double s) const override;
  std::optional<double> dt_singularity() const override { return hurst_ - 1.5; }
  double dt_regular(double t, double s) const override;
  double dt_origin_exponent() const override { return 0.5 - hurst_; }

  double adjoint_apply(const RealFunction& g, double t, const QuadratureRule& rule) const override;

 private:
  // int_s^t (tau - s)^{H-3/2} tau^{H-1/2} d tau
  double inner_integral(double t, double s) const;

  double hurst_;
  double a_;       // H - 1/2
  double prefac_;  // C_H (H - 1/2)
  NodeRule near_rule_;     // weight x^{a-1} on [0, 1]
  NodeRule adjoint_rule_;  // weight x^{-a} (1 - x)^{a-1} on [0, 1]
};

/// Kernel tabulated on a grid with bilinear interpolation. No t-derivative is
/// provided, so operations needing one raise UnsupportedKernel.
class GridKernel final : public Kernel {
 public:
  GridKernel(std::vector<double> t_grid, std::vector<double> s_grid, std::vector<double> values);
  /// CSV with a header row of s grid points and a leading column of t grid points.
  static GridKernel from_csv(const std::filesystem::path& path);
  static GridKernel from_csv_string(const std::string& text);

  std::string name() const override { return "custom-grid"; }
  bool adapted() const override { return adapted_; }
  double eval(double t, double s) const override;
  double diag_limit(double s) const override { return eval(s, s); }

  const std::vector<double>& t_grid() const noexcept { return t_; }
  const std::vector<double>& s_grid() const noexcept { return s_; }

 private:
  std::vector<double> t_;
  std::vector<double> s_;
  std::vector<double> k_;  // row-major, rows indexed by t
  bool adapted_ = true;
};

/// "brownian", "fbm" (uses hurst) or "custom-grid" (reads grid_csv).
KernelPtr make_kernel(const std::string& name, double hurst = 0.75,
                      const std::filesystem::path& grid_csv = {});

}  // namespace chaosint
