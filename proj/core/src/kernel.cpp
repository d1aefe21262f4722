#include "chaosint/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "chaosint/errors.hpp"
#include "chaosint/fbm.hpp"

namespace chaosint {

double Kernel::dt_eval(double, double) const {
  throw UnsupportedKernel("kernel '" + name() + "' provides no t-derivative");
}

double Kernel::adjoint_apply(const RealFunction& g, double t, const QuadratureRule& rule) const {
  if (!has_derivative()) throw UnsupportedKernel("kernel '" + name() + "' provides no t-derivative");
  double integral = 0.0;
  if (t > 0.0) {
    if (auto gamma = dt_singularity())
      integral = quad_singular_upper([&](double s) { return dt_regular(t, s) * g(s); }, 0.0, t, *gamma, rule);
    else
      integral = integrate([&](double s) { return dt_eval(t, s) * g(s); }, 0.0, t, rule);
  }
  return diag_limit(t) * g(t) + integral;
}

double BrownianKernel::adjoint_apply(const RealFunction& g, double t, const QuadratureRule&) const {
  return g(t);
}

// ---------------------------------------------------------------------------

namespace {
constexpr int kNearNodes = 24;
constexpr int kPanelNodes = 20;
}  // namespace

FbmKernel::FbmKernel(double hurst, int adjoint_nodes) : hurst_(hurst) {
  check_hurst(hurst);
  a_ = hurst - 0.5;
  prefac_ = fbm_c_h(hurst) * a_;
  near_rule_ = gauss_jacobi01(kNearNodes, a_ - 1.0, 0.0);
  adjoint_rule_ = gauss_jacobi01(std::max(adjoint_nodes, 1), -a_, a_ - 1.0);
}

double FbmKernel::inner_integral(double t, double s) const {
  // tau = s + y: int_0^{t-s} y^{a-1} (s + y)^a dy.
  const double a = a_;
  if (s <= 0.0) return std::pow(t, 2.0 * a) / (2.0 * a);
  const double len = t - s;
  const double d = std::min(len, s);
  // [0, d]: Gauss-Jacobi with weight y^{a-1}; (s + y)^a is analytic there since d <= s.
  double near = 0.0;
  for (std::size_t i = 0; i < near_rule_.nodes.size(); ++i)
    near += near_rule_.weights[i] * std::pow(s + d * near_rule_.nodes[i], a);
  double total = std::pow(d, a) * near;
  // [s, len]: geometric panels [c, 2c] keep the branch points 0 and -s well separated.
  const auto& gl = gauss_legendre(kPanelNodes);
  for (double lo = d; lo < len;) {
    const double hi = std::min(2.0 * lo, len);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double panel = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double y = mid + half * gl.nodes[i];
      panel += gl.weights[i] * std::pow(y, a - 1.0) * std::pow(s + y, a);
    }
    total += half * panel;
    lo = hi;
  }
  return total;
}

double FbmKernel::eval_regular(double t, double s) const {
  if (t <= 0.0 || s >= t) return 0.0;
  return prefac_ * inner_integral(t, std::max(s, 0.0));
}

double FbmKernel::eval(double t, double s) const {
  if (t <= 0.0 || s >= t) return 0.0;
  if (s <= 0.0) return HUGE_VAL;
  return std::pow(s, -a_) * eval_regular(t, s);
}

double FbmKernel::dt_regular(double t, double s) const {
  if (t <= 0.0 || s > t || s <= 0.0) return 0.0;
  return prefac_ * std::pow(s, -a_) * std::pow(t, a_);
}

double FbmKernel::dt_eval(double t, double s) const {
  if (t <= 0.0 || s >= t || s <= 0.0) return 0.0;
  return std::pow(t - s, a_ - 1.0) * dt_regular(t, s);
}

double FbmKernel::adjoint_apply(const RealFunction& g, double t, const QuadratureRule&) const {
  // s = t x: (K g)(t) = C_H a t^a int_0^1 x^{-a} (1 - x)^{a-1} g(t x) dx.
  if (t <= 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < adjoint_rule_.nodes.size(); ++i)
    sum += adjoint_rule_.weights[i] * g(t * adjoint_rule_.nodes[i]);
  return prefac_ * std::pow(t, a_) * sum;
}

// ---------------------------------------------------------------------------

GridKernel::GridKernel(std::vector<double> t_grid, std::vector<double> s_grid, std::vector<double> values)
    : t_(std::move(t_grid)), s_(std::move(s_grid)), k_(std::move(values)) {
  if (t_.size() < 2 || s_.size() < 2) throw ConfigError("custom-grid kernel needs at least a 2x2 grid");
  if (k_.size() != t_.size() * s_.size()) throw DimensionError("custom-grid value count mismatch");
  auto increasing = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), [](double x, double y) { return !(y > x); }) == v.end();
  };
  if (!increasing(t_) || !increasing(s_)) throw ConfigError("custom-grid points must increase strictly");
  for (std::size_t i = 0; i < t_.size(); ++i)
    for (std::size_t j = 0; j < s_.size(); ++j)
      if (s_[j] > t_[i] && std::abs(k_[i * s_.size() + j]) > 1e-14) adapted_ = false;
}

GridKernel GridKernel::from_csv_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  auto number = [](const std::string& cell) {
    try {
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("custom-grid CSV: cannot parse '" + cell + "'");
    }
  };
  if (!std::getline(in, line)) throw ConfigError("custom-grid CSV is empty");
  const auto header = split(line);
  if (header.size() < 3) throw ConfigError("custom-grid CSV header needs a label and >= 2 s points");
  std::vector<double> s;
  for (std::size_t j = 1; j < header.size(); ++j) s.push_back(number(header[j]));
  std::vector<double> t;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw ConfigError("custom-grid CSV: ragged row");
    t.push_back(number(cells[0]));
    for (std::size_t j = 1; j < cells.size(); ++j) values.push_back(number(cells[j]));
  }
  return GridKernel(std::move(t), std::move(s), std::move(values));
}

GridKernel GridKernel::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open custom-grid CSV " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_csv_string(ss.str());
}

double GridKernel::eval(double t, double s) const {
  if (adapted_ && s > t) return 0.0;
  auto locate = [](const std::vector<double>& g, double x) {
    x = std::clamp(x, g.front(), g.back());
    auto it = std::upper_bound(g.begin(), g.end(), x);
    std::size_t i = it == g.begin() ? 0 : static_cast<std::size_t>(it - g.begin()) - 1;
    i = std::min(i, g.size() - 2);
    return std::pair{i, (x - g[i]) / (g[i + 1] - g[i])};
  };
  const auto [i, u] = locate(t_, t);
  const auto [j, v] = locate(s_, s);
  const std::size_t n = s_.size();
  return (1 - u) * (1 - v) * k_[i * n + j] + u * (1 - v) * k_[(i + 1) * n + j] + (1 - u) * v * k_[i * n + j + 1] +
         u * v * k_[(i + 1) * n + j + 1];
}

KernelPtr make_kernel(const std::string& name, double hurst, const std::filesystem::path& grid_csv) {
  if (name == "brownian") return std::make_shared<BrownianKernel>();
  if (name == "fbm") return std::make_shared<FbmKernel>(hurst);
  if (name == "custom-grid") {
    if (grid_csv.empty()) throw ConfigError("custom-grid kernel needs a CSV path");
    return std::make_shared<GridKernel>(GridKernel::from_csv(grid_csv));
  }
  throw ConfigError("unknown kernel '" + name + "' (expected brownian, fbm or custom-grid)");
}

}  // namespace chaosint
