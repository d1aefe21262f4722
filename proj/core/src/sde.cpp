#include "chaosint/sde.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "chaosint/errors.hpp"
#include "chaosint/kernel_ops.hpp"
#include "parallel.hpp"

namespace chaosint {

TimeGrid TimeGrid::uniform(double horizon, int intervals) {
  if (!(horizon > 0.0)) throw DomainError("time grid needs T > 0");
  if (intervals < 1) throw DomainError("time grid needs at least one interval");
  TimeGrid g;
  g.points.resize(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) g.points[i] = horizon * i / intervals;
  g.points.back() = horizon;
  return g;
}

std::size_t PropagatorSolution::time_index(double t) const {
  const double tol = 1e-12 * std::max(1.0, times.back());
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= tol) return i;
  throw DomainError("t = " + std::to_string(t) + " is not a grid time");
}

ChaosExpansion PropagatorSolution::at(std::size_t i) const {
  ChaosExpansion out(trunc);
  for (std::size_t j = 0; j < indices.size(); ++j) out.set(indices[j], u.at(i)[j]);
  return out;
}

namespace {

void check_grid(const TimeGrid& grid, const BasisFamily& basis) {
  const auto& p = grid.points;
  if (p.size() < 2 || p.front() != 0.0) throw DomainError("time grid must start at 0 and have two points");
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!(p[i] > p[i - 1])) throw DomainError("time grid must increase strictly");
  if (p.back() > basis.horizon() * (1 + 1e-12)) throw DomainError("time grid exceeds the basis horizon");
}

// For each alpha != 0: position of alpha - eps_k (k = its last position) and alpha_k.
struct ParentLinks {
  std::vector<std::size_t> parent;
  std::vector<std::uint32_t> mode;
  std::vector<std::uint32_t> power;
};

ParentLinks parent_links(const IndexSet& set) {
  ParentLinks links;
  links.parent.resize(set.size());
  links.mode.resize(set.size());
  links.power.resize(set.size());
  for (std::size_t j = 1; j < set.size(); ++j) {
    const auto& a = set[j];
    const std::uint32_t k = a.max_position();
    links.parent[j] = *set.find(*mi_sub_eps(a, k));
    links.mode[j] = k;
    links.power[j] = a.at(k);
  }
  return links;
}

// S_qr = int_{-1}^{x_q} l_r(y) dy for the Lagrange basis l_r on the Gauss nodes x.
std::vector<double> spectral_integration(const NodeRule& gl) {
  const std::size_t n = gl.nodes.size();
  const auto& x = gl.nodes;
  std::vector<double> s(n * n, 0.0);
  for (std::size_t q = 0; q < n; ++q) {
    const double scale = 0.5 * (x[q] + 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = -1.0 + scale * (gl.nodes[j] + 1.0);
      const double w = scale * gl.weights[j];
      for (std::size_t r = 0; r < n; ++r) {
        double l = 1.0;
        for (std::size_t m = 0; m < n; ++m)
          if (m != r) l *= (y - x[m]) / (x[r] - x[m]);
        s[q * n + r] += w * l;
      }
    }
  }
  return s;
}

}  // namespace

PropagatorSolution solve_closed_form(const Kernel& kernel, const BasisFamily& basis, const Truncation& trunc,
                                     const TimeGrid& grid, const QuadratureRule& rule) {
  check_grid(grid, basis);
  const IndexSet set(trunc);
  const ParentLinks links = parent_links(set);
  PropagatorSolution sol{trunc, grid.points, set.indices(), {}, {}};
  sol.m_tilde = m_tilde_table(kernel, basis, trunc.modes, grid.points, rule);
  sol.u.assign(grid.points.size(), std::vector<double>(set.size(), 0.0));
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    auto& u = sol.u[i];
    const auto& mt = sol.m_tilde[i];
    u[0] = 1.0;
    // u_alpha = u_{alpha - eps_k} M~_k / sqrt(alpha_k) telescopes to M~^alpha / sqrt(alpha!).
    for (std::size_t j = 1; j < set.size(); ++j)
      u[j] = u[links.parent[j]] * mt[links.mode[j] - 1] / std::sqrt(static_cast<double>(links.power[j]));
  }
  return sol;
}

PropagatorSolution solve_picard(const Kernel& kernel, const BasisFamily& basis, const Truncation& trunc,
                                const TimeGrid& grid, int iterations, const PicardOptions& options) {
  check_grid(grid, basis);
  if (!kernel.adapted()) throw UnsupportedKernel("the Volterra system needs an adapted kernel");
  if (!kernel.has_derivative()) throw UnsupportedKernel("kernel '" + kernel.name() + "' provides no t-derivative");
  if (iterations < 1) throw ConfigError("solve_picard needs iterations >= 1");
  if (options.nodes_per_panel < 1 || options.grading_levels < 0) throw ConfigError("invalid Picard options");

  // Panels: the first interval graded toward 0, every interval split 2^(iterations-1) times.
  const auto& tp = grid.points;
  const int split = 1 << (iterations - 1);
  std::vector<std::pair<double, double>> panels;
  std::vector<std::size_t> grid_end(tp.size(), 0);  // number of panels up to t_i
  for (std::size_t i = 0; i + 1 < tp.size(); ++i) {
    const double lo = tp[i];
    const double hi = tp[i + 1];
    const double h = (hi - lo) / split;
    for (int p = 0; p < split; ++p) {
      const double a = lo + h * p;
      const double b = p + 1 == split ? hi : lo + h * (p + 1);
      if (i == 0 && p == 0 && options.grading_levels > 0) {
        const int levels = options.grading_levels;
        panels.emplace_back(a, a + (b - a) * std::ldexp(1.0, -levels));
        for (int j = levels; j > 0; --j)
          panels.emplace_back(a + (b - a) * std::ldexp(1.0, -j), a + (b - a) * std::ldexp(1.0, -j + 1));
      } else {
        panels.emplace_back(a, b);
      }
    }
    grid_end[i + 1] = panels.size();
  }

  const NodeRule& gl = gauss_legendre(options.nodes_per_panel);
  const std::size_t n = gl.nodes.size();
  const std::vector<double> s_mat = spectral_integration(gl);
  const std::size_t total = panels.size() * n;
  std::vector<double> node_t(total);
  for (std::size_t p = 0; p < panels.size(); ++p)
    for (std::size_t q = 0; q < n; ++q)
      node_t[p * n + q] = 0.5 * (panels[p].first + panels[p].second) + 0.5 * (panels[p].second - panels[p].first) * gl.nodes[q];

  const unsigned K = trunc.modes;
  // (K m_k) at every collocation node.
  std::vector<double> mt(total * K);
  detail::parallel_for(total, [&](std::size_t i) {
    for (unsigned k = 1; k <= K; ++k)
      mt[i * K + k - 1] = kernel.adjoint_apply([&](double s) { return basis.eval(k, s); }, node_t[i]);
  });

  const IndexSet set(trunc);
  PropagatorSolution sol{trunc, tp, set.indices(), {}, {}};
  sol.u.assign(tp.size(), std::vector<double>(set.size(), 0.0));
  for (auto& row : sol.u) row[0] = 1.0;

  std::vector<std::vector<double>> prev(1, std::vector<double>(total, 1.0));  // shell 0 at the nodes
  for (std::uint32_t order = 1; order <= trunc.max_order; ++order) {
    const auto [begin, end] = set.shell(order);
    const std::size_t prev_begin = set.shell(order - 1).first;
    std::vector<std::vector<double>> cur(end - begin);
    detail::parallel_for(end - begin, [&](std::size_t local) {
      const MultiIndex& alpha = set[begin + local];
      std::vector<double> f(total, 0.0);
      for (const auto& [k, ak] : alpha.entries()) {
        const auto& parent = prev[*set.find(*mi_sub_eps(alpha, k)) - prev_begin];
        const double c = std::sqrt(static_cast<double>(ak));
        for (std::size_t i = 0; i < total; ++i) f[i] += c * parent[i] * mt[i * K + k - 1];
      }
      std::vector<double> values(total);
      std::vector<double> ends(panels.size() + 1, 0.0);
      for (std::size_t p = 0; p < panels.size(); ++p) {
        const double half = 0.5 * (panels[p].second - panels[p].first);
        const double* fp = f.data() + p * n;
        double step = 0.0;
        for (std::size_t r = 0; r < n; ++r) step += gl.weights[r] * fp[r];
        for (std::size_t q = 0; q < n; ++q) {
          double partial = 0.0;
          for (std::size_t r = 0; r < n; ++r) partial += s_mat[q * n + r] * fp[r];
          values[p * n + q] = ends[p] + half * partial;
        }
        ends[p + 1] = ends[p] + half * step;
      }
      for (std::size_t i = 1; i < tp.size(); ++i) sol.u[i][begin + local] = ends[grid_end[i]];
      cur[local] = std::move(values);
    });
    prev = std::move(cur);
  }

  sol.m_tilde.assign(tp.size(), std::vector<double>(K, 0.0));
  if (trunc.max_order >= 1)
    for (std::size_t i = 0; i < tp.size(); ++i)
      for (unsigned k = 1; k <= K; ++k) sol.m_tilde[i][k - 1] = sol.u[i][*set.find(MultiIndex::unit(k))];
  return sol;
}

PropagatorSolution solve(const Kernel& kernel, const BasisFamily& basis, const Truncation& trunc, const TimeGrid& grid,
                         Interpretation interpretation, SolveMethod method) {
  if (interpretation == Interpretation::stratonovich)
    throw Unsupported(
        "the Stratonovich Wick equation couples u_alpha to u_{alpha+eps_k}; its system cannot be solved by "
        "induction on |alpha|");
  return method == SolveMethod::closed_form ? solve_closed_form(kernel, basis, trunc, grid)
                                            : solve_picard(kernel, basis, trunc, grid);
}

double second_moment(const PropagatorSolution& sol, double t) {
  double s = 0.0;
  for (double v : sol.u[sol.time_index(t)]) s += v * v;
  return s;
}

double max_discrepancy(const PropagatorSolution& a, const PropagatorSolution& b) {
  if (!(a.trunc == b.trunc) || a.times.size() != b.times.size())
    throw DimensionError("solutions differ in truncation or grid");
  double m = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i)
    for (std::size_t j = 0; j < a.u[i].size(); ++j) m = std::max(m, std::abs(a.u[i][j] - b.u[i][j]));
  return m;
}

void write_solution_csv(const PropagatorSolution& sol, std::ostream& out) {
  auto num = [](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  out << "t,alpha_id,coefficient\n";
  for (std::size_t i = 0; i < sol.times.size(); ++i)
    for (std::size_t j = 0; j < sol.indices.size(); ++j)
      out << num(sol.times[i]) << ',' << j << ',' << num(sol.u[i][j]) << '\n';
}

}  // namespace chaosint
