#pragma once

#include <iosfwd>
#include <vector>

#include "chaosint/basis.hpp"
#include "chaosint/chaos_expansion.hpp"
#include "chaosint/kernel.hpp"
#include "chaosint/multi_index.hpp"
#include "chaosint/quadrature.hpp"

namespace chaosint {

struct TimeGrid {
  std::vector<double> points;  // 0 = t_0 < ... < t_M = T

  /// M equal intervals on [0, T] (M + 1 points).
  static TimeGrid uniform(double horizon, int intervals);
  double horizon() const { return points.back(); }
};

/// Chaos coefficients u_alpha(t_i) of the solution of u(t) = 1 + X^<>_t(u).
struct PropagatorSolution {
  Truncation trunc;
  std::vector<double> times;
  std::vector<MultiIndex> indices;           // graded order; column j of u
  std::vector<std::vector<double>> u;        // u[i][j] = u_{indices[j]}(times[i])
  std::vector<std::vector<double>> m_tilde;  // m_tilde[i][k-1] = M~_k(times[i])

  /// Index of the grid time equal to t (within 1e-12 T); DomainError otherwise.
  std::size_t time_index(double t) const;
  ChaosExpansion at(std::size_t i) const;
};

/// u_alpha(t) = M~(t)^alpha / sqrt(alpha!).
PropagatorSolution solve_closed_form(const Kernel& kernel, const BasisFamily& basis, const Truncation& trunc,
                                     const TimeGrid& grid, const QuadratureRule& rule = QuadratureRule::singular());

struct PicardOptions {
  int nodes_per_panel = 10;
  /// Geometric splitting of the first interval toward t = 0, where the
  /// coefficients of fractional kernels behave like powers of t.
  int grading_levels = 40;
};

/// Solves u_alpha(t) = sum_k sqrt(alpha_k) int_0^t u_{alpha-eps_k}(s) (K m_k)(s) ds
/// shell by shell in |alpha| (the system is triangular, so one sweep is exact up
/// to quadrature). Each grid interval is split into 2^(iterations-1) panels
/// carrying Gauss-Legendre collocation nodes. Needs the kernel's t-derivative.
PropagatorSolution solve_picard(const Kernel& kernel, const BasisFamily& basis, const Truncation& trunc,
                                const TimeGrid& grid, int iterations = 1, const PicardOptions& options = {});

enum class Interpretation { ito, stratonovich };
enum class SolveMethod { closed_form, picard };

/// Dispatcher; the Stratonovich equation is rejected with Unsupported because
/// its coefficient system is not triangular in |alpha|.
PropagatorSolution solve(const Kernel& kernel, const BasisFamily& basis, const Truncation& trunc,
                         const TimeGrid& grid, Interpretation interpretation = Interpretation::ito,
                         SolveMethod method = SolveMethod::closed_form);

/// sum_alpha u_alpha(t)^2 at a grid time.
double second_moment(const PropagatorSolution& sol, double t);

/// Largest |u_alpha(t_i)| difference between two solutions on the same grid and truncation.
double max_discrepancy(const PropagatorSolution& a, const PropagatorSolution& b);

/// CSV rows "t,alpha_id,coefficient" with alpha_id the column in sol.indices.
void write_solution_csv(const PropagatorSolution& sol, std::ostream& out);

}  // namespace chaosint
