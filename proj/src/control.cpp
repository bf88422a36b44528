#include "vesd/control.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vesd {

NodalField project_control(std::span<const double> z_row, double kappa, double h) {
  if (!(kappa > 0.0)) throw std::domain_error("project_control: kappa must be positive");
  double mean = 0.0;
  for (double z : z_row) mean += z;
  mean *= h;  // trapezoid with zero boundary values; |Omega| = 1
  const double lifted = std::max(0.0, mean) / kappa;
  NodalField c(z_row.size() + 2, lifted);
  for (std::size_t i = 0; i < z_row.size(); ++i) c[i + 1] = lifted - z_row[i] / kappa;
  return c;
}

double objective_eval(const Trajectory& U, const SpaceTimeField& ud_samples, const SpaceTimeField& C, double kappa,
                      double h, double tau) {
  const int N = U.rows() - 1;
  const int full = U.cols() + 2;
  if (ud_samples.rows() != N + 1 || ud_samples.cols() != full || C.rows() != N || C.cols() != full) {
    throw std::invalid_argument("objective_eval: dimension mismatch");
  }
  std::vector<double> diff(static_cast<std::size_t>(full));
  auto tracking = [&](int n) {
    const auto u = U.row(n);
    const auto ud = ud_samples.row(n);
    diff.front() = -ud.front();
    diff.back() = -ud.back();
    for (std::size_t i = 0; i < u.size(); ++i) diff[i + 1] = u[i] - ud[i + 1];
    const double norm = l2_norm_trapezoid(diff, h);
    return norm * norm;
  };
  auto control = [&](int n) {
    if (n == N) return 0.0;
    const double norm = l2_norm_trapezoid(C.row(n), h);
    return norm * norm;
  };
  double J = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double weight = (n == 0 || n == N) ? 0.5 * tau : tau;
    J += weight * (0.5 * tracking(n) + 0.5 * kappa * control(n));
  }
  return J;
}

OptimalityResult fixed_point_optimize(const ControlProblem& problem) {
  problem.spec.validate();
  const KernelTables tables = build_tables(problem.spec, problem.N, g_rule(problem.spec.alpha0, problem.quad_nodes));
  const FemOperators fem = assemble(Mesh1D(problem.M));
  return fixed_point_optimize(problem, tables, fem);
}

OptimalityResult fixed_point_optimize(const ControlProblem& problem, const KernelTables& tables,
                                      const FemOperators& fem) {
  const int N = problem.N;
  const int M = problem.M;
  if (tables.N != N || fem.mesh.M != M) throw std::invalid_argument("fixed_point_optimize: tables/mesh mismatch");
  if (!(problem.kappa > 0.0) || !(problem.tol > 0.0) || problem.max_iters < 1) {
    throw std::domain_error("fixed_point_optimize: need kappa > 0, tol > 0, max_iters >= 1");
  }
  if (problem.q_samples.rows() != N + 1 || problem.q_samples.cols() != M + 1 || problem.ud_samples.rows() != N + 1 ||
      problem.ud_samples.cols() != M + 1) {
    throw std::invalid_argument("fixed_point_optimize: sample arrays must be (N+1) x (M+1)");
  }
  const double h = fem.mesh.h;

  OptimalityResult result;
  SpaceTimeField C(N, M + 1);
  SpaceTimeField forcing(N + 1, M + 1);
  for (int it = 1; it <= problem.max_iters; ++it) {
    // s^j = q^j + C^{j-1}
    for (int j = 1; j <= N; ++j) {
      const auto q = problem.q_samples.row(j);
      const auto c = C.row(j - 1);
      auto s = forcing.row(j);
      for (int i = 0; i <= M; ++i) s[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(i)];
    }
    Trajectory U = solve_state(tables, fem, ForcingPlan::nodal_history(forcing));
    Trajectory Z = solve_adjoint(tables, fem, U, problem.ud_samples);
    result.objective_history.push_back(objective_eval(U, problem.ud_samples, C, problem.kappa, h, tables.tau));

    SpaceTimeField C_next(N, M + 1);
    double residual = 0.0;
    for (int n = 0; n < N; ++n) {
      const NodalField row = project_control(Z.row(n), problem.kappa, h);
      auto dst = C_next.row(n);
      const auto old = C.row(n);
      for (std::size_t i = 0; i < row.size(); ++i) {
        dst[i] = row[i];
        residual = std::max(residual, std::abs(row[i] - old[i]));
      }
    }
    result.residual_history.push_back(residual);
    result.objective = result.objective_history.back();
    result.U = std::move(U);
    result.Z = std::move(Z);
    result.residual = residual;
    result.iterations = it;
    C = std::move(C_next);
    if (residual < problem.tol) {
      result.C = std::move(C);
      return result;
    }
  }
  std::ostringstream os;
  os << "fixed_point_optimize: no convergence after " << problem.max_iters << " iterations (residual "
     << result.residual << ", tol " << problem.tol << ")";
  throw NonConvergenceError(os.str(), result.residual);
}

}  // namespace vesd
