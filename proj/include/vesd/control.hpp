#ifndef VESD_CONTROL_HPP_
#define VESD_CONTROL_HPP_

#include <stdexcept>
#include <vector>

#include "vesd/fem1d.hpp"
#include "vesd/kernels.hpp"
#include "vesd/marching.hpp"

namespace vesd {

/// Discrete optimality system: minimize J over controls with nonnegative mean.
struct ControlProblem {
  ExponentSpec spec;
  int N = 16;
  int M = 32;
  double kappa = 1.0;
  SpaceTimeField q_samples;   // (N+1) x (M+1); rows 1..N used
  SpaceTimeField ud_samples;  // (N+1) x (M+1); rows 0..N-1 drive the adjoint, row N only enters J
  double tol = 1e-6;
  int max_iters = 500;
  int quad_nodes = kDefaultQuadNodes;
};

struct OptimalityResult {
  Trajectory U;
  Trajectory Z;
  SpaceTimeField C;  // N x (M+1): control rows 0..N-1 including boundary values
  int iterations = 0;
  double residual = 0.0;
  double objective = 0.0;
  std::vector<double> residual_history;
  std::vector<double> objective_history;  // J(U_k, C_k) for the control used at each iterate
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

/**
 * kappa C = max{0, mean(z)} - z, with mean(z) the trapezoidal integral of the
 * piecewise-linear extension of the interior values z (zero on the boundary).
 * Returns the full nodal row (M+1 values); the boundary entries are
 * max{0, mean(z)}/kappa since z vanishes there.
 */
NodalField project_control(std::span<const double> z_row, double kappa, double h);

/// Fixed-point loop: state -> adjoint -> projection until the sup-norm update < tol.
OptimalityResult fixed_point_optimize(const ControlProblem& problem);

/// Same loop with prebuilt tables and operators.
OptimalityResult fixed_point_optimize(const ControlProblem& problem, const KernelTables& tables,
                                      const FemOperators& fem);

/**
 * J = 1/2 int ||U - u_d||^2 dt + kappa/2 int ||C||^2 dt, trapezoid in time and
 * space. C has N rows (levels 0..N-1); the control at t_N is zero because
 * Z^N = 0.
 */
double objective_eval(const Trajectory& U, const SpaceTimeField& ud_samples, const SpaceTimeField& C, double kappa,
                      double h, double tau);

}  // namespace vesd

#endif  // VESD_CONTROL_HPP_
