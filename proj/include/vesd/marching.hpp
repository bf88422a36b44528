#ifndef VESD_MARCHING_HPP_
#define VESD_MARCHING_HPP_

#include <span>
#include <vector>

#include "vesd/fem1d.hpp"
#include "vesd/kernels.hpp"

namespace vesd {

/// Row-major (time level) x (node) array.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::span<double> row(int n) { return {data_.data() + static_cast<std::size_t>(n) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const double> row(int n) const {
    return {data_.data() + static_cast<std::size_t>(n) * cols_, static_cast<std::size_t>(cols_)};
  }
  double& operator()(int n, int j) { return data_[static_cast<std::size_t>(n) * cols_ + j]; }
  double operator()(int n, int j) const { return data_[static_cast<std::size_t>(n) * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  bool operator==(const SpaceTimeField&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Time levels 0..N of interior nodal values: (N+1) x (M-1).
using Trajectory = SpaceTimeField;

/**
 * Right-hand side of the fully discrete scheme. Rows are full nodal fields
 * (M+1 columns) indexed by time level; row 0 is never read.
 *
 * NodalHistory: F^n = sum_{j=1..n} bhat_{n-j} s^j (discrete I^{1-alpha0}).
 * DirectF:      F^n taken verbatim.
 */
struct ForcingPlan {
  enum class Mode { NodalHistory, DirectF };
  Mode mode = Mode::NodalHistory;
  SpaceTimeField samples;

  static ForcingPlan nodal_history(SpaceTimeField s) { return {Mode::NodalHistory, std::move(s)}; }
  static ForcingPlan direct(SpaceTimeField f) { return {Mode::DirectF, std::move(f)}; }
};

struct MarchOptions {
  /// Rebuild the left operator factorization at every step (reference path).
  bool refactor_each_step = false;
};

/// sum_{j=1..n} bhat_{n-j} phi^j over the rows of `samples`.
std::vector<double> discrete_frac_integral(std::span<const double> bhat, const SpaceTimeField& samples, int n);

/**
 * Fully discrete L1 / Galerkin scheme with zero initial data:
 * (b_0 Mass + Stiff) U^n = Mass sum_{k=1}^{n-1} (b_{n-k-1} - b_{n-k}) U^k
 *                          - Stiff sum_{j=1}^{n} w_j U^{n-j} + (F^n, phi).
 */
Trajectory solve_state(const KernelTables& tables, const FemOperators& fem, const ForcingPlan& plan,
                       const MarchOptions& options = {});

/**
 * Adjoint solve through the time-reversed variable zbar^n = Z^{N-n}, driven
 * by s^j = U^{N-j} - u_d(t_{N-j}). `ud_samples` holds full nodal fields at
 * t_0..t_N. Returns Z in forward time, so row N is zero.
 */
Trajectory solve_adjoint(const KernelTables& tables, const FemOperators& fem, const Trajectory& state,
                         const SpaceTimeField& ud_samples, const MarchOptions& options = {});

}  // namespace vesd

#endif  // VESD_MARCHING_HPP_
