#ifndef VESD_FEM1D_HPP_
#define VESD_FEM1D_HPP_

#include <functional>
#include <span>
#include <vector>

namespace vesd {

/// Values at the interior nodes x_j = j h, j = 1..M-1 (boundary values are 0).
using NodalVector = std::vector<double>;

/// Values at all nodes x_j, j = 0..M. Used for data that need not vanish on
/// the boundary (sources, targets, controls).
using NodalField = std::vector<double>;

/// Uniform partition of (0,1) into M elements.
struct Mesh1D {
  int M = 2;
  double h = 0.5;

  explicit Mesh1D(int elements);
  int interior() const { return M - 1; }
  double node(int j) const { return j * h; }
};

/// Tridiagonal matrix on the interior nodes. sub[0] and super[n-1] are unused.
struct TriDiag {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;

  std::size_t size() const { return diag.size(); }
  void apply(std::span<const double> x, std::span<double> y) const;
  NodalVector apply(std::span<const double> x) const;
};

/// Thomas factorization, reusable across right-hand sides.
class TriDiagFactor {
 public:
  explicit TriDiagFactor(const TriDiag& A);
  void solve(std::span<const double> rhs, std::span<double> x) const;
  NodalVector solve(std::span<const double> rhs) const;

 private:
  std::vector<double> lower_;   // multipliers l_i = sub_i / d_{i-1}
  std::vector<double> pivot_;   // d_i
  std::vector<double> upper_;   // super_i
};

struct FemOperators {
  Mesh1D mesh;
  TriDiag mass;       // rows (h/6)[1 4 1]
  TriDiag stiffness;  // rows (1/h)[-1 2 -1]

  /**
   * (I_h f, phi_i) for i = 1..M-1, where I_h f is the interpolant in the
   * discrete space S_h (zero at both ends). `full` holds all M+1 nodal values;
   * the two boundary entries are ignored.
   */
  void load(std::span<const double> full, std::span<double> out) const;
};

FemOperators assemble(const Mesh1D& mesh);

/// Solve A x = rhs. Throws std::runtime_error on a zero pivot.
NodalVector tridiag_solve(const TriDiag& A, std::span<const double> rhs);

/// sqrt(h sum v_j^2) over the given values.
double l2_norm_discrete(std::span<const double> v, double h);

/// Trapezoidal L2(0,1) norm of a full nodal field (boundary values weighted by 1/2).
double l2_norm_trapezoid(std::span<const double> full, double h);

/// Trapezoidal integral over (0,1) of a full nodal field.
double trapezoid_integral(std::span<const double> full, double h);

NodalVector interpolate(const std::function<double(double)>& f, const Mesh1D& mesh);
NodalField interpolate_full(const std::function<double(double)>& f, const Mesh1D& mesh);

/// Pads interior values with zero boundary values.
NodalField with_boundary(std::span<const double> interior);

}  // namespace vesd

#endif  // VESD_FEM1D_HPP_
