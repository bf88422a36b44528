#ifndef VESD_SPECIAL_FN_HPP_
#define VESD_SPECIAL_FN_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vesd {

/// Raised when a series or quadrature cannot reach its accuracy target.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma function for x > 0 (Lanczos, g = 7, nine coefficients).
double gamma_fn(double x);

/// 1/Gamma(x) for any real x; zero at the poles 0, -1, -2, ...
double rgamma(double x);

/// Arguments of the two-parameter Mittag-Leffler function E_{p,pbar}(z).
struct MLParams {
  double p = 1.0;
  double pbar = 1.0;
  double z = 0.0;
};

/**
 * @brief Two-parameter Mittag-Leffler function for real argument.
 *
 * Uses the power series for z >= -1. For z < -1 and 0 < p < 1 the value is
 * taken from the real-axis Laplace inversion of s^{p-pbar}/(s^p - z), with
 * pbar first shifted into (1-p, 1] by the recurrence
 * E_{p,b}(z) = (E_{p,b-p}(z) - 1/Gamma(b-p)) / z. For p = 1 and z < -1 only
 * integer pbar >= 1 is supported (built up from exp(z)).
 */
double mittag_leffler(const MLParams& params);

/**
 * Gauss-Jacobi rule on (0,1) for the weight z^{exp_left} (1-z)^{exp_right}.
 * nodes are strictly increasing, weights positive.
 */
struct JacobiRule {
  int node_count = 0;
  double exp_left = 0.0;
  double exp_right = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Sum of weight_i * f(node_i).
  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Golub-Welsch nodes polished by Newton, Christoffel weights.
JacobiRule jacobi_rule(int node_count, double exp_left, double exp_right);

/// Euler Beta function B(a, b) for a, b > 0.
double beta_fn(double a, double b);

}  // namespace vesd

#endif  // VESD_SPECIAL_FN_HPP_
