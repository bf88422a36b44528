#ifndef VESD_KERNELS_HPP_
#define VESD_KERNELS_HPP_

#include <vector>

#include "vesd/special_fn.hpp"

namespace vesd {

/// Affine variable exponent alpha(t) = alpha0 + slope * t on [0, horizon].
struct ExponentSpec {
  double alpha0 = 0.5;
  double slope = 0.0;
  double horizon = 1.0;

  double alpha(double t) const { return alpha0 + slope * t; }

  /// Throws std::domain_error unless 0 < alpha(t) < 1 on [0, horizon].
  void validate() const;
};

/// Exponent of the graded substitution z = y^m used by g_eval and the
/// manufactured-solution memory integrals.
inline constexpr int kGradingPower = 4;
inline constexpr int kDefaultQuadNodes = 64;

/// The Jacobi rule g_eval expects: weight y^{m alpha0 - 1} (1-y)^{-alpha0}.
JacobiRule g_rule(double alpha0, int node_count = kDefaultQuadNodes);

/**
 * @brief Generalized identity function g = beta_{1-alpha0} * k at time t.
 *
 * g(t) = int_0^1 (tz)^{alpha(tz)-alpha0} / (Gamma(1-alpha0) Gamma(alpha(tz)))
 *        (1-z)^{-alpha0} z^{alpha0-1} dz,
 * evaluated after z = y^m so the t z ln(tz) behaviour at z = 0 becomes smooth.
 * `rule` must come from g_rule(spec.alpha0, n). g(0) = 1 exactly.
 */
double g_eval(const ExponentSpec& spec, double t, const JacobiRule& rule);

/// L1 coefficients b_j, j = 0..N-1.
std::vector<double> l1_coefficients(double alpha0, int N, double tau);

/// History weights w_j = g(t_j) - g(t_{j-1}); index 0 holds 0 so w[j] matches w_j.
std::vector<double> history_weights(const ExponentSpec& spec, int N, double tau, const JacobiRule& rule);

/// Discrete convolution kernel: P_0 = 1/b_0, P_m = (1/b_0) sum_{i=1..m} (b_{i-1}-b_i) P_{m-i}.
std::vector<double> p_kernel(const std::vector<double>& b);

/// Per-(spec, N) sequences shared by the state and adjoint solvers.
struct KernelTables {
  int N = 0;
  double tau = 0.0;
  double alpha0 = 0.0;
  std::vector<double> g_vals;  // g(t_n), n = 0..N
  std::vector<double> w;       // w[0] = 0, w[j] = w_j for j = 1..N
  std::vector<double> b;       // b_j, j = 0..N-1
  std::vector<double> bhat;    // tau * b_j
  std::vector<double> P;       // P_j, j = 0..N-1
};

KernelTables build_tables(const ExponentSpec& spec, int N, const JacobiRule& rule);

/// Convenience overload with the default rule.
KernelTables build_tables(const ExponentSpec& spec, int N);

/// Abel kernel beta_gamma(t) = t^{gamma-1} / Gamma(gamma).
double abel_kernel(double gamma, double t);

}  // namespace vesd

#endif  // VESD_KERNELS_HPP_
