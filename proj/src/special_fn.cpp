#include "vesd/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace vesd {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,      -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};

// log Gamma(x) for x >= 0.5.
double lanczos_log_gamma(double x) {
  const double xm = x - 1.0;
  double a = kLanczosCoef[0];
  const double t = xm + kLanczosG + 0.5;
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) a += kLanczosCoef[i] / (xm + static_cast<double>(i));
  return 0.5 * std::log(2.0 * kPi) + (xm + 0.5) * std::log(t) - t + std::log(a);
}

// Gamma(x) for x >= 0.5, direct form while it cannot overflow.
double lanczos_gamma(double x) {
  if (x > 140.0) return std::exp(lanczos_log_gamma(x));
  const double xm = x - 1.0;
  double a = kLanczosCoef[0];
  const double t = xm + kLanczosG + 0.5;
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) a += kLanczosCoef[i] / (xm + static_cast<double>(i));
  const double tp = std::pow(t, 0.5 * (xm + 0.5));
  return std::sqrt(2.0 * kPi) * tp * (tp * std::exp(-t)) * a;
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

constexpr double kSeriesRadius = 1.0;
constexpr int kSeriesMaxTerms = 2000;

double ml_series(double p, double pbar, double z) {
  double sum = 0.0;
  double zk = 1.0;
  int small_run = 0;
  for (int k = 0; k < kSeriesMaxTerms; ++k) {
    const double term = zk * rgamma(p * k + pbar);
    sum += term;
    // Terms can vanish at Gamma poles, so require two small terms in a row.
    if (std::abs(term) <= 1e-16 * std::abs(sum) || (term == 0.0 && zk == 0.0)) {
      if (++small_run >= 2) return sum;
    } else {
      small_run = 0;
    }
    zk *= z;
    if (!std::isfinite(zk)) break;
  }
  std::ostringstream os;
  os << "mittag_leffler: series did not converge for p=" << p << " pbar=" << pbar << " z=" << z;
  throw EvaluationError(os.str());
}

// E_{p,b}(-x) for 0 < p < 1, 0 < b <= 1, x > 0, from
//   E = -(1/(pi p)) int_0^inf exp(-u^{1/p}) u^{(1-b)/p}
//         (x sin(pi(p-b)) - u sin(pi b)) / (u^2 + 2 x u cos(pi p) + x^2) du,
// which is the Hankel-contour inversion after the substitution u = r^p.
double ml_negative_axis(double p, double b, double x) {
  const double s_pb = std::sin(kPi * (p - b));
  const double s_b = std::sin(kPi * b);
  const double c_p = std::cos(kPi * p);
  const double lead = -1.0 / (kPi * p);
  const double inv_p = 1.0 / p;
  const double power = (1.0 - b) / p;
  auto integrand = [=](double u) {
    const double den = u * u + 2.0 * x * u * c_p + x * x;
    const double decay = std::exp(-std::pow(u, inv_p));
    const double pw = power == 0.0 ? 1.0 : std::pow(u, power);
    return lead * decay * pw * (x * s_pb - u * s_b) / den;
  };
  // Split where the denominator is smallest so the peak sits at an endpoint.
  const double split = c_p < 0.0 ? -x * c_p : x;
  constexpr double kTol = 1e-14;
  double err_left = 0.0;
  double err_right = 0.0;
  boost::math::quadrature::tanh_sinh<double> finite;
  boost::math::quadrature::exp_sinh<double> half_line;
  const double left = finite.integrate(integrand, 0.0, split, kTol, &err_left);
  const double right =
      half_line.integrate(integrand, split, std::numeric_limits<double>::infinity(), kTol, &err_right);
  const double value = left + right;
  if (!(err_left + err_right <= 1e-11 * std::max(1.0, std::abs(value)))) {
    std::ostringstream os;
    os << "mittag_leffler: quadrature error estimate " << err_left + err_right << " too large at p=" << p
       << " pbar=" << b << " z=" << -x;
    throw EvaluationError(os.str());
  }
  return value;
}

double ml_large_negative(double p, double pbar, double z) {
  if (p == 1.0) {
    if (pbar < 1.0 || pbar != std::floor(pbar)) {
      throw std::domain_error("mittag_leffler: p = 1 with z < -1 requires integer pbar >= 1");
    }
    double e = std::exp(z);
    for (int m = 1; m < static_cast<int>(pbar); ++m) e = (e - rgamma(m)) / z;
    return e;
  }
  if (pbar > 1.0) return (ml_large_negative(p, pbar - p, z) - rgamma(pbar - p)) / z;
  if (pbar <= 0.0) return rgamma(pbar) + z * ml_large_negative(p, pbar + p, z);
  return ml_negative_axis(p, pbar, -z);
}

// Orthonormal polynomial q_n and its derivative from the three-term recurrence
// x q_k = sqrt(beta_{k+1}) q_{k+1} + alpha_k q_k + sqrt(beta_k) q_{k-1}.
struct OrthoEval {
  double value;
  double derivative;
  double christoffel_sum;  // sum_{k<n} q_k(x)^2
};

OrthoEval eval_orthonormal(const std::vector<double>& alpha, const std::vector<double>& sqrt_beta, double mu0,
                           double x) {
  const std::size_t n = alpha.size();
  double q_prev = 0.0;
  double q = 1.0 / std::sqrt(mu0);
  double d_prev = 0.0;
  double d = 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += q * q;
    const double sb_k = k == 0 ? 0.0 : sqrt_beta[k - 1];
    const double q_next = ((x - alpha[k]) * q - sb_k * q_prev) / sqrt_beta[k];
    const double d_next = ((x - alpha[k]) * d + q - sb_k * d_prev) / sqrt_beta[k];
    q_prev = q;
    q = q_next;
    d_prev = d;
    d = d_next;
  }
  return {q, d, sum};
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "gamma_fn: argument must be positive, got " << x;
    throw std::domain_error(os.str());
  }
  if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  return lanczos_gamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x < 0.5) return std::sin(kPi * x) * lanczos_gamma(1.0 - x) / kPi;
  if (x > 140.0) return std::exp(-lanczos_log_gamma(x));
  return 1.0 / lanczos_gamma(x);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_fn: arguments must be positive");
  if (a + b > 140.0) return std::exp(lanczos_log_gamma(a) + lanczos_log_gamma(b) - lanczos_log_gamma(a + b));
  return gamma_fn(a) * gamma_fn(b) * rgamma(a + b);
}

double mittag_leffler(const MLParams& params) {
  const double p = params.p;
  const double pbar = params.pbar;
  const double z = params.z;
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("mittag_leffler: p must lie in (0, 1]");
  if (!std::isfinite(pbar) || !std::isfinite(z)) throw std::domain_error("mittag_leffler: non-finite argument");
  if (z == 0.0) return rgamma(pbar);
  if (z >= -kSeriesRadius) return ml_series(p, pbar, z);
  return ml_large_negative(p, pbar, z);
}

JacobiRule jacobi_rule(int node_count, double exp_left, double exp_right) {
  if (node_count < 1) throw std::domain_error("jacobi_rule: node_count must be >= 1");
  if (!(exp_left > -1.0) || !(exp_right > -1.0)) {
    throw std::domain_error("jacobi_rule: exponents must exceed -1");
  }
  // Standard Jacobi recurrence on [-1,1] with weight (1-x)^a (1+x)^b, then
  // mapped to (0,1) via z = (1+x)/2.
  const double a = exp_right;
  const double b = exp_left;
  const auto n = static_cast<std::size_t>(node_count);
  std::vector<double> alpha(n);
  std::vector<double> sqrt_beta(n);  // sqrt_beta[k] couples degree k and k+1
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + a + b;
    const double ak = k == 0 ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    alpha[k] = 0.5 * (1.0 + ak);
    const double k1 = kk + 1.0;
    const double s1 = 2.0 * k1 + a + b;
    double bk1;
    if (k == 0) {
      bk1 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      bk1 = 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0));
    }
    sqrt_beta[k] = 0.5 * std::sqrt(bk1);
  }
  const double mu0 = beta_fn(exp_left + 1.0, exp_right + 1.0);

  std::vector<double> nodes(n);
  if (n == 1) {
    nodes[0] = alpha[0];
  } else {
    Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
    Eigen::VectorXd off(static_cast<Eigen::Index>(n - 1));
    for (std::size_t k = 0; k < n; ++k) diag[static_cast<Eigen::Index>(k)] = alpha[k];
    for (std::size_t k = 0; k + 1 < n; ++k) off[static_cast<Eigen::Index>(k)] = sqrt_beta[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw EvaluationError("jacobi_rule: eigenvalue iteration failed");
    for (std::size_t k = 0; k < n; ++k) nodes[k] = solver.eigenvalues()[static_cast<Eigen::Index>(k)];
  }

  JacobiRule rule;
  rule.node_count = node_count;
  rule.exp_left = exp_left;
  rule.exp_right = exp_right;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = nodes[i];
    for (int it = 0; it < 3; ++it) {
      const OrthoEval e = eval_orthonormal(alpha, sqrt_beta, mu0, x);
      if (e.derivative == 0.0) break;
      const double step = e.value / e.derivative;
      const double next = x - step;
      if (!(next > 0.0 && next < 1.0)) break;
      x = next;
      if (std::abs(step) <= 1e-16 * std::max(x, 1e-300)) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / eval_orthonormal(alpha, sqrt_beta, mu0, x).christoffel_sum;
  }
  return rule;
}

}  // namespace vesd
