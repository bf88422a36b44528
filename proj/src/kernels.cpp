#include "vesd/kernels.hpp"

#include <cmath>
#include <sstream>

namespace vesd {

void ExponentSpec::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::domain_error("ExponentSpec: horizon must be positive");
  const double a_start = alpha(0.0);
  const double a_end = alpha(horizon);
  if (!(a_start > 0.0 && a_start < 1.0 && a_end > 0.0 && a_end < 1.0)) {
    std::ostringstream os;
    os << "ExponentSpec: alpha(t) must stay in (0,1) on [0," << horizon << "], got alpha(0)=" << a_start
       << " alpha(T)=" << a_end;
    throw std::domain_error(os.str());
  }
}

JacobiRule g_rule(double alpha0, int node_count) {
  return jacobi_rule(node_count, kGradingPower * alpha0 - 1.0, -alpha0);
}

double g_eval(const ExponentSpec& spec, double t, const JacobiRule& rule) {
  if (!(t >= 0.0)) throw std::domain_error("g_eval: t must be non-negative");
  const double a0 = spec.alpha0;
  if (std::abs(rule.exp_left - (kGradingPower * a0 - 1.0)) > 1e-14 || std::abs(rule.exp_right + a0) > 1e-14) {
    throw std::invalid_argument("g_eval: rule was not built by g_rule for this alpha0");
  }
  if (t == 0.0) return 1.0;
  const double scale = kGradingPower * rgamma(1.0 - a0);
  return rule.integrate([&](double y) {
    double y_pow = 1.0;
    double geometric = 0.0;  // 1 + y + ... + y^{m-1}
    for (int i = 0; i < kGradingPower; ++i) {
      geometric += y_pow;
      y_pow *= y;
    }
    const double s = t * y_pow;
    return scale * std::exp(spec.slope * s * std::log(s)) * rgamma(spec.alpha(s)) * std::pow(geometric, -a0);
  });
}

std::vector<double> l1_coefficients(double alpha0, int N, double tau) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) throw std::domain_error("l1_coefficients: alpha0 must lie in (0,1)");
  if (N < 1 || !(tau > 0.0)) throw std::domain_error("l1_coefficients: need N >= 1 and tau > 0");
  const double e = 1.0 - alpha0;
  const double scale = std::pow(tau, -alpha0) * rgamma(2.0 - alpha0);
  std::vector<double> b(static_cast<std::size_t>(N));
  b[0] = scale;
  for (int j = 1; j < N; ++j) {
    // (j+1)^e - j^e without cancellation.
    const double jd = j;
    b[static_cast<std::size_t>(j)] = scale * std::pow(jd, e) * std::expm1(e * std::log1p(1.0 / jd));
  }
  return b;
}

std::vector<double> history_weights(const ExponentSpec& spec, int N, double tau, const JacobiRule& rule) {
  std::vector<double> w(static_cast<std::size_t>(N) + 1, 0.0);
  double g_prev = g_eval(spec, 0.0, rule);
  for (int j = 1; j <= N; ++j) {
    const double g = g_eval(spec, j * tau, rule);
    w[static_cast<std::size_t>(j)] = g - g_prev;
    g_prev = g;
  }
  return w;
}

std::vector<double> p_kernel(const std::vector<double>& b) {
  if (b.empty()) throw std::invalid_argument("p_kernel: empty coefficient sequence");
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(b[i] > 0.0) || (i > 0 && !(b[i] < b[i - 1]))) {
      throw std::invalid_argument("p_kernel: b must be positive and strictly decreasing");
    }
  }
  const std::size_t n = b.size();
  std::vector<double> P(n);
  const double inv_b0 = 1.0 / b[0];
  P[0] = inv_b0;
  for (std::size_t m = 1; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= m; ++i) acc += (b[i - 1] - b[i]) * P[m - i];
    P[m] = inv_b0 * acc;
  }
  return P;
}

KernelTables build_tables(const ExponentSpec& spec, int N, const JacobiRule& rule) {
  spec.validate();
  if (N < 1) throw std::domain_error("build_tables: N must be >= 1");
  KernelTables tables;
  tables.N = N;
  tables.tau = spec.horizon / N;
  tables.alpha0 = spec.alpha0;
  tables.g_vals.resize(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) tables.g_vals[static_cast<std::size_t>(n)] = g_eval(spec, n * tables.tau, rule);
  tables.w.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int j = 1; j <= N; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    tables.w[uj] = tables.g_vals[uj] - tables.g_vals[uj - 1];
  }
  tables.b = l1_coefficients(spec.alpha0, N, tables.tau);
  tables.bhat.resize(tables.b.size());
  for (std::size_t j = 0; j < tables.b.size(); ++j) tables.bhat[j] = tables.tau * tables.b[j];
  tables.P = p_kernel(tables.b);
  return tables;
}

KernelTables build_tables(const ExponentSpec& spec, int N) { return build_tables(spec, N, g_rule(spec.alpha0)); }

double abel_kernel(double gamma, double t) { return std::pow(t, gamma - 1.0) * rgamma(gamma); }

}  // namespace vesd
