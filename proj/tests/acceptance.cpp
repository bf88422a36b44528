// Acceptance run: one verdict line per primary criterion.
//
// Usage: acceptance [--expect-fail i,j,...]
// Exit status is 0 when the set of failing criteria equals the expected set
// (empty by default), 1 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vesd/harness.hpp"

namespace {

using namespace vesd;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("violated: " + what);
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void compare_report(Check& c, const ConvergenceReport& got, const std::vector<double>& ref_err,
                    const std::vector<double>& ref_rate, double rate_tol) {
  const std::string tag = got.label + " " + got.variable + " " + got.direction;
  std::ostringstream line;
  line << "    " << tag << ":";
  for (std::size_t i = 0; i < got.rows.size(); ++i) {
    const auto& row = got.rows[i];
    line << "  " << row.param << ": " << num(row.error) << " (ref " << num(ref_err[i]) << ")";
    const double ratio = row.error / ref_err[i];
    c.require(ratio >= 0.5 && ratio <= 2.0, tag + " error at " + std::to_string(row.param) + " off by factor " +
                                                 fixed2(ratio > 1 ? ratio : 1 / ratio));
    if (row.rate) {
      line << " rate " << fixed2(*row.rate) << " (ref " << fixed2(ref_rate[i - 1]) << ")";
      c.require(std::abs(*row.rate - ref_rate[i - 1]) <= rate_tol,
                tag + " rate at " + std::to_string(row.param) + " = " + fixed2(*row.rate) + ", reference " +
                    fixed2(ref_rate[i - 1]));
    }
  }
  std::cout << line.str() << '\n';
}

// Reference two-mesh errors and rates for the q = 1 state problem.
struct StateReference {
  double alpha0;
  std::vector<double> e_tau, r_tau, e_h, r_h;
};

const std::vector<StateReference> kStateReference{
    {0.4, {3.3834e-5, 1.8048e-5, 9.1291e-6, 4.4025e-6}, {0.91, 0.98, 1.05},
     {8.1507e-4, 2.1260e-4, 5.4287e-5, 1.3716e-5}, {1.94, 1.97, 1.98}},
    {0.7, {9.7381e-5, 4.2862e-5, 1.8348e-5, 7.6958e-6}, {1.18, 1.22, 1.25},
     {1.0108e-3, 2.6336e-4, 6.7208e-5, 1.6975e-5}, {1.94, 1.97, 1.99}},
    {0.95, {2.4991e-4, 1.2262e-4, 6.0049e-5, 2.8964e-5}, {1.03, 1.03, 1.05},
     {1.2900e-3, 3.3474e-4, 8.5225e-5, 2.1499e-5}, {1.95, 1.97, 1.99}},
};

Check criterion1() {
  Check c;
  const StudyConfig config = default_config("1");
  for (const auto& ref : kStateReference) {
    const auto reports = run_state_study(config, ref.alpha0, 32, 64);
    compare_report(c, reports[0], ref.e_tau, ref.r_tau, 0.15);
    compare_report(c, reports[1], ref.e_h, ref.r_h, 0.10);
  }
  return c;
}

Check criterion2() {
  Check c;
  const StudyConfig config = default_config("2");
  ControlStudy study;
  try {
    study = run_control_study(config, 32, 16);
  } catch (const NonConvergenceError& e) {
    c.require(false, e.what());
    return c;
  }
  // Order matches run_control_study: U, Z, C temporal then U, Z, C spatial.
  const std::vector<std::vector<double>> ref_err{
      {1.0082e-3, 5.6310e-4, 3.1525e-4, 1.7609e-4}, {5.4381e-4, 2.7382e-4, 1.3771e-4, 6.9148e-5},
      {6.2150e-4, 3.1293e-4, 1.5738e-4, 7.9027e-5}, {4.6509e-3, 1.2643e-3, 3.2909e-4, 8.3932e-5},
      {1.5193e-3, 3.7235e-4, 9.2563e-5, 2.3107e-5}, {1.7363e-3, 4.2554e-4, 1.0579e-4, 2.6408e-5}};
  const std::vector<std::vector<double>> ref_rate{{0.84, 0.84, 0.84}, {0.99, 0.99, 0.99}, {0.99, 0.99, 0.99},
                                                  {1.88, 1.94, 1.97}, {2.03, 2.01, 2.00}, {2.03, 2.01, 2.00}};
  for (std::size_t i = 0; i < study.reports.size(); ++i) {
    compare_report(c, study.reports[i], ref_err[i], ref_rate[i], i < 3 ? 0.15 : 0.10);
  }
  std::cout << "    fixed-point iterations (max over ladder): " << study.max_iterations << '\n';
  c.require(study.max_iterations <= 100, "fixed-point iteration count exceeds 100");
  return c;
}

Check criterion3() {
  Check c;
  const double T = 1.0;
  for (double a : {0.4, 0.7}) {
    std::vector<double> et, eh;
    for (int N : {64, 128, 256, 512}) et.push_back(constant_exponent_error(a, T, N, 512));
    for (int M : {8, 16, 32, 64}) eh.push_back(constant_exponent_error(a, T, 2048, M));
    const auto rt = rates_from_errors(et);
    const auto rh = rates_from_errors(eh);
    std::cout << "    alpha0=" << a << " temporal orders:";
    for (double r : rt) std::cout << ' ' << fixed2(r);
    std::cout << "  spatial orders:";
    for (double r : rh) std::cout << ' ' << fixed2(r);
    std::cout << '\n';
    for (double r : rt) c.require(r >= 0.85, "temporal order " + fixed2(r) + " < 0.85");
    for (double r : rh) c.require(r >= 1.85 && r <= 2.1, "spatial order " + fixed2(r) + " outside [1.85, 2.1]");
  }
  return c;
}

Check criterion4() {
  Check c;
  double worst_identity = 0.0;
  for (double a : {0.4, 0.7, 0.95}) {
    for (int N = 1; N <= 128; ++N) {
      const KernelTables t = build_tables({a, -1.0 / 6.0, 0.5}, N);
      // P_0 = 1/b_0 equals the bound exactly, so allow rounding at the tie.
      const double bound = gamma_fn(2.0 - a) * std::pow(t.tau, a) * (1.0 + 1e-12);
      for (int m = 0; m < N; ++m) {
        const double p = t.P[static_cast<std::size_t>(m)];
        c.require(p > 0.0 && p <= bound, "P bound at alpha0=" + std::to_string(a) + ", N=" + std::to_string(N));
      }
      for (int k = 1; k <= N; ++k) {
        for (int n = k; n <= N; ++n) {
          double s = 0.0;
          for (int j = k; j <= n; ++j) s += t.P[static_cast<std::size_t>(n - j)] * t.b[static_cast<std::size_t>(j - k)];
          worst_identity = std::max(worst_identity, std::abs(s - 1.0));
        }
      }
      for (int m : {0, 1}) {
        for (int n = 1; n <= N; ++n) {
          double s = 0.0;
          for (int j = 1; j <= n; ++j) {
            s += t.P[static_cast<std::size_t>(n - j)] * abel_kernel(1.0 + m * a - a, j * t.tau);
          }
          c.require(s <= abel_kernel(1.0 + m * a, n * t.tau) * (1.0 + 1e-12),
                    "resolvent bound m=" + std::to_string(m) + " at n=" + std::to_string(n));
        }
      }
    }
  }
  std::cout << "    max |sum P b - 1| over N <= 128: " << num(worst_identity) << '\n';
  c.require(worst_identity <= 1e-12, "identity residual above 1e-12");
  return c;
}

Check criterion5() {
  Check c;
  std::mt19937_64 rng(20240517);
  std::uniform_int_distribution<int> mesh(2, 256);
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  double worst_mean = 0.0;
  double worst_scale = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int M = mesh(rng);
    const double h = 1.0 / M;
    std::vector<double> z(static_cast<std::size_t>(M - 1));
    const double shift = value(rng);
    for (double& v : z) v = shift + value(rng);
    const double kappa = std::exp(log_scale(rng));
    const double s = std::exp(log_scale(rng));
    const NodalField row = project_control(z, kappa, h);
    worst_mean = std::min(worst_mean, trapezoid_integral(row, h));
    std::vector<double> zs(z);
    for (double& v : zs) v *= s;
    const NodalField scaled = project_control(zs, s * kappa, h);
    for (std::size_t i = 0; i < row.size(); ++i) {
      worst_scale = std::max(worst_scale, std::abs(row[i] - scaled[i]) / std::max(1.0, std::abs(row[i])));
    }
  }
  std::cout << "    min mean(C) = " << num(worst_mean) << ", max scaling deviation = " << num(worst_scale) << '\n';
  c.require(worst_mean >= -1e-12, "mean constraint");
  c.require(worst_scale <= 1e-12, "scaling invariance");
  return c;
}

Check criterion6() {
  Check c;
  const StudyConfig config = default_config("3");
  for (char which : {'a', 'b'}) {
    const ManufacturedStudy s = run_manufactured_study(config, which);
    std::cout << "    case (" << which << "): rel L2 U^N " << num(s.rel_error_U_final) << ", Z^0 "
              << num(s.rel_error_Z_initial) << ", C " << num(s.rel_error_C) << " (iterations " << s.result.iterations
              << ")\n";
    const std::string tag = std::string("case (") + which + ") ";
    c.require(s.rel_error_U_final <= 0.05, tag + "U^N above 5%");
    c.require(s.rel_error_Z_initial <= 0.05, tag + "Z^0 above 5%");
    c.require(s.rel_error_C <= 0.05, tag + "C above 5% (regression proxy)");
  }
  return c;
}

std::set<int> parse_expected(int argc, char** argv) {
  std::set<int> out;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0) {
      std::string list = argv[i + 1];
      for (char& ch : list) {
        if (ch == ',') ch = ' ';
      }
      std::istringstream is(list);
      for (int k; is >> k;) out.insert(k);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::set<int> expected = parse_expected(argc, argv);
  const std::vector<std::pair<std::string, Check (*)()>> criteria{
      {"example1 state study: reference errors and rates", criterion1},
      {"example2 control study: reference errors, rates and iteration count", criterion2},
      {"constant-exponent Mittag-Leffler oracle orders", criterion3},
      {"discrete resolvent identity, bound and Abel-kernel inequality", criterion4},
      {"projection mean constraint and scaling invariance", criterion5},
      {"manufactured optimal control within 5% (regression proxy)", criterion6},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& note : result.notes) std::cout << "    " << note << '\n';
    std::cout << (result.ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << criteria[i].first << "  ["
              << fixed2(secs) << " s]" << std::endl;
    if (!result.ok) failed.insert(id);
  }
  if (failed == expected) return 0;
  std::cout << "unexpected outcome: failing set differs from --expect-fail list\n";
  return 1;
}
