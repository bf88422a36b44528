#ifndef VESD_HARNESS_HPP_
#define VESD_HARNESS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vesd/config.hpp"
#include "vesd/control.hpp"
#include "vesd/kernels.hpp"
#include "vesd/marching.hpp"

namespace vesd {

// --- two-mesh error estimates -------------------------------------------------

/**
 * max_n sqrt(h sum_j (fine[2n][j] - coarse[n][j])^2) over every coarse row n.
 * fine must have 2*rows-1 (levels 0..2N) or 2*rows (levels 0..2N-1) rows and
 * the same columns.
 */
double two_mesh_temporal_error(const SpaceTimeField& coarse, const SpaceTimeField& fine, double h);

/**
 * max_n sqrt(h sum_j (fine[n][2j+1] - coarse[n][j])^2) with zero-based
 * interior columns (coarse has M-1, fine 2M-1) and h the coarse mesh size.
 */
double two_mesh_spatial_error(const SpaceTimeField& coarse, const SpaceTimeField& fine, double h);

/// rates[i] = log2(errors[i] / errors[i+1]).
std::vector<double> rates_from_errors(const std::vector<double>& errors);

/// Drop the first and last column (boundary nodes) of full nodal rows.
SpaceTimeField interior_columns(const SpaceTimeField& full);

struct ReportRow {
  int param = 0;
  double error = 0.0;
  std::optional<double> rate;
};

struct ConvergenceReport {
  std::string label;      // e.g. "alpha0=0.4"
  std::string variable;   // U | Z | C
  std::string direction;  // temporal | spatial
  std::vector<ReportRow> rows;
};

ConvergenceReport make_report(std::string label, std::string variable, std::string direction,
                              const std::vector<int>& params, const std::vector<double>& errors);

// --- problem data --------------------------------------------------------------

/// Full-node samples of f(x, t_n), n = 0..N.
SpaceTimeField sample_space_time(const std::function<double(double, double)>& f, int N, double T, int M);

// --- manufactured solutions ---------------------------------------------------

/// u = t^power phi(x), z = z_scale (T - t)^power phi(x).
struct SeparableSolution {
  std::function<double(double)> phi;
  std::function<double(double)> phi_xx;
  double power = 0.8;
  double z_scale = 2.0;
};

/// Case (a): phi = sin(pi x); case (b): phi = x^2 (1-x)^2.
SeparableSolution manufactured_case(char which);

struct ManufacturedData {
  SpaceTimeField q_samples;   // (N+1) x (M+1)
  SpaceTimeField ud_samples;  // (N+1) x (M+1); row N evaluated at t_N - tau/2
  SpaceTimeField c_exact;     // (N+1) x (M+1)
  SpaceTimeField u_exact;     // (N+1) x (M+1)
  SpaceTimeField z_exact;     // (N+1) x (M+1)
};

/**
 * int_0^t k(t-s) s^power ds with k(r) = r^{alpha(r)-1}/Gamma(alpha(r)),
 * by Gauss-Jacobi after the graded substitution t - s = t y^m. Compares the
 * node_count and 2*node_count rules and throws EvaluationError if they differ
 * by more than 1e-7 (relative to max(1, |value|)).
 */
double memory_integral(const ExponentSpec& spec, double power, double t, int node_count);

/// d/dt memory_integral by Richardson-extrapolated central differences with step `delta`.
double memory_integral_rate(const ExponentSpec& spec, double power, double t, double delta, int node_count);

/**
 * Source q, target u_d and exact control c such that the separable pair
 * (u, z) solves the optimality system:
 *   q   = u_t - (k * Lap u)_t - c,
 *   u_d = u + z_t + (backward Caputo operator) Lap z,
 *   kappa c = max{0, mean z} - z.
 */
ManufacturedData manufactured_forcing(const SeparableSolution& exact, const ExponentSpec& spec, double kappa, int N,
                                      int M, int quad_nodes = kDefaultQuadNodes);

// --- studies -----------------------------------------------------------------

/// q = 1, c = 0 state study (Example 1 layout) for one alpha0.
std::vector<ConvergenceReport> run_state_study(const StudyConfig& config, double alpha0, int fixed_M, int fixed_N);

struct ControlStudy {
  std::vector<ConvergenceReport> reports;  // U, Z, C x temporal, spatial
  int max_iterations = 0;                  // over every ladder entry
};

/// Optimal-control study with q = 1, u_d = 1 - 4 (x - 1/2)^2 (Example 2 layout).
ControlStudy run_control_study(const StudyConfig& config, int fixed_M, int fixed_N);

struct ManufacturedStudy {
  char which = 'a';
  OptimalityResult result;
  ManufacturedData data;
  double rel_error_U_final = 0.0;  // U^N vs u(T)
  double rel_error_Z_initial = 0.0;  // Z^0 vs z(0)
  double rel_error_C = 0.0;          // space-time, control rows 0..N-1
};

ManufacturedStudy run_manufactured_study(const StudyConfig& config, char which);

/**
 * Constant-exponent check with q = sin(pi x): the exact state is
 * t E_{alpha0,2}(-pi^2 t^alpha0) sin(pi x). Returns max_n of the discrete L2
 * nodal error.
 */
double constant_exponent_error(double alpha0, double T, int N, int M, int quad_nodes = kDefaultQuadNodes);

// --- CSV output ----------------------------------------------------------------

void write_report_csv(const std::string& path, const ConvergenceReport& report);

/// Runs the study selected by config.example and writes its CSV files to config.out_dir.
std::vector<ConvergenceReport> run_example(const StudyConfig& config);

/// Writes state_final.csv (x, U^N) and state_norms.csv (n, t, ||U^n||).
void run_solve_state(const StudyConfig& config);

/// Writes control_iterations.csv and control_profiles.csv.
OptimalityResult run_solve_control(const StudyConfig& config);

/// Writes kernels.csv: n, t_n, g, w, b, bhat, P.
void run_kernels(const StudyConfig& config);

}  // namespace vesd

#endif  // VESD_HARNESS_HPP_
