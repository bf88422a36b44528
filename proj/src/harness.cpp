#include "vesd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace vesd {

namespace {

constexpr double kPi = std::numbers::pi;

double row_distance(std::span<const double> a, std::span<const double> b, double h) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return std::sqrt(h * s);
}

// Evaluates fn(0..count-1) concurrently; results keep index order.
template <class Fn>
auto parallel_map(std::size_t count, Fn fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<std::future<Result>> pending;
  pending.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pending.push_back(std::async(std::launch::async, fn, i));
  std::vector<Result> out;
  out.reserve(count);
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

std::vector<int> extended_ladder(const std::vector<int>& ladder) {
  std::vector<int> out = ladder;
  out.push_back(2 * ladder.back());
  return out;
}

std::string fmt_number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::ofstream open_csv(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  return out;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

SpaceTimeField constant_rows(int N, int M, double value) {
  SpaceTimeField f(N + 1, M + 1);
  for (int n = 0; n <= N; ++n) std::fill(f.row(n).begin(), f.row(n).end(), value);
  return f;
}

double parabola_target(double x, double) { return 1.0 - 4.0 * (x - 0.5) * (x - 0.5); }

ControlProblem control_problem(const StudyConfig& config, double alpha0, int N, int M) {
  ControlProblem p;
  p.spec = {alpha0, config.alpha_slope, config.T};
  p.N = N;
  p.M = M;
  p.kappa = config.kappa;
  p.tol = config.tol;
  p.max_iters = config.max_iters;
  p.quad_nodes = config.quad_nodes;
  p.q_samples = constant_rows(N, M, 1.0);
  p.ud_samples = config.example == "1" ? constant_rows(N, M, 0.0)
                                       : sample_space_time(parabola_target, N, config.T, M);
  return p;
}

double relative_discrete_error(std::span<const double> num, std::span<const double> exact, double h) {
  return row_distance(num, exact, h) / l2_norm_discrete(exact, h);
}

}  // namespace

double two_mesh_temporal_error(const SpaceTimeField& coarse, const SpaceTimeField& fine, double h) {
  if (coarse.cols() != fine.cols()) throw std::invalid_argument("two_mesh_temporal_error: spatial dimension mismatch");
  if (fine.rows() != 2 * coarse.rows() - 1 && fine.rows() != 2 * coarse.rows()) {
    throw std::invalid_argument("two_mesh_temporal_error: fine grid is not a temporal refinement of the coarse grid");
  }
  double err = 0.0;
  for (int n = 0; n < coarse.rows(); ++n) err = std::max(err, row_distance(fine.row(2 * n), coarse.row(n), h));
  return err;
}

double two_mesh_spatial_error(const SpaceTimeField& coarse, const SpaceTimeField& fine, double h) {
  if (coarse.rows() != fine.rows()) throw std::invalid_argument("two_mesh_spatial_error: temporal dimension mismatch");
  if (fine.cols() != 2 * coarse.cols() + 1) {
    throw std::invalid_argument("two_mesh_spatial_error: fine grid is not a spatial refinement of the coarse grid");
  }
  double err = 0.0;
  for (int n = 0; n < coarse.rows(); ++n) {
    const auto c = coarse.row(n);
    const auto f = fine.row(n);
    double s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double d = f[2 * j + 1] - c[j];  // fine node 2(j+1) in 1-based numbering
      s += d * d;
    }
    err = std::max(err, std::sqrt(h * s));
  }
  return err;
}

std::vector<double> rates_from_errors(const std::vector<double>& errors) {
  for (double e : errors) {
    if (!(e > 0.0)) throw std::domain_error("rates_from_errors: errors must be positive");
  }
  std::vector<double> rates;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) rates.push_back(std::log2(errors[i] / errors[i + 1]));
  return rates;
}

SpaceTimeField interior_columns(const SpaceTimeField& full) {
  SpaceTimeField out(full.rows(), full.cols() - 2);
  for (int n = 0; n < full.rows(); ++n) {
    const auto src = full.row(n);
    std::copy(src.begin() + 1, src.end() - 1, out.row(n).begin());
  }
  return out;
}

ConvergenceReport make_report(std::string label, std::string variable, std::string direction,
                              const std::vector<int>& params, const std::vector<double>& errors) {
  ConvergenceReport report{std::move(label), std::move(variable), std::move(direction), {}};
  const std::vector<double> rates = rates_from_errors(errors);
  for (std::size_t i = 0; i < errors.size(); ++i) {
    ReportRow row{params[i], errors[i], std::nullopt};
    if (i > 0) row.rate = rates[i - 1];
    report.rows.push_back(row);
  }
  return report;
}

SpaceTimeField sample_space_time(const std::function<double(double, double)>& f, int N, double T, int M) {
  SpaceTimeField out(N + 1, M + 1);
  const double tau = T / N;
  const double h = 1.0 / M;
  for (int n = 0; n <= N; ++n) {
    for (int j = 0; j <= M; ++j) out(n, j) = f(j * h, n * tau);
  }
  return out;
}

// --- manufactured solutions ---------------------------------------------------

SeparableSolution manufactured_case(char which) {
  if (which == 'a') {
    return {[](double x) { return std::sin(kPi * x); }, [](double x) { return -kPi * kPi * std::sin(kPi * x); }, 0.8,
            2.0};
  }
  if (which == 'b') {
    return {[](double x) { return x * x * (1.0 - x) * (1.0 - x); },
            [](double x) { return 2.0 - 12.0 * x + 12.0 * x * x; }, 0.8, 2.0};
  }
  throw std::invalid_argument("manufactured_case: expected 'a' or 'b'");
}

namespace {

double memory_integral_with(const ExponentSpec& spec, double power, double t, const JacobiRule& rule) {
  if (t == 0.0) return 0.0;
  const double a0 = spec.alpha0;
  const double integral = rule.integrate([&](double y) {
    double y_pow = 1.0;
    double geometric = 0.0;
    for (int i = 0; i < kGradingPower; ++i) {
      geometric += y_pow;
      y_pow *= y;
    }
    const double r = t * y_pow;
    return std::exp(spec.slope * r * std::log(r)) * rgamma(spec.alpha(r)) * std::pow(geometric, power);
  });
  return kGradingPower * std::pow(t, power + a0) * integral;
}

}  // namespace

double memory_integral(const ExponentSpec& spec, double power, double t, int node_count) {
  if (!(t >= 0.0)) throw std::domain_error("memory_integral: t must be non-negative");
  if (!(power > -1.0)) throw std::domain_error("memory_integral: power must exceed -1");
  const double a0 = spec.alpha0;
  const JacobiRule coarse = jacobi_rule(node_count, kGradingPower * a0 - 1.0, power);
  const JacobiRule fine = jacobi_rule(2 * node_count, kGradingPower * a0 - 1.0, power);
  const double v1 = memory_integral_with(spec, power, t, coarse);
  const double v2 = memory_integral_with(spec, power, t, fine);
  if (std::abs(v1 - v2) > 1e-7 * std::max(1.0, std::abs(v2))) {
    std::ostringstream os;
    os << "memory_integral: refinement disagreement " << std::abs(v1 - v2) << " at t=" << t;
    throw EvaluationError(os.str());
  }
  return v2;
}

double memory_integral_rate(const ExponentSpec& spec, double power, double t, double delta, int node_count) {
  if (!(delta > 0.0) || !(t - delta > 0.0)) throw std::domain_error("memory_integral_rate: need 0 < delta < t");
  if (!(spec.alpha(t + delta) > 0.0 && spec.alpha(t + delta) < 1.0)) {
    throw std::domain_error("memory_integral_rate: exponent leaves (0,1) at t + delta");
  }
  auto central = [&](double d) {
    return (memory_integral(spec, power, t + d, node_count) - memory_integral(spec, power, t - d, node_count)) /
           (2.0 * d);
  };
  const double d1 = central(delta);
  const double d2 = central(0.5 * delta);
  return (4.0 * d2 - d1) / 3.0;
}

ManufacturedData manufactured_forcing(const SeparableSolution& exact, const ExponentSpec& spec, double kappa, int N,
                                      int M, int quad_nodes) {
  spec.validate();
  if (!(kappa > 0.0)) throw std::domain_error("manufactured_forcing: kappa must be positive");
  const double T = spec.horizon;
  const double tau = T / N;
  const double h = 1.0 / M;
  const double p = exact.power;
  const double a = exact.z_scale;
  const double phi_mean = jacobi_rule(32, 0.0, 0.0).integrate(exact.phi);

  ManufacturedData d{SpaceTimeField(N + 1, M + 1), SpaceTimeField(N + 1, M + 1), SpaceTimeField(N + 1, M + 1),
                     SpaceTimeField(N + 1, M + 1), SpaceTimeField(N + 1, M + 1)};

  auto z_time = [&](double t) { return a * std::pow(T - t, p); };
  auto control_at = [&](double x, double t) { return (std::max(0.0, z_time(t) * phi_mean) - z_time(t) * exact.phi(x)) / kappa; };

  const double delta = tau / 10.0;
  for (int n = 0; n <= N; ++n) {
    const double t = n * tau;
    // Source at t_1..t_N.
    double memory_rate = 0.0;
    if (n > 0) memory_rate = memory_integral_rate(spec, p, t, delta, quad_nodes);
    // Target at t_0..t_{N-1}; z_t blows up at T, so row N uses the last midpoint.
    const double t_target = n < N ? t : t - 0.5 * tau;
    const double backward = a * p * memory_integral(spec, p - 1.0, T - t_target, quad_nodes);
    const double z_rate = -a * p * std::pow(T - t_target, p - 1.0);
    for (int j = 0; j <= M; ++j) {
      const double x = j * h;
      const double phi = exact.phi(x);
      const double lap = exact.phi_xx(x);
      d.u_exact(n, j) = std::pow(t, p) * phi;
      d.z_exact(n, j) = z_time(t) * phi;
      d.c_exact(n, j) = control_at(x, t);
      if (n > 0) d.q_samples(n, j) = p * std::pow(t, p - 1.0) * phi - lap * memory_rate - d.c_exact(n, j);
      d.ud_samples(n, j) = std::pow(t_target, p) * phi + z_rate * phi + lap * backward;
    }
  }
  return d;
}

// --- studies -------------------------------------------------------------------

std::vector<ConvergenceReport> run_state_study(const StudyConfig& config, double alpha0, int fixed_M, int fixed_N) {
  const ExponentSpec spec{alpha0, config.alpha_slope, config.T};
  spec.validate();
  const JacobiRule rule = g_rule(alpha0, config.quad_nodes);
  std::ostringstream label;
  label << "alpha0=" << alpha0;

  auto solve = [&](int N, int M) {
    const KernelTables tables = build_tables(spec, N, rule);
    const FemOperators fem = assemble(Mesh1D(M));
    return solve_state(tables, fem, ForcingPlan::nodal_history(constant_rows(N, M, 1.0)));
  };

  const std::vector<int> Ns = extended_ladder(config.N_list);
  const auto temporal = parallel_map(Ns.size(), [&](std::size_t i) { return solve(Ns[i], fixed_M); });
  std::vector<double> errs;
  const double h_fixed = 1.0 / fixed_M;
  for (std::size_t i = 0; i + 1 < Ns.size(); ++i) errs.push_back(two_mesh_temporal_error(temporal[i], temporal[i + 1], h_fixed));
  std::vector<ConvergenceReport> out;
  out.push_back(make_report(label.str(), "U", "temporal", config.N_list, errs));

  const std::vector<int> Ms = extended_ladder(config.M_list);
  const auto spatial = parallel_map(Ms.size(), [&](std::size_t i) { return solve(fixed_N, Ms[i]); });
  errs.clear();
  for (std::size_t i = 0; i + 1 < Ms.size(); ++i) {
    errs.push_back(two_mesh_spatial_error(spatial[i], spatial[i + 1], 1.0 / Ms[i]));
  }
  out.push_back(make_report(label.str(), "U", "spatial", config.M_list, errs));
  return out;
}

ControlStudy run_control_study(const StudyConfig& config, int fixed_M, int fixed_N) {
  const double alpha0 = config.alpha0.front();
  const JacobiRule rule = g_rule(alpha0, config.quad_nodes);
  std::ostringstream label;
  label << "alpha0=" << alpha0;

  auto solve = [&](int N, int M) {
    const ControlProblem problem = control_problem(config, alpha0, N, M);
    problem.spec.validate();
    const KernelTables tables = build_tables(problem.spec, N, rule);
    const FemOperators fem = assemble(Mesh1D(M));
    return fixed_point_optimize(problem, tables, fem);
  };

  ControlStudy study;
  auto collect = [&](const std::vector<OptimalityResult>& runs, const std::vector<int>& params, bool temporal) {
    std::vector<double> eU, eZ, eC;
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
      const auto& c = runs[i];
      const auto& f = runs[i + 1];
      if (temporal) {
        const double h = 1.0 / fixed_M;
        eU.push_back(two_mesh_temporal_error(c.U, f.U, h));
        eZ.push_back(two_mesh_temporal_error(c.Z, f.Z, h));
        eC.push_back(two_mesh_temporal_error(interior_columns(c.C), interior_columns(f.C), h));
      } else {
        const double h = 1.0 / params[i];
        eU.push_back(two_mesh_spatial_error(c.U, f.U, h));
        eZ.push_back(two_mesh_spatial_error(c.Z, f.Z, h));
        eC.push_back(two_mesh_spatial_error(interior_columns(c.C), interior_columns(f.C), h));
      }
    }
    const char* dir = temporal ? "temporal" : "spatial";
    study.reports.push_back(make_report(label.str(), "U", dir, params, eU));
    study.reports.push_back(make_report(label.str(), "Z", dir, params, eZ));
    study.reports.push_back(make_report(label.str(), "C", dir, params, eC));
    for (const auto& r : runs) study.max_iterations = std::max(study.max_iterations, r.iterations);
  };

  const std::vector<int> Ns = extended_ladder(config.N_list);
  collect(parallel_map(Ns.size(), [&](std::size_t i) { return solve(Ns[i], fixed_M); }), config.N_list, true);
  const std::vector<int> Ms = extended_ladder(config.M_list);
  collect(parallel_map(Ms.size(), [&](std::size_t i) { return solve(fixed_N, Ms[i]); }), config.M_list, false);
  return study;
}

ManufacturedStudy run_manufactured_study(const StudyConfig& config, char which) {
  const int N = config.N_list.front();
  const int M = config.M_list.front();
  const ExponentSpec spec{config.alpha0.front(), config.alpha_slope, config.T};
  spec.validate();

  ManufacturedStudy study;
  study.which = which;
  study.data = manufactured_forcing(manufactured_case(which), spec, config.kappa, N, M, config.quad_nodes);

  ControlProblem problem;
  problem.spec = spec;
  problem.N = N;
  problem.M = M;
  problem.kappa = config.kappa;
  problem.q_samples = study.data.q_samples;
  problem.ud_samples = study.data.ud_samples;
  problem.tol = config.tol;
  problem.max_iters = config.max_iters;
  problem.quad_nodes = config.quad_nodes;
  study.result = fixed_point_optimize(problem);

  const double h = 1.0 / M;
  const SpaceTimeField u_int = interior_columns(study.data.u_exact);
  const SpaceTimeField z_int = interior_columns(study.data.z_exact);
  study.rel_error_U_final = relative_discrete_error(study.result.U.row(N), u_int.row(N), h);
  study.rel_error_Z_initial = relative_discrete_error(study.result.Z.row(0), z_int.row(0), h);
  double num = 0.0;
  double den = 0.0;
  for (int n = 0; n < N; ++n) {
    const auto c = study.result.C.row(n);
    const auto e = study.data.c_exact.row(n);
    std::vector<double> diff(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) diff[j] = c[j] - e[j];
    num += std::pow(l2_norm_trapezoid(diff, h), 2);
    den += std::pow(l2_norm_trapezoid(e, h), 2);
  }
  study.rel_error_C = std::sqrt(num / den);
  return study;
}

double constant_exponent_error(double alpha0, double T, int N, int M, int quad_nodes) {
  const ExponentSpec spec{alpha0, 0.0, T};
  const KernelTables tables = build_tables(spec, N, g_rule(alpha0, quad_nodes));
  const Mesh1D mesh(M);
  const FemOperators fem = assemble(mesh);
  const SpaceTimeField q = sample_space_time([](double x, double) { return std::sin(kPi * x); }, N, T, M);
  const Trajectory U = solve_state(tables, fem, ForcingPlan::nodal_history(q));
  const NodalVector profile = interpolate([](double x) { return std::sin(kPi * x); }, mesh);
  double err = 0.0;
  std::vector<double> exact(profile.size());
  for (int n = 1; n <= N; ++n) {
    const double t = n * tables.tau;
    const double amplitude = t * mittag_leffler({alpha0, 2.0, -kPi * kPi * std::pow(t, alpha0)});
    for (std::size_t j = 0; j < profile.size(); ++j) exact[j] = amplitude * profile[j];
    err = std::max(err, row_distance(U.row(n), exact, mesh.h));
  }
  return err;
}

// --- CSV -----------------------------------------------------------------------

void write_report_csv(const std::string& path, const ConvergenceReport& report) {
  std::ofstream out = open_csv(path);
  out << (report.direction == "temporal" ? "N" : "M") << ",error,rate\n";
  for (const auto& row : report.rows) {
    out << row.param << ',' << fmt_number(row.error) << ',';
    if (row.rate) out << fmt_number(*row.rate);
    out << '\n';
  }
}

namespace {

void write_manufactured(const StudyConfig& config, const ManufacturedStudy& s) {
  const int N = s.result.U.rows() - 1;
  const int M = s.result.U.cols() + 1;
  const std::string stem = join_path(config.out_dir, std::string("example3") + s.which);
  {
    std::ofstream out = open_csv(stem + "_profiles.csv");
    out << "x,U_num,U_exact,Z0_num,Z0_exact,C_num,C_exact\n";
    const auto& C = s.result.C;
    for (int j = 0; j <= M; ++j) {
      const bool inner = j > 0 && j < M;
      const double u = inner ? s.result.U(N, j - 1) : 0.0;
      const double z = inner ? s.result.Z(0, j - 1) : 0.0;
      out << fmt_number(static_cast<double>(j) / M) << ',' << fmt_number(u) << ',' << fmt_number(s.data.u_exact(N, j))
          << ',' << fmt_number(z) << ',' << fmt_number(s.data.z_exact(0, j)) << ',' << fmt_number(C(N - 1, j)) << ','
          << fmt_number(s.data.c_exact(N - 1, j)) << '\n';
    }
  }
  std::ofstream out = open_csv(stem + "_summary.csv");
  out << "quantity,value\n";
  out << "iterations," << s.result.iterations << '\n';
  out << "residual," << fmt_number(s.result.residual) << '\n';
  out << "objective," << fmt_number(s.result.objective) << '\n';
  out << "rel_error_U_final," << fmt_number(s.rel_error_U_final) << '\n';
  out << "rel_error_Z_initial," << fmt_number(s.rel_error_Z_initial) << '\n';
  out << "rel_error_C," << fmt_number(s.rel_error_C) << '\n';
}

std::string report_file(const std::string& prefix, const ConvergenceReport& r) {
  return prefix + "_" + r.variable + "_" + r.direction + ".csv";
}

}  // namespace

std::vector<ConvergenceReport> run_example(const StudyConfig& config) {
  config.validate();
  std::vector<ConvergenceReport> all;
  if (config.example == "1") {
    for (double a : config.alpha0) {
      const auto reports = run_state_study(config, a, 32, 64);
      const std::string prefix = join_path(config.out_dir, "example1_alpha0-" + fmt_number(a));
      for (const auto& r : reports) write_report_csv(report_file(prefix, r), r);
      all.insert(all.end(), reports.begin(), reports.end());
    }
  } else if (config.example == "2") {
    const ControlStudy study = run_control_study(config, 32, 16);
    const std::string prefix = join_path(config.out_dir, "example2");
    for (const auto& r : study.reports) write_report_csv(report_file(prefix, r), r);
    all = study.reports;
  } else {
    const std::string cases = config.example == "3" ? "ab" : config.example.substr(1);
    for (char c : cases) write_manufactured(config, run_manufactured_study(config, c));
  }
  return all;
}

namespace {

// Source and target rows for the generic solve commands.
struct ProblemData {
  SpaceTimeField forcing;  // state source (q + any fixed control)
  SpaceTimeField q;
  SpaceTimeField ud;
};

ProblemData problem_data(const StudyConfig& config, int N, int M) {
  if (config.example == "1" || config.example == "2") {
    ControlProblem p = control_problem(config, config.alpha0.front(), N, M);
    return {p.q_samples, p.q_samples, p.ud_samples};
  }
  const char which = config.example == "3" ? 'a' : config.example[1];
  const ExponentSpec spec{config.alpha0.front(), config.alpha_slope, config.T};
  ManufacturedData d = manufactured_forcing(manufactured_case(which), spec, config.kappa, N, M, config.quad_nodes);
  SpaceTimeField forcing = d.q_samples;
  for (int n = 1; n <= N; ++n) {
    for (int j = 0; j <= M; ++j) forcing(n, j) += d.c_exact(n - 1, j);
  }
  return {std::move(forcing), std::move(d.q_samples), std::move(d.ud_samples)};
}

}  // namespace

void run_solve_state(const StudyConfig& config) {
  config.validate();
  const int N = config.N_list.front();
  const int M = config.M_list.front();
  const ExponentSpec spec{config.alpha0.front(), config.alpha_slope, config.T};
  const KernelTables tables = build_tables(spec, N, g_rule(spec.alpha0, config.quad_nodes));
  const FemOperators fem = assemble(Mesh1D(M));
  ProblemData data = problem_data(config, N, M);
  const Trajectory U = solve_state(tables, fem, ForcingPlan::nodal_history(std::move(data.forcing)));

  std::ofstream final_row = open_csv(join_path(config.out_dir, "state_final.csv"));
  final_row << "x,U\n";
  const NodalField full = with_boundary(U.row(N));
  for (int j = 0; j <= M; ++j) final_row << fmt_number(j * fem.mesh.h) << ',' << fmt_number(full[static_cast<std::size_t>(j)]) << '\n';

  std::ofstream norms = open_csv(join_path(config.out_dir, "state_norms.csv"));
  norms << "n,t,l2_norm\n";
  for (int n = 0; n <= N; ++n) {
    norms << n << ',' << fmt_number(n * tables.tau) << ',' << fmt_number(l2_norm_discrete(U.row(n), fem.mesh.h)) << '\n';
  }
}

OptimalityResult run_solve_control(const StudyConfig& config) {
  config.validate();
  const int N = config.N_list.front();
  const int M = config.M_list.front();
  ControlProblem problem;
  problem.spec = {config.alpha0.front(), config.alpha_slope, config.T};
  problem.N = N;
  problem.M = M;
  problem.kappa = config.kappa;
  problem.tol = config.tol;
  problem.max_iters = config.max_iters;
  problem.quad_nodes = config.quad_nodes;
  ProblemData data = problem_data(config, N, M);
  problem.q_samples = std::move(data.q);
  problem.ud_samples = std::move(data.ud);
  const OptimalityResult result = fixed_point_optimize(problem);

  std::ofstream iters = open_csv(join_path(config.out_dir, "control_iterations.csv"));
  iters << "iteration,residual,objective\n";
  for (std::size_t i = 0; i < result.residual_history.size(); ++i) {
    iters << i + 1 << ',' << fmt_number(result.residual_history[i]) << ',' << fmt_number(result.objective_history[i])
          << '\n';
  }
  std::ofstream summary = open_csv(join_path(config.out_dir, "control_summary.csv"));
  summary << "quantity,value\n";
  summary << "iterations," << result.iterations << '\n';
  summary << "residual," << fmt_number(result.residual) << '\n';
  summary << "objective," << fmt_number(result.objective) << '\n';

  std::ofstream profiles = open_csv(join_path(config.out_dir, "control_profiles.csv"));
  profiles << "x,U_final,Z_initial,C_last\n";
  const NodalField u = with_boundary(result.U.row(N));
  const NodalField z = with_boundary(result.Z.row(0));
  for (int j = 0; j <= M; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    profiles << fmt_number(static_cast<double>(j) / M) << ',' << fmt_number(u[uj]) << ',' << fmt_number(z[uj]) << ','
             << fmt_number(result.C(N - 1, j)) << '\n';
  }
  return result;
}

void run_kernels(const StudyConfig& config) {
  config.validate();
  const int N = config.N_list.front();
  const ExponentSpec spec{config.alpha0.front(), config.alpha_slope, config.T};
  const KernelTables t = build_tables(spec, N, g_rule(spec.alpha0, config.quad_nodes));
  std::ofstream out = open_csv(join_path(config.out_dir, "kernels.csv"));
  out << "n,t_n,g,w,b,bhat,P\n";
  for (int n = 0; n <= N; ++n) {
    const auto un = static_cast<std::size_t>(n);
    out << n << ',' << fmt_number(n * t.tau) << ',' << fmt_number(t.g_vals[un]) << ',';
    if (n > 0) out << fmt_number(t.w[un]);
    out << ',';
    if (n < N) out << fmt_number(t.b[un]) << ',' << fmt_number(t.bhat[un]) << ',' << fmt_number(t.P[un]);
    else out << ",,";
    out << '\n';
  }
}

}  // namespace vesd
