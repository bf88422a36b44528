#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vesd/harness.hpp"
#include "vesd/marching.hpp"

using namespace vesd;

namespace {

constexpr double kPi = std::numbers::pi;

SpaceTimeField rows_of(int N, int M, double v) {
  SpaceTimeField f(N + 1, M + 1);
  for (int n = 0; n <= N; ++n) {
    for (int j = 0; j <= M; ++j) f(n, j) = v;
  }
  return f;
}

}  // namespace

TEST_CASE("zero forcing gives a zero trajectory") {
  const KernelTables t = build_tables({0.4, -1.0 / 6.0, 0.5}, 16);
  const FemOperators fem = assemble(Mesh1D(8));
  const Trajectory U = solve_state(t, fem, ForcingPlan::nodal_history(rows_of(16, 8, 0.0)));
  for (double v : U.data()) CHECK(v == 0.0);
}

TEST_CASE("pre-factored stepping equals refactoring each step") {
  const KernelTables t = build_tables({0.7, -1.0 / 6.0, 0.5}, 64);
  const FemOperators fem = assemble(Mesh1D(16));
  const auto plan = ForcingPlan::nodal_history(sample_space_time([](double x, double s) { return 1.0 + x * s; }, 64, 0.5, 16));
  const Trajectory a = solve_state(t, fem, plan);
  const Trajectory b = solve_state(t, fem, plan, MarchOptions{true});
  for (std::size_t i = 0; i < a.data().size(); ++i) CHECK(std::abs(a.data()[i] - b.data()[i]) <= 1e-12);
}

TEST_CASE("initial row is zero and direct mode reproduces nodal-history mode") {
  const int N = 12, M = 10;
  const KernelTables t = build_tables({0.4, -1.0 / 6.0, 0.5}, N);
  const FemOperators fem = assemble(Mesh1D(M));
  const SpaceTimeField s = sample_space_time([](double x, double tt) { return std::sin(kPi * x) * (1.0 + tt); }, N, 0.5, M);
  SpaceTimeField F(N + 1, M + 1);
  for (int n = 1; n <= N; ++n) {
    const auto row = discrete_frac_integral(t.bhat, s, n);
    for (int j = 0; j <= M; ++j) F(n, j) = row[static_cast<std::size_t>(j)];
  }
  const Trajectory a = solve_state(t, fem, ForcingPlan::nodal_history(s));
  const Trajectory b = solve_state(t, fem, ForcingPlan::direct(F));
  for (double v : a.row(0)) CHECK(v == 0.0);
  for (std::size_t i = 0; i < a.data().size(); ++i) CHECK(a.data()[i] == doctest::Approx(b.data()[i]).epsilon(1e-14));
}

TEST_CASE("discrete fractional integral") {
  const int N = 64;
  const double a = 0.5;
  const KernelTables t = build_tables({a, 0.0, 1.0}, N);
  SpaceTimeField ones = rows_of(N, 2, 1.0);
  CHECK(discrete_frac_integral(t.bhat, ones, N)[1] == doctest::Approx(1.0 / gamma_fn(2.0 - a)).epsilon(1e-13));
  for (double v : discrete_frac_integral(t.bhat, rows_of(N, 2, 0.0), N)) CHECK(v == 0.0);

  // phi(t) = t: exact value t^{2-a}/Gamma(3-a); error should fall roughly like tau.
  double previous = 0.0;
  for (int n_steps : {64, 128, 256}) {
    const KernelTables tt = build_tables({a, 0.0, 1.0}, n_steps);
    const SpaceTimeField lin = sample_space_time([](double, double s) { return s; }, n_steps, 1.0, 2);
    const double err = std::abs(discrete_frac_integral(tt.bhat, lin, n_steps)[1] - 1.0 / gamma_fn(3.0 - a));
    if (n_steps == 64) CHECK(err <= 2e-2);
    if (previous > 0.0) CHECK(std::log2(previous / err) == doctest::Approx(1.0).epsilon(0.1));
    previous = err;
  }
}

TEST_CASE("adjoint vanishes for matched data and at the terminal level") {
  const int N = 10, M = 8;
  const KernelTables t = build_tables({0.4, -1.0 / 6.0, 1.0}, N);
  const FemOperators fem = assemble(Mesh1D(M));
  const Trajectory U = solve_state(t, fem, ForcingPlan::nodal_history(rows_of(N, M, 1.0)));
  SpaceTimeField ud(N + 1, M + 1);
  for (int n = 0; n <= N; ++n) {
    for (int j = 1; j < M; ++j) ud(n, j) = U(n, j - 1);
  }
  const Trajectory Z0 = solve_adjoint(t, fem, U, ud);
  for (double v : Z0.data()) CHECK(std::abs(v) < 1e-15);

  const Trajectory Z = solve_adjoint(t, fem, U, rows_of(N, M, 0.7));
  for (double v : Z.row(N)) CHECK(v == 0.0);
}

TEST_CASE("adjoint is the forward solver on reversed data") {
  const int N = 16, M = 12;
  const KernelTables t = build_tables({0.7, -1.0 / 6.0, 1.0}, N);
  const FemOperators fem = assemble(Mesh1D(M));
  const Trajectory U = solve_state(t, fem, ForcingPlan::nodal_history(rows_of(N, M, 1.0)));
  const SpaceTimeField ud = sample_space_time([](double x, double s) { return x * (1.0 - x) + s; }, N, 1.0, M);
  const Trajectory Z = solve_adjoint(t, fem, U, ud);

  SpaceTimeField reversed(N + 1, M + 1);
  for (int j = 1; j <= N; ++j) {
    reversed(j, 0) = -ud(N - j, 0);
    reversed(j, M) = -ud(N - j, M);
    for (int i = 1; i < M; ++i) reversed(j, i) = U(N - j, i - 1) - ud(N - j, i);
  }
  const Trajectory zbar = solve_state(t, fem, ForcingPlan::nodal_history(reversed));
  for (int n = 0; n <= N; ++n) {
    for (int i = 0; i < M - 1; ++i) CHECK(Z(n, i) == zbar(N - n, i));
  }
}

TEST_CASE("constant-exponent solution follows the Mittag-Leffler profile") {
  // u = t E_{a,2}(-pi^2 t^a) sin(pi x) for q = sin(pi x); compare at t = T.
  const double a = 0.7, T = 1.0;
  const int M = 256;
  const Mesh1D mesh(M);
  const FemOperators fem = assemble(mesh);
  const auto profile = interpolate([](double x) { return std::sin(kPi * x); }, mesh);
  const double amp = T * mittag_leffler({a, 2.0, -kPi * kPi * std::pow(T, a)});
  double previous = 0.0;
  for (int N : {128, 256, 512}) {
    const KernelTables t = build_tables({a, 0.0, T}, N);
    const Trajectory U = solve_state(
        t, fem, ForcingPlan::nodal_history(sample_space_time([](double x, double) { return std::sin(kPi * x); }, N, T, M)));
    std::vector<double> diff(profile.size());
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = U(N, static_cast<int>(j)) - amp * profile[j];
    const double err = l2_norm_discrete(diff, mesh.h);
    CHECK(err < 1e-3);
    if (previous > 0.0) CHECK(err < 0.7 * previous);
    previous = err;
  }
}

TEST_CASE("constant-exponent convergence orders for alpha0 = 0.7") {
  std::vector<double> et, eh;
  for (int N : {64, 128, 256, 512}) et.push_back(constant_exponent_error(0.7, 1.0, N, 512));
  for (int M : {8, 16, 32, 64}) eh.push_back(constant_exponent_error(0.7, 1.0, 2048, M));
  for (double r : rates_from_errors(et)) CHECK(r >= 0.85);
  for (double r : rates_from_errors(eh)) {
    CHECK(r >= 1.85);
    CHECK(r <= 2.1);
  }
}

TEST_CASE("state stays bounded across the example1 sweep") {
  for (double a : {0.4, 0.7, 0.95}) {
    for (int N : {128, 1024}) {
      const KernelTables t = build_tables({a, -1.0 / 6.0, 0.5}, N);
      const FemOperators fem = assemble(Mesh1D(32));
      const Trajectory U = solve_state(t, fem, ForcingPlan::nodal_history(rows_of(N, 32, 1.0)));
      double worst = 0.0;
      for (int n = 0; n <= N; ++n) worst = std::max(worst, l2_norm_discrete(U.row(n), 1.0 / 32));
      CHECK(worst <= 10.0);
    }
  }
}

TEST_CASE("shape mismatches are rejected") {
  const KernelTables t = build_tables({0.4, 0.0, 1.0}, 4);
  const FemOperators fem = assemble(Mesh1D(4));
  CHECK_THROWS_AS(solve_state(t, fem, ForcingPlan::nodal_history(rows_of(3, 4, 1.0))), std::invalid_argument);
  CHECK_THROWS_AS(solve_state(t, fem, ForcingPlan::nodal_history(rows_of(4, 5, 1.0))), std::invalid_argument);
  CHECK_THROWS_AS(solve_adjoint(t, fem, Trajectory(4, 3), rows_of(4, 4, 0.0)), std::invalid_argument);
}
