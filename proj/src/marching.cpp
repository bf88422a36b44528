#include "vesd/marching.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace vesd {

namespace {

TriDiag left_operator(const KernelTables& tables, const FemOperators& fem) {
  TriDiag A = fem.stiffness;
  const double b0 = tables.b[0];
  for (std::size_t i = 0; i < A.size(); ++i) {
    A.sub[i] += b0 * fem.mass.sub[i];
    A.diag[i] += b0 * fem.mass.diag[i];
    A.super[i] += b0 * fem.mass.super[i];
  }
  return A;
}

void check_plan(const KernelTables& tables, const FemOperators& fem, const SpaceTimeField& rows, const char* what) {
  if (rows.rows() != tables.N + 1 || rows.cols() != fem.mesh.M + 1) {
    std::ostringstream os;
    os << what << ": expected " << tables.N + 1 << " x " << fem.mesh.M + 1 << " forcing rows, got " << rows.rows()
       << " x " << rows.cols();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

std::vector<double> discrete_frac_integral(std::span<const double> bhat, const SpaceTimeField& samples, int n) {
  if (n < 0 || n >= samples.rows() || static_cast<std::size_t>(n) > bhat.size()) {
    throw std::out_of_range("discrete_frac_integral: step index out of range");
  }
  std::vector<double> out(static_cast<std::size_t>(samples.cols()), 0.0);
  for (int j = 1; j <= n; ++j) {
    const double c = bhat[static_cast<std::size_t>(n - j)];
    const auto s = samples.row(j);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * s[i];
  }
  return out;
}

Trajectory solve_state(const KernelTables& tables, const FemOperators& fem, const ForcingPlan& plan,
                       const MarchOptions& options) {
  const int N = tables.N;
  const int dofs = fem.mesh.interior();
  if (static_cast<int>(fem.mass.size()) != dofs) throw std::invalid_argument("solve_state: operator size mismatch");
  check_plan(tables, fem, plan.samples, "solve_state");

  const TriDiag A = left_operator(tables, fem);
  std::unique_ptr<TriDiagFactor> factor;
  if (!options.refactor_each_step) factor = std::make_unique<TriDiagFactor>(A);

  Trajectory U(N + 1, dofs);
  const auto n_dofs = static_cast<std::size_t>(dofs);
  std::vector<double> mass_hist(n_dofs);
  std::vector<double> stiff_hist(n_dofs);
  std::vector<double> rhs(n_dofs);
  std::vector<double> tmp(n_dofs);
  std::vector<double> forcing;

  for (int n = 1; n <= N; ++n) {
    std::fill(mass_hist.begin(), mass_hist.end(), 0.0);
    std::fill(stiff_hist.begin(), stiff_hist.end(), 0.0);
    for (int k = 1; k < n; ++k) {
      const double c = tables.b[static_cast<std::size_t>(n - k - 1)] - tables.b[static_cast<std::size_t>(n - k)];
      const auto u = U.row(k);
      for (std::size_t i = 0; i < n_dofs; ++i) mass_hist[i] += c * u[i];
    }
    // j = n multiplies U^0 = 0; kept so the sum matches the scheme term for term.
    for (int j = 1; j <= n; ++j) {
      const double c = tables.w[static_cast<std::size_t>(j)];
      const auto u = U.row(n - j);
      for (std::size_t i = 0; i < n_dofs; ++i) stiff_hist[i] += c * u[i];
    }
    if (plan.mode == ForcingPlan::Mode::NodalHistory) {
      forcing = discrete_frac_integral(tables.bhat, plan.samples, n);
    } else {
      const auto f = plan.samples.row(n);
      forcing.assign(f.begin(), f.end());
    }

    fem.load(forcing, rhs);
    fem.mass.apply(mass_hist, tmp);
    for (std::size_t i = 0; i < n_dofs; ++i) rhs[i] += tmp[i];
    fem.stiffness.apply(stiff_hist, tmp);
    for (std::size_t i = 0; i < n_dofs; ++i) rhs[i] -= tmp[i];

    if (factor) {
      factor->solve(rhs, U.row(n));
    } else {
      TriDiagFactor(A).solve(rhs, U.row(n));
    }
  }
  return U;
}

Trajectory solve_adjoint(const KernelTables& tables, const FemOperators& fem, const Trajectory& state,
                         const SpaceTimeField& ud_samples, const MarchOptions& options) {
  const int N = tables.N;
  const int M = fem.mesh.M;
  if (state.rows() != N + 1 || state.cols() != M - 1) throw std::invalid_argument("solve_adjoint: state shape mismatch");
  check_plan(tables, fem, ud_samples, "solve_adjoint");

  SpaceTimeField reversed(N + 1, M + 1);
  for (int j = 1; j <= N; ++j) {
    const auto u = state.row(N - j);
    const auto ud = ud_samples.row(N - j);
    auto s = reversed.row(j);
    s[0] = -ud[0];
    s[static_cast<std::size_t>(M)] = -ud[static_cast<std::size_t>(M)];
    for (int i = 1; i < M; ++i) s[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i - 1)] - ud[static_cast<std::size_t>(i)];
  }
  const Trajectory zbar = solve_state(tables, fem, ForcingPlan::nodal_history(std::move(reversed)), options);

  Trajectory Z(N + 1, M - 1);
  for (int n = 0; n <= N; ++n) {
    const auto src = zbar.row(N - n);
    std::copy(src.begin(), src.end(), Z.row(n).begin());
  }
  return Z;
}

}  // namespace vesd
