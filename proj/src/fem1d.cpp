#include "vesd/fem1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vesd {

Mesh1D::Mesh1D(int elements) : M(elements), h(1.0 / elements) {
  if (elements < 2) throw std::domain_error("Mesh1D: need at least 2 elements");
}

void TriDiag::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("TriDiag::apply: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += sub[i] * x[i - 1];
    if (i + 1 < n) v += super[i] * x[i + 1];
    y[i] = v;
  }
}

NodalVector TriDiag::apply(std::span<const double> x) const {
  NodalVector y(size());
  apply(x, y);
  return y;
}

TriDiagFactor::TriDiagFactor(const TriDiag& A) : lower_(A.size()), pivot_(A.size()), upper_(A.super) {
  const std::size_t n = A.size();
  for (std::size_t i = 0; i < n; ++i) {
    double d = A.diag[i];
    if (i > 0) {
      lower_[i] = A.sub[i] / pivot_[i - 1];
      d -= lower_[i] * upper_[i - 1];
    }
    if (d == 0.0 || !std::isfinite(d)) throw std::runtime_error("tridiag_solve: singular matrix (zero pivot)");
    pivot_[i] = d;
  }
}

void TriDiagFactor::solve(std::span<const double> rhs, std::span<double> x) const {
  const std::size_t n = pivot_.size();
  if (rhs.size() != n || x.size() != n) throw std::invalid_argument("TriDiagFactor::solve: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) x[i] = i == 0 ? rhs[0] : rhs[i] - lower_[i] * x[i - 1];
  for (std::size_t k = n; k-- > 0;) {
    double v = x[k];
    if (k + 1 < n) v -= upper_[k] * x[k + 1];
    x[k] = v / pivot_[k];
  }
}

NodalVector TriDiagFactor::solve(std::span<const double> rhs) const {
  NodalVector x(pivot_.size());
  solve(rhs, x);
  return x;
}

void FemOperators::load(std::span<const double> full, std::span<double> out) const {
  const auto n = static_cast<std::size_t>(mesh.interior());
  if (full.size() != n + 2 || out.size() != n) throw std::invalid_argument("FemOperators::load: dimension mismatch");
  mass.apply(full.subspan(1, n), out);
}

FemOperators assemble(const Mesh1D& mesh) {
  const auto n = static_cast<std::size_t>(mesh.interior());
  const double h = mesh.h;
  FemOperators ops{mesh, {}, {}};
  ops.mass.sub.assign(n, h / 6.0);
  ops.mass.diag.assign(n, 4.0 * h / 6.0);
  ops.mass.super.assign(n, h / 6.0);
  ops.stiffness.sub.assign(n, -1.0 / h);
  ops.stiffness.diag.assign(n, 2.0 / h);
  ops.stiffness.super.assign(n, -1.0 / h);
  ops.mass.sub[0] = ops.stiffness.sub[0] = 0.0;
  ops.mass.super[n - 1] = ops.stiffness.super[n - 1] = 0.0;
  return ops;
}

NodalVector tridiag_solve(const TriDiag& A, std::span<const double> rhs) { return TriDiagFactor(A).solve(rhs); }

double l2_norm_discrete(std::span<const double> v, double h) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(h * s);
}

double l2_norm_trapezoid(std::span<const double> full, double h) {
  if (full.size() < 2) return 0.0;
  double s = 0.5 * (full.front() * full.front() + full.back() * full.back());
  for (std::size_t i = 1; i + 1 < full.size(); ++i) s += full[i] * full[i];
  return std::sqrt(h * s);
}

double trapezoid_integral(std::span<const double> full, double h) {
  if (full.size() < 2) return 0.0;
  double s = 0.5 * (full.front() + full.back());
  for (std::size_t i = 1; i + 1 < full.size(); ++i) s += full[i];
  return h * s;
}

NodalVector interpolate(const std::function<double(double)>& f, const Mesh1D& mesh) {
  NodalVector v(static_cast<std::size_t>(mesh.interior()));
  for (int j = 1; j < mesh.M; ++j) v[static_cast<std::size_t>(j - 1)] = f(mesh.node(j));
  return v;
}

NodalField interpolate_full(const std::function<double(double)>& f, const Mesh1D& mesh) {
  NodalField v(static_cast<std::size_t>(mesh.M) + 1);
  for (int j = 0; j <= mesh.M; ++j) v[static_cast<std::size_t>(j)] = f(mesh.node(j));
  return v;
}

NodalField with_boundary(std::span<const double> interior) {
  NodalField full(interior.size() + 2, 0.0);
  std::copy(interior.begin(), interior.end(), full.begin() + 1);
  return full;
}

}  // namespace vesd
