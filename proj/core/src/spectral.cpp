// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include "spherecalc/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "spherecalc/moments.hpp"
#include "spherecalc/sphere_ops.hpp"

namespace spherecalc {

double integral_sq(const Polynomial& p) { return poly_sphere_integral(p * p); }

double integral_grad_sq(const Polynomial& p) {
  double s = 0.0;
  for (int i = 0; i < p.dimension(); ++i) {
    const Polynomial di = p.derivative(i);
    s += poly_sphere_integral(di * di);
  }
  return s;
}

double integral_radial_deriv_sq(const Polynomial& p) {
  const Polynomial r = p.radial_derivative();
  return poly_sphere_integral(r * r);
}

double integral_sph_grad_sq(const Polynomial& p) {
  // |grad_S p|^2 = |grad p|^2 - <grad p, theta>^2 on the sphere
  return integral_grad_sq(p) - integral_radial_deriv_sq(p);
}

double integral_hess_hs_sq(const Polynomial& p, double a) {
  double s = 0.0;
  const int n = p.dimension();
  for (int i = 0; i < n; ++i) {
    const Polynomial di = p.derivative(i);
    for (int j = 0; j < n; ++j) {
      Polynomial dij = di.derivative(j);
      if (i == j && a != 0.0) dij -= Polynomial::constant(n, a);
      s += poly_sphere_integral(dij * dij);
    }
  }
  return s;
}

double integral_sph_hess_hs_sq(const Polynomial& p) {
  // M = P B P with B = p'' - <grad p, x> I and P = I - x x^T; entries
  //   M_ij = B_ij - x_i c_j - c_i x_j + x_i x_j s,
  // where c_j = sum_k x_k B_kj and s = sum_k x_k c_k, all polynomials.
  const int n = p.dimension();
  const Polynomial radial = p.radial_derivative();

  std::vector<std::vector<Polynomial>> b(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (int i = 0; i < n; ++i) {
    const Polynomial di = p.derivative(i);
    for (int j = i; j < n; ++j) {
      Polynomial bij = di.derivative(j);
      if (i == j) bij -= radial;
      b[i][j] = bij;
      if (i != j) b[j][i] = std::move(bij);
    }
  }

  std::vector<Polynomial> c(n, Polynomial(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) c[j] += Polynomial::variable(n, k) * b[k][j];
  Polynomial s(n);
  for (int k = 0; k < n; ++k) s += Polynomial::variable(n, k) * c[k];

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const Polynomial xi = Polynomial::variable(n, i);
    for (int j = 0; j < n; ++j) {
      const Polynomial xj = Polynomial::variable(n, j);
      Polynomial m = b[i][j] - xi * c[j] - c[i] * xj + (xi * xj) * s;
      total += poly_sphere_integral(m * m);
    }
  }
  return total;
}

Eigen::VectorXd integral_x_times(const Polynomial& p) {
  const int n = p.dimension();
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i)
    w[i] = poly_sphere_integral(p * Polynomial::variable(n, i));
  return w;
}

SpectralField::SpectralField(Polynomial base, HarmonicDecomposition decomp)
    : n_(base.dimension()), base_(std::move(base)), decomp_(std::move(decomp)) {
  l2_.reserve(decomp_.components().size());
  for (const auto& c : decomp_.components()) l2_.push_back(integral_sq(c.harmonic));
}

SpectralField SpectralField::from_polynomial(const Polynomial& p) {
  return SpectralField(p, harmonic_decompose(p));
}

bool SpectralField::has_component(int degree) const {
  return decomp_.component(degree) != nullptr;
}

bool SpectralField::has_component_at_most(int degree) const {
  for (const auto& c : decomp_.components())
    if (c.degree <= degree) return true;
  return false;
}

double SpectralField::l2_sq() const {
  double s = 0.0;
  for (double v : l2_) s += v;
  return s;
}

double SpectralField::mean() const {
  const Polynomial* h0 = decomp_.component(0);
  return h0 ? poly_sphere_integral(*h0) : 0.0;
}

double SpectralField::variance() const {
  const double m = mean();
  return l2_sq() - m * m;
}

double SpectralField::dirichlet_sq() const {
  double s = 0.0;
  const auto& comps = decomp_.components();
  for (std::size_t i = 0; i < comps.size(); ++i)
    s += sphere_eigenvalue(n_, comps[i].degree) * l2_[i];
  return s;
}

double SpectralField::hess_hs_sq_spectral() const {
  double s = 0.0;
  const auto& comps = decomp_.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const double lam = sphere_eigenvalue(n_, comps[i].degree);
    s += lam * (lam - (n_ - 2)) * l2_[i];
  }
  return s;
}

SpectralField SpectralField::laplacian_power(int k) const {
  if (k != 1 && k != 2) throw std::invalid_argument("laplacian_power: k must be 1 or 2");
  std::vector<HarmonicComponent> comps;
  Polynomial base(n_);
  for (const auto& c : decomp_.components()) {
    const double factor = std::pow(-sphere_eigenvalue(n_, c.degree), k);
    if (factor == 0.0) continue;
    Polynomial h = c.harmonic * factor;
    base += h;
    comps.push_back({c.degree, std::move(h)});
  }
  return SpectralField(std::move(base), HarmonicDecomposition(n_, std::move(comps)));
}

double SpectralField::eval_laplacian(const UnitVector& theta) const {
  double s = 0.0;
  for (const auto& c : decomp_.components())
    s -= sphere_eigenvalue(n_, c.degree) * c.harmonic.evaluate(theta.coords());
  return s;
}

double SpectralField::evaluate(const UnitVector& theta) const {
  return decomp_.evaluate(theta.coords());
}

AffineProjection project_affine(FieldPtr f, const SamplerConfig& cfg) {
  if (!f) throw std::invalid_argument("project_affine: null field");
  AffineProjection proj;
  proj.moments = vector_mean(*f, cfg);
  proj.m = proj.moments.m;
  proj.v = proj.moments.v;
  proj.exact = proj.moments.exact;
  proj.residual = make_affine_reduced(f, proj.m, proj.v);
  return proj;
}

CheckReport check_hessian_laplacian_identity(const SpectralField& f, const SamplerConfig& cfg,
                           IntegralPath path) {
  const int n = f.dimension();
  if (f.base().degree() > 8)
    throw std::invalid_argument("check_hessian_laplacian_identity: degree guard (<= 8) exceeded");
  const double rhs = f.hess_hs_sq_spectral();

  if (path == IntegralPath::exact) {
    const double lhs = integral_sph_hess_hs_sq(f.base());
    const double tol = 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    CheckReport r = make_identity_report("hessian-laplacian-identity-exact", "4.1", n, lhs, rhs, tol, 0.0,
                                         CheckReport::Margin::exact_tol, cfg.seed);
    return r;
  }

  FieldPtr field = make_polynomial(f.base());
  auto stats = run_sphere<MultiStats<1>>(
      cfg, [&field](std::int64_t idx, const Eigen::VectorXd& theta, MultiStats<1>& acc) {
        const UnitVector u(theta);
        acc.add({hs_norm_sq(spherical_hessian(*field, u))}, idx);
      });
  const double lhs = stats.mean[0];
  const double se = stats.se(0);
  CheckReport r = make_identity_report("hessian-laplacian-identity-mc", "4.1", n, lhs, rhs, 4.0 * se, se,
                                       CheckReport::Margin::sigma_4, cfg.seed);
  r.params["samples"] = static_cast<double>(stats.count);
  return r;
}

CheckReport check_sharp_constants(const SpectralField& f, SharpInequality which,
                                  std::uint64_t seed) {
  const int n = f.dimension();
  const char* name = nullptr;
  const char* ref = nullptr;
  double lhs_int = 0.0, rhs_int = 0.0, sharp = 0.0;
  int forbid_max_degree = -1;  // components of degree <= this make the check inapplicable

  switch (which) {
    case SharpInequality::poincare:
      name = "sharp-poincare";
      ref = "1.1";
      lhs_int = f.l2_sq();
      rhs_int = f.dirichlet_sq();
      sharp = 1.0 / (n - 1);
      forbid_max_degree = 0;
      break;
    case SharpInequality::gradient_vs_hessian:
      name = "sharp-grad-vs-hess";
      ref = "5.5";
      lhs_int = f.dirichlet_sq();
      rhs_int = f.hess_hs_sq_spectral();
      sharp = 1.0 / (n + 2);
      forbid_max_degree = 1;
      break;
    case SharpInequality::l2_vs_hessian:
      name = "sharp-l2-vs-hess";
      ref = "5.6";
      lhs_int = f.l2_sq();
      rhs_int = f.hess_hs_sq_spectral();
      sharp = 1.0 / (n - 1);
      forbid_max_degree = 0;
      break;
    case SharpInequality::l2_vs_hessian_orthogonal:
      name = "sharp-l2-vs-hess-ortho";
      ref = "5.7";
      lhs_int = f.l2_sq();
      rhs_int = f.hess_hs_sq_spectral();
      sharp = 1.0 / (2.0 * n * (n + 2));
      forbid_max_degree = 1;
      break;
  }

  // orthogonality preconditions read off the decomposition, not sampled
  for (const auto& c : f.decomposition().components()) {
    const bool forbidden =
        (which == SharpInequality::gradient_vs_hessian) ? (c.degree == 1)
                                                     : (c.degree <= forbid_max_degree);
    if (forbidden) {
      CheckReport r = make_inapplicable_report(
          name, ref, n,
          "orthogonality precondition violated by component of degree " +
              std::to_string(c.degree),
          seed);
      r.params["offending_degree"] = c.degree;
      return r;
    }
  }

  if (rhs_int == 0.0) {
    // zero field: trivially 0 <= 0
    CheckReport r = make_inequality_report(name, ref, n, 0.0, 0.0, 1e-15, 0.0,
                                           CheckReport::Margin::inequality_slack, seed);
    return r;
  }

  const double ratio = lhs_int / rhs_int;
  CheckReport r =
      make_inequality_report(name, ref, n, ratio, sharp, 1e-9 * std::abs(sharp), 0.0,
                             CheckReport::Margin::inequality_slack, seed);
  r.params["lhs_integral"] = lhs_int;
  r.params["rhs_integral"] = rhs_int;
  r.params["sharp_constant"] = sharp;
  return r;
}

std::vector<std::pair<int, double>> eigen_minimization_scan(int n, int d_max) {
  if (d_max < 1) throw std::invalid_argument("eigen_minimization_scan: d_max must be >= 1");
  std::vector<std::pair<int, double>> table;
  table.reserve(d_max);
  for (int d = 1; d <= d_max; ++d)
    table.emplace_back(d, static_cast<double>(d) * d + (d - 1.0) * (n - 2.0));
  return table;
}

}  // namespace spherecalc
