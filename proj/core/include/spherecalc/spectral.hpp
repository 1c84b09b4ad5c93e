// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "spherecalc/check_report.hpp"
#include "spherecalc/harmonic.hpp"
#include "spherecalc/sampling.hpp"
#include "spherecalc/scalar_field.hpp"

namespace spherecalc {

// Exact sphere integrals of polynomial data (all with respect to the uniform
// probability measure on S^{n-1}; values depend only on the restriction).
double integral_sq(const Polynomial& p);              // int p^2
double integral_grad_sq(const Polynomial& p);         // int |grad p|^2
double integral_radial_deriv_sq(const Polynomial& p); // int <grad p, x>^2
double integral_sph_grad_sq(const Polynomial& p);     // int |grad_S p|^2
/// int ||p'' - a I||_HS^2
double integral_hess_hs_sq(const Polynomial& p, double a = 0.0);
/// int ||P (p'' - <grad p, x> I) P||_HS^2 by symbolic expansion; the entries
/// of the projected matrix are polynomials in x, integrated term-wise.
double integral_sph_hess_hs_sq(const Polynomial& p);
Eigen::VectorXd integral_x_times(const Polynomial& p); // int x p

/// Polynomial field together with its harmonic decomposition: the spectral
/// route to exact Laplacians and exact L^2 quantities. The spherical
/// Laplacian acts diagonally, Delta_S h_d = -d(n+d-2) h_d.
class SpectralField {
 public:
  static SpectralField from_polynomial(const Polynomial& p);

  int dimension() const noexcept { return n_; }
  const Polynomial& base() const noexcept { return base_; }
  const HarmonicDecomposition& decomposition() const noexcept { return decomp_; }

  /// ||h_d||_{L^2}^2 for each component, aligned with decomposition().
  const std::vector<double>& component_l2_sq() const noexcept { return l2_; }
  bool has_component(int degree) const;
  bool has_component_at_most(int degree) const;

  double l2_sq() const;            // int f^2 = sum ||h_d||^2 (Parseval)
  double mean() const;             // int f = degree-0 component value
  double variance() const;         // int f^2 - (int f)^2
  double dirichlet_sq() const;     // int |grad_S f|^2 = sum d(n+d-2) ||h_d||^2
  double hess_hs_sq_spectral() const;  // sum lam(lam-(n-2)) ||h_d||^2, lam = d(n+d-2)

  /// Components scaled by (-d(n+d-2))^k; k = 1 or 2.
  SpectralField laplacian_power(int k) const;
  /// Exact Delta_S f at theta via the eigen-action.
  double eval_laplacian(const UnitVector& theta) const;
  double evaluate(const UnitVector& theta) const;

 private:
  SpectralField(Polynomial base, HarmonicDecomposition decomp);
  int n_;
  Polynomial base_;
  HarmonicDecomposition decomp_;
  std::vector<double> l2_;
};

/// Projection onto the orthogonal complement of affine functions:
/// Tf = f - m - <v, theta>. Exact for polynomial fields.
struct AffineProjection {
  double m = 0.0;
  Eigen::VectorXd v;
  FieldPtr residual;
  bool exact = false;
  VectorMeanResult moments;
};
AffineProjection project_affine(FieldPtr f, const SamplerConfig& cfg);

enum class IntegralPath { monte_carlo, exact };

/// Checks int ||f''_S||_HS^2 = int f (Delta_S^2 f + (n-2) Delta_S f):
/// left side by Monte Carlo over the spherical Hessian (or by symbolic
/// expansion on the exact path), right side by exact eigen-sums.
CheckReport check_hessian_laplacian_identity(const SpectralField& f, const SamplerConfig& cfg,
                           IntegralPath path = IntegralPath::monte_carlo);

enum class SharpInequality {
  poincare,      // int f^2 <= 1/(n-1) int |grad_S f|^2, sharp on linear
  gradient_vs_hessian,  // int |grad_S f|^2 <= 1/(n+2) int ||f''_S||^2, sharp on quadratic harmonics
  l2_vs_hessian,         // int f^2 <= 1/(n-1) int ||f''_S||^2, sharp on linear
  l2_vs_hessian_orthogonal     // int f^2 <= 1/(2n(n+2)) int ||f''_S||^2, sharp on quadratic harmonics
};

/// Reports lhs = ratio of the two exact integrals, rhs = the sharp constant.
/// Orthogonality preconditions are verified from the decomposition; reports
/// are marked inapplicable (naming the offending degree) when violated.
CheckReport check_sharp_constants(const SpectralField& f, SharpInequality which,
                                  std::uint64_t seed = 0);

/// The eigenvalue bound table c(d) = d^2 + (d-1)(n-2): the optimal constant
/// over d >= 1 is 1 (at d = 1); over d >= 2 it is n+2 (at d = 2).
std::vector<std::pair<int, double>> eigen_minimization_scan(int n, int d_max);

}  // namespace spherecalc
