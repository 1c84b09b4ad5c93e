// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include "spherecalc/scalar_field.hpp"
#include "spherecalc/unit_vector.hpp"

namespace spherecalc {

/// Intrinsic second-order data of a field at a point of S^{n-1}.
/// grad_s is tangential; hess_s is symmetric and annihilates theta.
struct SphericalJet {
  double value;
  Eigen::VectorXd grad_s;
  Eigen::MatrixXd hess_s;
};

/// P_{theta^perp} = I - theta theta^T
Eigen::MatrixXd tangent_projector(const UnitVector& theta);

/// Largest-magnitude eigenvalue of a symmetric matrix.
double operator_norm(const Eigen::MatrixXd& sym);
double hs_norm_sq(const Eigen::MatrixXd& m);
double hs_norm(const Eigen::MatrixXd& m);

/// grad_S f(theta) = grad f(theta) - <grad f(theta), theta> theta
Eigen::VectorXd spherical_gradient(const ScalarField& f, const UnitVector& theta);

/// f''_S(theta) = P (f''(theta) - <grad f(theta), theta> I) P, extended by
/// f''_S(theta) theta = 0; the minimal-HS-norm matrix in the intrinsic
/// second-order Taylor expansion.
Eigen::MatrixXd spherical_hessian(const ScalarField& f, const UnitVector& theta);

/// Delta_S f(theta) = Delta f(theta) - (n-1) <grad f, theta> - <f'' theta, theta>;
/// equals the trace of spherical_hessian.
double spherical_laplacian(const ScalarField& f, const UnitVector& theta);

SphericalJet spherical_jet(const ScalarField& f, const UnitVector& theta);

/// Generalized Lipschitz modulus of |grad_S f|:
/// |f''_S g| / |g| with g = grad_S f, or the operator norm ||f''_S|| when
/// |g| falls below the degenerate-branch threshold 1e-10.
double second_order_modulus(const ScalarField& f, const UnitVector& theta);

/// Euclidean analogue |f'' grad f| / |grad f| with the ||f''|| fallback.
double euclidean_second_order_modulus(const ScalarField& f, const Eigen::VectorXd& x);

/// Iterated spherical partial derivative D_i D_j f(theta) in closed form
/// from Euclidean data (seven-term formula). Sum over i of d_ij(i, i)
/// equals the spherical Laplacian; the antisymmetry defect is
/// d_ij - d_ji = theta_i d_j f - theta_j d_i f.
double d_ij(const ScalarField& f, const UnitVector& theta, int i, int j);

/// Residual norm of f''_S(theta) v = grad_S <grad_S f, v> + <v,theta> grad_S f.
/// The right side differentiates the ambient extension
/// psi(x) = <grad f(x), v> - <grad f(x), x><v, x>: exactly for polynomial
/// fields, analytically from f'' otherwise (finite differences of psi values
/// for derivative-free fields, with correspondingly relaxed accuracy).
double hessian_vector_identity_residual(const ScalarField& f, const UnitVector& theta,
                                        const Eigen::VectorXd& v);

/// Residual of the Laplacian-gradient commutator identity
///   Delta_S <grad_S f, v> - <grad_S Delta_S f, v>
///     = (n-3) <grad_S f, v> - 2 <v, theta> Delta_S f.
/// Requires third-order data: polynomial fields use exact polynomial
/// algebra; fields closed under partial() use derivative-field Hessians.
/// Throws std::invalid_argument otherwise.
double commutator_residual(const ScalarField& f, const UnitVector& theta,
                           const Eigen::VectorXd& v);

/// Derivatives of the d-homogeneous extension F(x) = r^d f(x/r):
///   grad F(x) = r^{d-1} [ d f(theta) theta + grad_S f(theta) ]
Eigen::VectorXd hom_gradient(const ScalarField& f, double d, const Eigen::VectorXd& x);

/// F''(x) v = r^{d-2} [ d(d-1) f <v,theta> theta + d f Pv
///            + (d-1) <grad_S f, v> theta + (d-1) <v,theta> grad_S f + f''_S v ]
Eigen::VectorXd hom_hessian_apply(const ScalarField& f, double d, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& v);

/// Delta F(x) = r^{d-2} [ d(n+d-2) f(theta) + Delta_S f(theta) ]
double hom_laplacian(const ScalarField& f, double d, const Eigen::VectorXd& x);

}  // namespace spherecalc
