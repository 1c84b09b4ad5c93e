// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include "spherecalc/sphere_ops.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spherecalc {

namespace {
constexpr double kDegenerateGradient = 1e-10;
}

Eigen::MatrixXd tangent_projector(const UnitVector& theta) {
  const int n = theta.dimension();
  return Eigen::MatrixXd::Identity(n, n) - theta.coords() * theta.coords().transpose();
}

double operator_norm(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double hs_norm_sq(const Eigen::MatrixXd& m) { return m.squaredNorm(); }

double hs_norm(const Eigen::MatrixXd& m) { return m.norm(); }

Eigen::VectorXd spherical_gradient(const ScalarField& f, const UnitVector& theta) {
  const Eigen::VectorXd g = f.gradient(theta.coords());
  return g - g.dot(theta.coords()) * theta.coords();
}

Eigen::MatrixXd spherical_hessian(const ScalarField& f, const UnitVector& theta) {
  const Eigen::VectorXd& t = theta.coords();
  const Eigen::VectorXd g = f.gradient(t);
  Eigen::MatrixXd b = f.hessian(t);
  b.diagonal().array() -= g.dot(t);
  // P B P without forming P: subtract the theta row/column components
  const Eigen::VectorXd bt = b * t;
  const double tbt = t.dot(bt);
  Eigen::MatrixXd m = b - bt * t.transpose() - t * bt.transpose() + tbt * (t * t.transpose());
  return 0.5 * (m + m.transpose());
}

double spherical_laplacian(const ScalarField& f, const UnitVector& theta) {
  const Eigen::VectorXd& t = theta.coords();
  const int n = theta.dimension();
  const Eigen::VectorXd g = f.gradient(t);
  const Eigen::MatrixXd h = f.hessian(t);
  return h.trace() - (n - 1) * g.dot(t) - t.dot(h * t);
}

SphericalJet spherical_jet(const ScalarField& f, const UnitVector& theta) {
  return {f.value(theta.coords()), spherical_gradient(f, theta), spherical_hessian(f, theta)};
}

double second_order_modulus(const ScalarField& f, const UnitVector& theta) {
  const Eigen::VectorXd gs = spherical_gradient(f, theta);
  const Eigen::MatrixXd hs = spherical_hessian(f, theta);
  const double norm = gs.norm();
  if (norm <= kDegenerateGradient) return operator_norm(hs);
  return (hs * gs).norm() / norm;
}

double euclidean_second_order_modulus(const ScalarField& f, const Eigen::VectorXd& x) {
  const Eigen::VectorXd g = f.gradient(x);
  const Eigen::MatrixXd h = f.hessian(x);
  const double norm = g.norm();
  if (norm <= kDegenerateGradient) return operator_norm(h);
  return (h * g).norm() / norm;
}

double d_ij(const ScalarField& f, const UnitVector& theta, int i, int j) {
  const int n = theta.dimension();
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::out_of_range("d_ij: index out of range");
  const Eigen::VectorXd& t = theta.coords();
  const Eigen::VectorXd g = f.gradient(t);
  const Eigen::MatrixXd h = f.hessian(t);
  const Eigen::VectorXd ht = h * t;
  const double gt = g.dot(t);
  const double tht = t.dot(ht);
  double r = h(i, j) - t[j] * g[i] + 2.0 * t[i] * t[j] * gt - t[j] * ht[i] - t[i] * ht[j] +
             t[i] * t[j] * tht;
  if (i == j) r -= gt;
  return r;
}

namespace {

// psi(x) = <grad f(x), v> - <grad f(x), x> <v, x>, the ambient extension of
// theta -> <grad_S f(theta), v>.
Polynomial psi_polynomial(const Polynomial& p, const Eigen::VectorXd& v) {
  const int n = p.dimension();
  Polynomial psi(n);
  Polynomial radial(n);  // <grad p, x>
  Polynomial vlin(n);    // <v, x>
  for (int i = 0; i < n; ++i) {
    const Polynomial di = p.derivative(i);
    if (v[i] != 0.0) psi += di * v[i];
    radial += di * Polynomial::variable(n, i);
    if (v[i] != 0.0) vlin += Polynomial::variable(n, i) * v[i];
  }
  psi -= radial * vlin;
  return psi;
}

// grad psi(x) = f''(x) v - <grad f, x> v - (f'' x + grad f) <v, x>
Eigen::VectorXd psi_gradient_analytic(const ScalarField& f, const Eigen::VectorXd& v,
                                      const Eigen::VectorXd& x) {
  const Eigen::VectorXd g = f.gradient(x);
  const Eigen::MatrixXd h = f.hessian(x);
  return h * v - g.dot(x) * v - (h * x + g) * v.dot(x);
}

bool has_partials(const ScalarField& f) { return f.partial(0) != nullptr; }

// Hessians of the first-derivative fields: H_i = Hess(d_i f) at x.
std::vector<Eigen::MatrixXd> partial_hessians(const ScalarField& f, const Eigen::VectorXd& x) {
  const int n = f.dimension();
  std::vector<Eigen::MatrixXd> hs;
  hs.reserve(n);
  for (int i = 0; i < n; ++i) {
    FieldPtr di = f.partial(i);
    if (!di) throw std::invalid_argument("field does not expose exact third derivatives");
    hs.push_back(di->hessian(x));
  }
  return hs;
}

// psi''(x) = V - <v,x>(C + 2 f'') - (f''x + grad f) v^T - v (f''x + grad f)^T
// with V = sum_i v_i H_i and C = sum_i x_i H_i.
Eigen::MatrixXd psi_hessian_analytic(const ScalarField& f, const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& x,
                                     const std::vector<Eigen::MatrixXd>& hs) {
  const int n = f.dimension();
  const Eigen::VectorXd g = f.gradient(x);
  const Eigen::MatrixXd h = f.hessian(x);
  Eigen::MatrixXd vv = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd cc = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (v[i] != 0.0) vv += v[i] * hs[i];
    if (x[i] != 0.0) cc += x[i] * hs[i];
  }
  const Eigen::VectorXd u = h * x + g;
  return vv - v.dot(x) * (cc + 2.0 * h) - u * v.transpose() - v * u.transpose();
}

}  // namespace

double hessian_vector_identity_residual(const ScalarField& f, const UnitVector& theta,
                                        const Eigen::VectorXd& v) {
  const Eigen::VectorXd& t = theta.coords();
  const Eigen::VectorXd lhs = spherical_hessian(f, theta) * v;

  Eigen::VectorXd grad_psi;
  if (auto p = f.as_polynomial()) {
    grad_psi = psi_polynomial(*p, v).gradient(t);
  } else if (f.derivatives() == ScalarField::Derivatives::exact) {
    grad_psi = psi_gradient_analytic(f, v, t);
  } else {
    // finite differences of psi values; psi itself only needs gradients
    const int n = f.dimension();
    const double h = 1e-5;
    grad_psi.resize(n);
    Eigen::VectorXd xp = t, xm = t;
    auto psi_value = [&f, &v](const Eigen::VectorXd& x) {
      const Eigen::VectorXd g = f.gradient(x);
      return g.dot(v) - g.dot(x) * v.dot(x);
    };
    for (int i = 0; i < n; ++i) {
      xp[i] = t[i] + h;
      xm[i] = t[i] - h;
      grad_psi[i] = (psi_value(xp) - psi_value(xm)) / (2.0 * h);
      xp[i] = t[i];
      xm[i] = t[i];
    }
  }
  const Eigen::VectorXd grad_s_psi = grad_psi - grad_psi.dot(t) * t;
  const Eigen::VectorXd rhs = grad_s_psi + v.dot(t) * spherical_gradient(f, theta);
  return (lhs - rhs).norm();
}

double commutator_residual(const ScalarField& f, const UnitVector& theta,
                           const Eigen::VectorXd& v) {
  const int n = f.dimension();
  const Eigen::VectorXd& t = theta.coords();

  double lap_s_psi;       // Delta_S <grad_S f, v> at theta
  Eigen::VectorXd grad_g; // ambient gradient of an extension of Delta_S f

  if (auto p = f.as_polynomial()) {
    const Polynomial psi = psi_polynomial(*p, v);
    lap_s_psi = spherical_laplacian(*make_polynomial(psi), theta);

    // polynomial extension of Delta_S f from the Euclidean data:
    // g = Lap f - (n-1) <grad f, x> - <f'' x, x>
    Polynomial g = p->laplacian();
    g -= p->radial_derivative() * static_cast<double>(n - 1);
    Polynomial quad(n);
    for (int i = 0; i < n; ++i) {
      const Polynomial di = p->derivative(i);
      quad += di.derivative(i) *
              (Polynomial::variable(n, i) * Polynomial::variable(n, i));
      for (int j = i + 1; j < n; ++j)
        quad += di.derivative(j) *
                (Polynomial::variable(n, i) * Polynomial::variable(n, j)) * 2.0;
    }
    g -= quad;
    grad_g = g.gradient(t);
  } else if (has_partials(f)) {
    const auto hs = partial_hessians(f, t);
    const Eigen::VectorXd g = f.gradient(t);
    const Eigen::MatrixXd h = f.hessian(t);

    // Delta_S psi at theta from psi's ambient derivatives
    const Eigen::VectorXd psi_grad = psi_gradient_analytic(f, v, t);
    const Eigen::MatrixXd psi_hess = psi_hessian_analytic(f, v, t, hs);
    lap_s_psi = psi_hess.trace() - (n - 1) * psi_grad.dot(t) - t.dot(psi_hess * t);

    // grad of g = Lap f - (n-1) <grad f, x> - <f'' x, x>:
    //   grad(Lap f)_k = sum_i (H_i)_{ki}
    //   grad<grad f, x> = f'' x + grad f
    //   grad<f'' x, x>_k = sum_i x_i (H_i x)_k + 2 (f'' x)_k
    grad_g = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) grad_g += hs[i].col(i);
    const Eigen::VectorXd hx = h * t;
    grad_g -= static_cast<double>(n - 1) * (hx + g);
    Eigen::VectorXd third = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      if (t[i] != 0.0) third += t[i] * (hs[i] * t);
    grad_g -= third + 2.0 * hx;
  } else {
    throw std::invalid_argument(
        "commutator_residual: field lacks exact third-order derivatives");
  }

  const Eigen::VectorXd grad_s_g = grad_g - grad_g.dot(t) * t;
  const double lhs = lap_s_psi - grad_s_g.dot(v);
  const double rhs = (n - 3) * spherical_gradient(f, theta).dot(v) -
                     2.0 * v.dot(t) * spherical_laplacian(f, theta);
  return std::abs(lhs - rhs);
}

namespace {

struct HomFrame {
  double r;
  UnitVector theta;
};

HomFrame hom_frame(const Eigen::VectorXd& x) {
  const double r = x.norm();
  if (!(r > 0.0)) throw std::invalid_argument("homogeneous extension: x must be nonzero");
  return {r, UnitVector(x)};
}

}  // namespace

Eigen::VectorXd hom_gradient(const ScalarField& f, double d, const Eigen::VectorXd& x) {
  const auto [r, theta] = hom_frame(x);
  return std::pow(r, d - 1.0) *
         (d * f.value(theta.coords()) * theta.coords() + spherical_gradient(f, theta));
}

Eigen::VectorXd hom_hessian_apply(const ScalarField& f, double d, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& v) {
  const auto [r, theta] = hom_frame(x);
  const Eigen::VectorXd& t = theta.coords();
  const double fv = f.value(t);
  const Eigen::VectorXd gs = spherical_gradient(f, theta);
  const Eigen::VectorXd pv = v - v.dot(t) * t;
  const Eigen::VectorXd bracket = d * (d - 1.0) * fv * v.dot(t) * t + d * fv * pv +
                                  (d - 1.0) * gs.dot(v) * t + (d - 1.0) * v.dot(t) * gs +
                                  spherical_hessian(f, theta) * v;
  return std::pow(r, d - 2.0) * bracket;
}

double hom_laplacian(const ScalarField& f, double d, const Eigen::VectorXd& x) {
  const auto [r, theta] = hom_frame(x);
  const int n = f.dimension();
  return std::pow(r, d - 2.0) *
         (d * (n + d - 2.0) * f.value(theta.coords()) + spherical_laplacian(f, theta));
}

}  // namespace spherecalc
