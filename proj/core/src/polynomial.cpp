// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include "spherecalc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spherecalc {

int multi_index_degree(const MultiIndex& alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

bool multi_index_all_even(const MultiIndex& alpha) {
  return std::all_of(alpha.begin(), alpha.end(),
                     [](int a) { return a % 2 == 0; });
}

double ipow(double x, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= x;
  return r;
}

Polynomial::Polynomial(int dimension) : dim_(dimension) {
  if (dimension < 2) throw std::invalid_argument("Polynomial: dimension must be >= 2");
}

Polynomial Polynomial::constant(int dimension, double c) {
  Polynomial p(dimension);
  p.add_term(MultiIndex(dimension, 0), c);
  return p;
}

Polynomial Polynomial::monomial(MultiIndex alpha, double c) {
  Polynomial p(static_cast<int>(alpha.size()));
  p.add_term(alpha, c);
  return p;
}

Polynomial Polynomial::variable(int dimension, int i) {
  Polynomial p(dimension);
  MultiIndex alpha(dimension, 0);
  if (i < 0 || i >= dimension) throw std::out_of_range("Polynomial::variable: index out of range");
  alpha[i] = 1;
  p.add_term(alpha, 1.0);
  return p;
}

Polynomial Polynomial::radius_sq(int dimension) {
  Polynomial p(dimension);
  for (int i = 0; i < dimension; ++i) {
    MultiIndex alpha(dimension, 0);
    alpha[i] = 2;
    p.add_term(alpha, 1.0);
  }
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, multi_index_degree(alpha));
  return d;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool Polynomial::is_zero(double tol) const {
  for (const auto& [alpha, c] : terms_)
    if (std::abs(c) > tol) return false;
  return true;
}

void Polynomial::prune_relative(double eps) {
  const double cut = eps * max_abs_coefficient();
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= cut)
      it = terms_.erase(it);
    else
      ++it;
  }
}

void Polynomial::add_term(const MultiIndex& alpha, double c) {
  if (static_cast<int>(alpha.size()) != dim_)
    throw std::invalid_argument("Polynomial::add_term: multi-index length != dimension");
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("Polynomial::add_term: negative exponent");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.dim_ != dim_) throw std::invalid_argument("Polynomial: dimension mismatch");
  for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.dim_ != dim_) throw std::invalid_argument("Polynomial: dimension mismatch");
  for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  r *= -1.0;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (rhs.dim_ != dim_) throw std::invalid_argument("Polynomial: dimension mismatch");
  Polynomial r(dim_);
  MultiIndex gamma(dim_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : rhs.terms_) {
      for (int i = 0; i < dim_; ++i) gamma[i] = a[i] + b[i];
      r.add_term(gamma, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::derivative(int i) const {
  if (i < 0 || i >= dim_) throw std::out_of_range("Polynomial::derivative: index out of range");
  Polynomial r(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[i] == 0) continue;
    MultiIndex beta = alpha;
    beta[i] -= 1;
    r.add_term(beta, c * alpha[i]);
  }
  return r;
}

Polynomial Polynomial::laplacian() const {
  Polynomial r(dim_);
  for (const auto& [alpha, c] : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (alpha[i] < 2) continue;
      MultiIndex beta = alpha;
      beta[i] -= 2;
      r.add_term(beta, c * alpha[i] * (alpha[i] - 1));
    }
  }
  return r;
}

Polynomial Polynomial::homogeneous_part(int m) const {
  Polynomial r(dim_);
  for (const auto& [alpha, c] : terms_)
    if (multi_index_degree(alpha) == m) r.add_term(alpha, c);
  return r;
}

Polynomial Polynomial::radial_derivative() const {
  // sum_i x_i d_i p; for a monomial this is deg(alpha) * x^alpha (Euler).
  Polynomial r(dim_);
  for (const auto& [alpha, c] : terms_) {
    const int d = multi_index_degree(alpha);
    if (d > 0) r.add_term(alpha, c * d);
  }
  return r;
}

double Polynomial::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("Polynomial::evaluate: point dimension mismatch");
  double s = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double t = c;
    for (int i = 0; i < dim_; ++i)
      if (alpha[i] != 0) t *= ipow(x[i], alpha[i]);
    s += t;
  }
  return s;
}

Eigen::VectorXd Polynomial::gradient(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("Polynomial::gradient: point dimension mismatch");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
  for (const auto& [alpha, c] : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (alpha[i] == 0) continue;
      double t = c * alpha[i] * ipow(x[i], alpha[i] - 1);
      for (int j = 0; j < dim_; ++j)
        if (j != i && alpha[j] != 0) t *= ipow(x[j], alpha[j]);
      g[i] += t;
    }
  }
  return g;
}

Eigen::MatrixXd Polynomial::hessian(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("Polynomial::hessian: point dimension mismatch");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim_, dim_);
  for (const auto& [alpha, c] : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (alpha[i] == 0) continue;
      // diagonal entry
      if (alpha[i] >= 2) {
        double t = c * alpha[i] * (alpha[i] - 1) * ipow(x[i], alpha[i] - 2);
        for (int j = 0; j < dim_; ++j)
          if (j != i && alpha[j] != 0) t *= ipow(x[j], alpha[j]);
        h(i, i) += t;
      }
      for (int j = i + 1; j < dim_; ++j) {
        if (alpha[j] == 0) continue;
        double t = c * alpha[i] * alpha[j] * ipow(x[i], alpha[i] - 1) * ipow(x[j], alpha[j] - 1);
        for (int k = 0; k < dim_; ++k)
          if (k != i && k != j && alpha[k] != 0) t *= ipow(x[k], alpha[k]);
        h(i, j) += t;
        h(j, i) += t;
      }
    }
  }
  return h;
}

nlohmann::json Polynomial::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [alpha, c] : terms_)
    terms.push_back({{"alpha", alpha}, {"c", c}});
  return {{"n", dim_}, {"terms", terms}};
}

Polynomial Polynomial::from_json(const nlohmann::json& j) {
  Polynomial p(j.at("n").get<int>());
  for (const auto& t : j.at("terms")) {
    p.add_term(t.at("alpha").get<MultiIndex>(), t.at("c").get<double>());
  }
  return p;
}

}  // namespace spherecalc
