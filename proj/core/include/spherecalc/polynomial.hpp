// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

namespace spherecalc {

/// Monomial exponents; length equals the ambient dimension.
using MultiIndex = std::vector<int>;

int multi_index_degree(const MultiIndex& alpha);
bool multi_index_all_even(const MultiIndex& alpha);

/// Multivariate polynomial with real coefficients, closed under
/// differentiation. Terms are kept in a lexicographically ordered map so
/// iteration order (and hence serialization) is deterministic. Zero
/// coefficients are never stored.
class Polynomial {
 public:
  explicit Polynomial(int dimension);

  static Polynomial constant(int dimension, double c);
  static Polynomial monomial(MultiIndex alpha, double c);
  static Polynomial variable(int dimension, int i);  // x_i
  static Polynomial radius_sq(int dimension);        // |x|^2

  int dimension() const noexcept { return dim_; }
  int degree() const;  // 0 for the zero polynomial
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::map<MultiIndex, double>& terms() const noexcept { return terms_; }

  /// Largest absolute coefficient (0 for the zero polynomial).
  double max_abs_coefficient() const;
  /// True when every coefficient satisfies |c| <= tol.
  bool is_zero(double tol = 0.0) const;
  /// Drops terms with |c| <= eps * max_abs_coefficient().
  void prune_relative(double eps);

  void add_term(const MultiIndex& alpha, double c);

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double s);
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    a -= b;
    return a;
  }
  friend Polynomial operator*(Polynomial a, double s) {
    a *= s;
    return a;
  }
  friend Polynomial operator*(double s, Polynomial a) {
    a *= s;
    return a;
  }

  /// Exact partial derivative with respect to coordinate i.
  Polynomial derivative(int i) const;
  /// Euclidean Laplacian, sum of second partials, exact.
  Polynomial laplacian() const;
  /// Terms of total degree m only.
  Polynomial homogeneous_part(int m) const;
  /// Gradient dotted with the position vector, sum_i x_i d_i p.
  Polynomial radial_derivative() const;

  double evaluate(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

  nlohmann::json to_json() const;
  static Polynomial from_json(const nlohmann::json& j);

 private:
  int dim_;
  std::map<MultiIndex, double> terms_;
};

/// x^e by repeated multiplication; e >= 0.
double ipow(double x, int e);

}  // namespace spherecalc
